#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "tpgrass/errors.hpp"
#include "tpgrass/index_set.hpp"
#include "tpgrass/matrix.hpp"
#include "tpgrass/scalar.hpp"
#include "tpgrass/subspace.hpp"

namespace tpgrass {

// The C(N,k) maximal minors of a generator matrix, in lexicographic order of the
// column index sets. Represents the line spanned by the wedge of the rows.
template <typename T>
struct PluckerVector {
  Ambient amb;
  std::vector<T> coords;

  const T& at(const IndexSet& I) const { return coords[lex_rank(I, amb.N)]; }
};

// Maximal minors of a k x N matrix in lex column order.
template <typename T>
std::vector<T> maximal_minors(const Matrix<T>& m) {
  const int k = m.rows(), N = m.cols();
  std::vector<T> out;
  out.reserve(static_cast<std::size_t>(binomial(N, k)));
  std::vector<int> all_rows(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) all_rows[static_cast<std::size_t>(i)] = i;
  for (const IndexSet& I : enumerate_index_sets(N, k)) {
    std::vector<int> ci(I.size());
    for (std::size_t a = 0; a < I.size(); ++a) ci[a] = I[a] - 1;
    out.push_back(det(m.submatrix(all_rows, ci)));
  }
  return out;
}

template <typename T>
PluckerVector<T> plucker_vector(const Subspace<T>& E) {
  return PluckerVector<T>{E.ambient(), maximal_minors(E.generators())};
}

namespace detail {

template <typename T>
double plucker_scale(const std::vector<T>& coords) {
  double s = 0.0;
  for (const T& c : coords) s = std::max(s, to_double(abs_of(c)));
  return s;
}

// Zero test: exact scalars compare against zero; floating scalars treat
// |x| <= tol*scale as zero, scale being the max-magnitude coordinate.
template <typename T>
bool coord_is_zero(const T& x, double scale, double tol) {
  if constexpr (is_exact_scalar_v<T>) {
    (void)scale;
    (void)tol;
    return x == T(0);
  } else {
    return abs_of(x) <= tol * scale;
  }
}

}  // namespace detail

// Fix a representative of the projective line: flip the global sign so the first
// coordinate that is nonzero (in lex order, under the tolerance) is positive.
template <typename T>
PluckerVector<T> normalize_sign(PluckerVector<T> p, double tol = kDefaultTolerance) {
  const double scale = detail::plucker_scale(p.coords);
  for (const T& c : p.coords) {
    if (detail::coord_is_zero(c, scale, tol)) continue;
    if (c < T(0))
      for (T& x : p.coords) x = -x;
    return p;
  }
  throw std::invalid_argument("normalize_sign: all coordinates are zero");
}

// Minimum over maximum coordinate magnitude; the floating pipelines use this to
// notice near-boundary passages.
template <typename T>
double plucker_margin(const PluckerVector<T>& p) {
  double mn = -1.0, mx = 0.0;
  for (const T& c : p.coords) {
    double a = to_double(abs_of(c));
    mx = std::max(mx, a);
    if (mn < 0.0 || a < mn) mn = a;
  }
  return mx == 0.0 ? 0.0 : mn / mx;
}

// Compound matrix: entry (J, I) is the minor of g with rows J and columns I, both
// in lex order. Represents the induced map on the k-th exterior power, so that
// compound(g,k) * plucker(E) = plucker(g E) (Cauchy-Binet).
template <typename T>
Matrix<T> compound_matrix(const Matrix<T>& g, int k) {
  if (g.rows() != g.cols()) throw std::invalid_argument("compound_matrix: g must be square");
  const int N = g.rows();
  if (k < 1 || k > N) throw std::invalid_argument("compound_matrix: need 1 <= k <= N");
  const std::vector<IndexSet> sets = enumerate_index_sets(N, k);
  const int D = static_cast<int>(sets.size());
  std::vector<std::vector<int>> zero_based(sets.size());
  for (std::size_t a = 0; a < sets.size(); ++a) {
    zero_based[a].resize(sets[a].size());
    for (std::size_t b = 0; b < sets[a].size(); ++b) zero_based[a][b] = sets[a][b] - 1;
  }
  Matrix<T> c(D, D);
  for (int J = 0; J < D; ++J)
    for (int I = 0; I < D; ++I) c(J, I) = det(g.submatrix(zero_based[static_cast<std::size_t>(J)], zero_based[static_cast<std::size_t>(I)]));
  return c;
}

// Row space of E.rows * g^T: the action of g in GL(V) on row-space generators,
// with vectors as coordinate columns.
template <typename T>
Subspace<T> transform(const Subspace<T>& E, const Matrix<T>& g) {
  if (g.rows() != E.N() || g.cols() != E.N()) throw std::invalid_argument("transform: g must be N x N");
  return Subspace<T>(E.ambient(), E.generators() * g.transpose(), E.tolerance());
}

}  // namespace tpgrass
