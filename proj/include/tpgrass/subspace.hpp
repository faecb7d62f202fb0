#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tpgrass/index_set.hpp"
#include "tpgrass/matrix.hpp"
#include "tpgrass/scalar.hpp"

namespace tpgrass {

// Ambient data: V = R^N with its fixed coordinate basis, and the subspace
// dimension k under study.
struct Ambient {
  int N = 0;
  int k = 0;

  bool operator==(const Ambient&) const = default;
};

inline void check_ambient(const Ambient& a) {
  if (a.N < 2) throw std::invalid_argument("Ambient: N must be >= 2");
  if (a.k < 1 || a.k > a.N - 1) throw std::invalid_argument("Ambient: need 1 <= k <= N-1");
}

// A point of the Grassmannian, represented as the row space of a full-rank k x N
// generator matrix. Immutable after construction; construction rejects
// rank-deficient generators.
template <typename T>
class Subspace {
 public:
  Subspace(Ambient amb, Matrix<T> generators, double tol = kDefaultTolerance)
      : amb_(amb), rows_(std::move(generators)), tol_(tol) {
    check_ambient(amb_);
    if (rows_.rows() != amb_.k || rows_.cols() != amb_.N)
      throw std::invalid_argument("Subspace: generator matrix must be k x N");
    if (rank(rows_, tol_) != amb_.k)
      throw std::invalid_argument("Subspace: generator matrix is rank deficient");
  }

  const Ambient& ambient() const { return amb_; }
  int N() const { return amb_.N; }
  int k() const { return amb_.k; }
  const Matrix<T>& generators() const { return rows_; }
  double tolerance() const { return tol_; }

 private:
  Ambient amb_;
  Matrix<T> rows_;
  double tol_;
};

// A subspace of any dimension d <= N inside the same ambient V, used for flag
// chains whose members are not k-dimensional.
template <typename T>
class Flat {
 public:
  Flat(int N, Matrix<T> generators, double tol = kDefaultTolerance)
      : N_(N), rows_(std::move(generators)), tol_(tol) {
    if (rows_.cols() != N_) throw std::invalid_argument("Flat: generator width must be N");
    if (rank(rows_, tol_) != rows_.rows()) throw std::invalid_argument("Flat: generators dependent");
  }

  int N() const { return N_; }
  int dim() const { return rows_.rows(); }
  const Matrix<T>& generators() const { return rows_; }
  double tolerance() const { return tol_; }

 private:
  int N_ = 0;
  Matrix<T> rows_;
  double tol_;
};

template <typename T>
Flat<T> as_flat(const Subspace<T>& E) {
  return Flat<T>(E.N(), E.generators(), E.tolerance());
}

inline Subspace<double> to_floating(const Subspace<Rational>& E, double tol = kDefaultTolerance) {
  return Subspace<double>(E.ambient(), to_floating(E.generators()), tol);
}

// Generator rows of the coordinate subspace V_I (|I| rows of the identity).
template <typename T>
Matrix<T> coordinate_rows(const IndexSet& I, int N) {
  if (!is_valid_index_set(I, N)) throw std::invalid_argument("coordinate_rows: invalid index set");
  Matrix<T> m(static_cast<int>(I.size()), N);
  for (std::size_t a = 0; a < I.size(); ++a) m(static_cast<int>(a), I[a] - 1) = T(1);
  return m;
}

// dim(span(A) ∩ span(B)) = dim A + dim B - rank([A; B]).
template <typename T>
int intersection_dim(const Matrix<T>& a, const Matrix<T>& b, double tol = kDefaultTolerance) {
  return a.rows() + b.rows() - rank(vstack(a, b), tol);
}

// Whether span(inner) ⊆ span(outer): stacking must not raise the rank.
template <typename T>
bool contains(const Matrix<T>& outer, const Matrix<T>& inner, double tol = kDefaultTolerance) {
  return rank(vstack(outer, inner), tol) == rank(outer, tol);
}

// Rescale an exact row to a primitive integer vector with positive leading entry.
inline void make_row_primitive(Matrix<Rational>& m, int i) {
  using boost::multiprecision::cpp_int;
  cpp_int l = 1, g = 0;
  for (int j = 0; j < m.cols(); ++j)
    if (m(i, j) != 0) l = lcm(l, denominator(m(i, j)));
  for (int j = 0; j < m.cols(); ++j)
    if (m(i, j) != 0) g = gcd(g, numerator(Rational(m(i, j) * l)));
  if (g == 0) return;
  Rational scale(l, g);
  int lead = 0;
  while (lead < m.cols() && m(i, lead) == 0) ++lead;
  if (lead < m.cols() && m(i, lead) < 0) scale = -scale;
  for (int j = 0; j < m.cols(); ++j) m(i, j) *= scale;
}

// Generators of span(A) ∩ span(B), found from the left kernel of [A; B]: a
// combination c with c_A A + c_B B = 0 yields the intersection vector c_A A.
// Exact rows are rescaled to primitive integer vectors for reproducible output.
template <typename T>
Matrix<T> intersection_generators(const Matrix<T>& a, const Matrix<T>& b, double tol = kDefaultTolerance) {
  Matrix<T> stacked_t = vstack(a, b).transpose();
  Matrix<T> left = kernel(stacked_t, tol);  // rows: combined coefficients, length a.rows+b.rows
  Matrix<T> coeff_a(left.rows(), a.rows());
  for (int i = 0; i < left.rows(); ++i)
    for (int j = 0; j < a.rows(); ++j) coeff_a(i, j) = left(i, j);
  Matrix<T> gen = coeff_a * a;
  // The combinations c_A are linearly independent as coefficient vectors but the
  // products c_A A can degenerate only if a kernel element has c_A A = 0, which
  // forces c_B B = 0 and hence c_B = 0 and c_A A = 0 with A full row rank -> c = 0.
  if constexpr (is_exact_scalar_v<T>) {
    for (int i = 0; i < gen.rows(); ++i) make_row_primitive(gen, i);
  }
  return gen;
}

}  // namespace tpgrass
