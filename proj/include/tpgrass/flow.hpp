#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "tpgrass/errors.hpp"
#include "tpgrass/membership.hpp"
#include "tpgrass/plucker.hpp"
#include "tpgrass/subspace.hpp"

namespace tpgrass {

// Adjacency matrix of the path graph on N vertices: the infinitesimal generator
// of the totally positive flow.
inline Matrix<double> path_adjacency(int N) {
  if (N < 2) throw std::invalid_argument("path_adjacency: N must be >= 2");
  Matrix<double> a(N, N);
  for (int i = 0; i + 1 < N; ++i) {
    a(i, i + 1) = 1.0;
    a(i + 1, i) = 1.0;
  }
  return a;
}

struct Eigenpair {
  double value;
  std::vector<double> vector;
};

// Closed-form spectrum of the path graph: eigenvalue 2cos(j*pi/(N+1)) with
// eigenvector components sin(i*j*pi/(N+1)), j = 1..N in decreasing order. Each
// pair is verified against the defining equation before being returned.
inline std::vector<Eigenpair> path_eigensystem(int N) {
  const Matrix<double> a = path_adjacency(N);
  std::vector<Eigenpair> out;
  out.reserve(static_cast<std::size_t>(N));
  const double theta = M_PI / (N + 1);
  for (int j = 1; j <= N; ++j) {
    Eigenpair p;
    p.value = 2.0 * std::cos(j * theta);
    p.vector.resize(static_cast<std::size_t>(N));
    for (int i = 1; i <= N; ++i) p.vector[static_cast<std::size_t>(i - 1)] = std::sin(i * j * theta);
    std::vector<double> av = a.apply(p.vector);
    double res = 0.0, norm = 0.0;
    for (int i = 0; i < N; ++i) {
      const double d = av[static_cast<std::size_t>(i)] - p.value * p.vector[static_cast<std::size_t>(i)];
      res += d * d;
      norm += p.vector[static_cast<std::size_t>(i)] * p.vector[static_cast<std::size_t>(i)];
    }
    if (std::sqrt(res) > 1e-12 * std::sqrt(norm))
      throw internal_check_error("path_eigensystem: residual check failed");
    out.push_back(std::move(p));
  }
  return out;
}

namespace detail {

inline double one_norm(const Matrix<double>& m) {
  double best = 0.0;
  for (int j = 0; j < m.cols(); ++j) {
    double s = 0.0;
    for (int i = 0; i < m.rows(); ++i) s += std::fabs(m(i, j));
    best = std::max(best, s);
  }
  return best;
}

}  // namespace detail

// exp(rA) by scaling and squaring. The scaled block is summed with a Taylor
// series of fixed order 30, whose classical remainder bound is below 1e-13 for
// 1-norm up to 4; larger r only adds squarings. Every term is nonnegative, so
// the sum is cancellation-free and entries keep full relative accuracy. The
// result is symmetrized (A is symmetric) and strictly positive for r > 0.
inline Matrix<double> flow_matrix(int N, double r) {
  if (r < 0.0) throw std::invalid_argument("flow_matrix: r must be >= 0");
  const Matrix<double> a = path_adjacency(N);
  int squarings = 0;
  double norm = detail::one_norm(a) * r;
  while (norm > 4.0) {
    norm /= 2.0;
    ++squarings;
  }
  const double scale = r / std::ldexp(1.0, squarings);
  Matrix<double> x(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) x(i, j) = a(i, j) * scale;
  Matrix<double> sum = Matrix<double>::identity(N);
  Matrix<double> term = Matrix<double>::identity(N);
  for (int m = 1; m <= 30; ++m) {
    term = term * x;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        term(i, j) /= m;
        sum(i, j) += term(i, j);
      }
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      const double v = 0.5 * (sum(i, j) + sum(j, i));
      sum(i, j) = v;
      sum(j, i) = v;
    }
  return sum;
}

template <typename T>
struct TotalPositivityResult {
  bool holds = false;
  T min_minor{};
  IndexSet min_rows, min_cols;
};

// Enumerate every minor of every order. Exponential in N, hence the guard.
// Floating mode calls a minor positive when it exceeds `floor` (strict) or
// -floor (non-strict); exact mode compares against zero.
template <typename T>
TotalPositivityResult<T> is_totally_positive(const Matrix<T>& m, bool strict, double floor = 1e-12) {
  if (m.rows() != m.cols()) throw std::invalid_argument("is_totally_positive: matrix not square");
  const int N = m.rows();
  if (N > 8) throw size_limit_error("is_totally_positive: guarded to N <= 8");
  TotalPositivityResult<T> res;
  bool first = true;
  for (int order = 1; order <= N; ++order) {
    const std::vector<IndexSet> sets = enumerate_index_sets(N, order);
    for (const IndexSet& J : sets) {
      std::vector<int> rj(J.size());
      for (std::size_t a = 0; a < J.size(); ++a) rj[a] = J[a] - 1;
      for (const IndexSet& I : sets) {
        std::vector<int> ci(I.size());
        for (std::size_t a = 0; a < I.size(); ++a) ci[a] = I[a] - 1;
        T d = det(m.submatrix(rj, ci));
        if (first || d < res.min_minor) {
          res.min_minor = d;
          res.min_rows = J;
          res.min_cols = I;
          first = false;
        }
      }
    }
  }
  if constexpr (is_exact_scalar_v<T>) {
    res.holds = strict ? res.min_minor > T(0) : res.min_minor >= T(0);
  } else {
    res.holds = strict ? res.min_minor > floor : res.min_minor >= -floor;
  }
  return res;
}

// Row space of E under g_r. Defined for the floating backend only: the
// exponential is irrational, so there is no exact-mode counterpart.
inline Subspace<double> apply_flow(const Subspace<double>& E, double r) {
  return transform(E, flow_matrix(E.N(), r));
}

namespace detail {

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

// Modified Gram-Schmidt on the rows. Preserves the row space; iterated flows
// need it because repeated multiplication by g_1 drives every generator toward
// the dominant eigenvector and the wedge degenerates numerically.
inline Matrix<double> orthonormalize_rows(const Matrix<double>& m) {
  Matrix<double> q = m;
  for (int i = 0; i < q.rows(); ++i) {
    for (int p = 0; p < i; ++p) {
      double c = 0.0;
      for (int j = 0; j < q.cols(); ++j) c += q(i, j) * q(p, j);
      for (int j = 0; j < q.cols(); ++j) q(i, j) -= c * q(p, j);
    }
    double n = 0.0;
    for (int j = 0; j < q.cols(); ++j) n += q(i, j) * q(i, j);
    n = std::sqrt(n);
    if (n == 0.0) throw internal_check_error("orthonormalize_rows: dependent rows");
    for (int j = 0; j < q.cols(); ++j) q(i, j) /= n;
  }
  return q;
}

}  // namespace detail

// Angle between the lines spanned by two coordinate vectors, in [0, pi/2].
// Mathematically arccos(|<u,v>|/(|u||v|)); computed through the chord length
// 2*asin(|u/|u| ∓ v/|v||/2), which keeps full accuracy for tiny angles where
// arccos saturates.
inline double line_angle(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("line_angle: size mismatch");
  const double na = detail::norm2(a), nb = detail::norm2(b);
  if (na == 0.0 || nb == 0.0) throw std::invalid_argument("line_angle: zero vector");
  const double c = detail::dot(a, b);
  const double s = c >= 0.0 ? 1.0 : -1.0;
  double chord = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] / na - s * b[i] / nb;
    chord += d * d;
  }
  const double angle = 2.0 * std::asin(std::min(1.0, std::sqrt(chord) / 2.0));
  return std::min(angle, M_PI / 2.0);
}

// Distance between subspaces as the angle between their Plucker lines.
inline double grassmann_distance(const Subspace<double>& E, const Subspace<double>& F) {
  if (!(E.ambient() == F.ambient())) throw std::invalid_argument("grassmann_distance: ambient mismatch");
  return line_angle(maximal_minors(detail::orthonormalize_rows(E.generators())),
                    maximal_minors(detail::orthonormalize_rows(F.generators())));
}

struct PerronResult {
  std::vector<double> vector;
  double value = 0.0;
  int iterations = 0;
};

// Power iteration for the dominant eigenline of a matrix with all entries
// strictly positive. Deterministic all-ones start; stops when successive
// normalized iterates differ by < tol.
inline PerronResult perron_vector(const Matrix<double>& c, int max_iterations = 2000, double tol = 1e-13) {
  if (c.rows() != c.cols()) throw std::invalid_argument("perron_vector: matrix not square");
  const int n = c.rows();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!(c(i, j) > 0.0)) throw std::invalid_argument("perron_vector: matrix entries must be positive");
  std::vector<double> x(static_cast<std::size_t>(n), 1.0 / std::sqrt(static_cast<double>(n)));
  PerronResult res;
  for (int it = 1; it <= max_iterations; ++it) {
    std::vector<double> y = c.apply(x);
    res.value = detail::dot(x, y);
    const double ny = detail::norm2(y);
    for (double& v : y) v /= ny;
    double diff = 0.0;
    for (int i = 0; i < n; ++i) {
      const double d = y[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(i)];
      diff += d * d;
    }
    x = std::move(y);
    if (std::sqrt(diff) < tol) {
      res.vector = std::move(x);
      res.iterations = it;
      return res;
    }
  }
  throw convergence_failure("perron_vector: no convergence within iteration budget");
}

// The flow's attracting subspace and its Plucker data.
struct PerronData {
  int N = 0, k = 0;
  PluckerVector<double> perron_vector;  // unit, strictly positive entries
  Subspace<double> fixed_subspace;      // span of the top-k path eigenvectors
  double gap_ratio = 0.0;               // exp(lambda_{k+1} - lambda_k), per-step contraction
};

// Construct the fixed subspace from the closed-form spectrum and verify the
// facts the dynamics rest on: it is fixed by g_1, its Plucker line is strictly
// positive, and it spans the same line as the power-iteration Perron vector of
// the compound matrix. Each failure is a broken theorem, not bad input.
inline PerronData perron_fixed_subspace(int N, int k) {
  check_ambient(Ambient{N, k});
  const std::vector<Eigenpair> eig = path_eigensystem(N);
  Matrix<double> rows(k, N);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < N; ++j) rows(i, j) = eig[static_cast<std::size_t>(i)].vector[static_cast<std::size_t>(j)];
  Subspace<double> e1(Ambient{N, k}, rows);

  const PluckerVector<double> p1 = normalize_sign(plucker_vector(e1), 0.0);
  for (double c : p1.coords)
    if (!(c > 0.0)) throw internal_check_error("perron_fixed_subspace: Plucker line not strictly positive");

  if (grassmann_distance(apply_flow(e1, 1.0), e1) >= 1e-10)
    throw internal_check_error("perron_fixed_subspace: subspace not fixed by g_1");

  const Matrix<double> c1 = compound_matrix(flow_matrix(N, 1.0), k);
  PerronResult pr = perron_vector(c1);
  for (double& v : pr.vector)
    if (v < 0.0) v = -v;  // the Perron line's positive representative
  if (line_angle(pr.vector, p1.coords) >= 1e-8)
    throw internal_check_error("perron_fixed_subspace: power iteration disagrees with eigenvector construction");

  PerronData pd{N, k, PluckerVector<double>{Ambient{N, k}, std::move(pr.vector)}, std::move(e1),
                std::exp(eig[static_cast<std::size_t>(k)].value - eig[static_cast<std::size_t>(k - 1)].value)};
  return pd;
}

struct FlowConfig {
  double r_step = 0.1;    // path sampling granularity
  double epsilon = 1e-9;  // convergence threshold on Grassmann distance
  int n_max = 200;        // iteration cap
};

inline void check_flow_config(const FlowConfig& cfg) {
  if (!(cfg.r_step > 0.0)) throw std::invalid_argument("FlowConfig: r_step must be > 0");
  if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("FlowConfig: epsilon must be > 0");
  if (cfg.n_max < 1) throw std::invalid_argument("FlowConfig: n_max must be >= 1");
}

struct FlowStep {
  int n = 0;
  double distance = 0.0;
  double min_margin = 0.0;
  bool sign_ok = false;
};

struct FlowTrace {
  std::vector<FlowStep> steps;
  std::optional<int> converged_at;
  std::optional<double> rate_estimate;  // geometric mean of the last five distance ratios
  double gap_ratio = 0.0;
};

// Iterate E -> g_1 E, recording distance to the fixed subspace, the Plucker
// margin, and the sign pattern. Stops below cfg.epsilon or at n_max. Starts must
// have all Plucker coordinates away from zero; losing that mid-flow is a
// boundary contact and raises an error naming the step.
inline FlowTrace flow_iterate(const Subspace<double>& E, const FlowConfig& cfg) {
  check_flow_config(cfg);
  const double tol = E.tolerance();
  {
    const SignFlags sf = sign_classify(plucker_vector(E), tol);
    if (!sf.all_nonzero)
      throw hypothesis_not_met("flow_iterate: start must have all Plucker coordinates nonzero");
  }
  const PerronData pd = perron_fixed_subspace(E.N(), E.k());
  const std::vector<double> target = plucker_vector(pd.fixed_subspace).coords;
  const Matrix<double> g1t = flow_matrix(E.N(), 1.0).transpose();

  FlowTrace trace;
  trace.gap_ratio = pd.gap_ratio;
  Matrix<double> basis = detail::orthonormalize_rows(E.generators());
  for (int n = 0; n <= cfg.n_max; ++n) {
    const std::vector<double> minors = maximal_minors(basis);
    const double scale = detail::plucker_scale(minors);
    bool sign_ok = true;
    for (double c : minors)
      if (detail::coord_is_zero(c, scale, tol)) {
        sign_ok = false;
        break;
      }
    const double distance = line_angle(minors, target);
    trace.steps.push_back(FlowStep{n, distance, plucker_margin(PluckerVector<double>{E.ambient(), minors}), sign_ok});
    if (!sign_ok && n > 0)
      throw boundary_contact_error(n, "flow_iterate: Plucker margin collapsed at step " + std::to_string(n));
    if (distance < cfg.epsilon) {
      trace.converged_at = n;
      break;
    }
    if (n == cfg.n_max) break;
    basis = detail::orthonormalize_rows(basis * g1t);
  }

  const std::size_t m = trace.steps.size();
  if (m >= 2) {
    const std::size_t window = std::min<std::size_t>(5, m - 1);
    const double d_end = trace.steps[m - 1].distance;
    const double d_begin = trace.steps[m - 1 - window].distance;
    if (d_begin > 0.0 && d_end > 0.0)
      trace.rate_estimate = std::pow(d_end / d_begin, 1.0 / static_cast<double>(window));
  }
  return trace;
}

}  // namespace tpgrass
