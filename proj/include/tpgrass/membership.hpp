#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tpgrass/errors.hpp"
#include "tpgrass/index_set.hpp"
#include "tpgrass/plucker.hpp"
#include "tpgrass/subspace.hpp"

namespace tpgrass {

// Sign pattern of a Plucker line after sign normalization.
struct SignFlags {
  bool positive = false;     // every coordinate significantly > 0
  bool nonnegative = false;  // no coordinate significantly < 0
  bool all_nonzero = false;  // every coordinate away from zero
};

// Which genericity condition failed, and at which chain index for (iii)/(iv).
struct FailedCondition {
  std::string condition;  // "i", "ii", "iii", "iv"
  int chain_index = 0;    // meaningful for iii/iv

  std::string to_string() const {
    if (condition == "iii" || condition == "iv") return condition + "(i=" + std::to_string(chain_index) + ")";
    return condition;
  }
};

// Flat record of where a subspace sits relative to the four loci.
struct Classification {
  bool positive = false;
  bool nonnegative = false;
  bool all_nonzero = false;
  bool generic = false;
  std::optional<FailedCondition> failed_condition;  // set when generic is false
  std::optional<IndexSet> witness;                  // first lex vanishing Plucker coordinate
  double margin = 0.0;                              // min|coord| / max|coord|
};

// dim(E ∩ V_I), computed as k + |I| - rank of the stacked generator system.
// Rank paths honor the subspace's own tolerance, including 0: the flag stacks
// below only ever duplicate generator rows bit for bit, and those cancel
// exactly under deterministic first-max pivoting, while graded inputs carry
// true pivots far below any fixed floor.
template <typename T>
int coordinate_intersection_dim(const Subspace<T>& E, const IndexSet& I) {
  if (!is_valid_index_set(I, E.N())) throw std::invalid_argument("coordinate_intersection_dim: invalid index set");
  if (I.empty()) return 0;
  return intersection_dim(E.generators(), coordinate_rows<T>(I, E.N()), E.tolerance());
}

struct TransversalityResult {
  bool transverse = false;          // E ∩ V_I = 0 for every |I| = N-k
  std::optional<IndexSet> witness;  // first I (lex) with E ∩ V_I != 0
};

// Rank-based scan over all coordinate subspaces of complementary dimension,
// with no cross-checking; the witness is the first failing I in lex order.
template <typename T>
TransversalityResult transversality_scan(const Subspace<T>& E) {
  TransversalityResult res;
  res.transverse = true;
  for (const IndexSet& I : enumerate_index_sets(E.N(), E.N() - E.k())) {
    if (coordinate_intersection_dim(E, I) != 0) {
      res.transverse = false;
      res.witness = I;
      break;
    }
  }
  return res;
}

// Rank-based test that E meets every coordinate subspace of complementary
// dimension trivially. In exact mode the verdict is cross-checked against the
// equivalent minor criterion (all Plucker coordinates nonzero); the two agreeing
// is a theorem, so disagreement raises internal_check_error.
template <typename T>
TransversalityResult is_coordinate_transverse(const Subspace<T>& E) {
  TransversalityResult res = transversality_scan(E);
  if constexpr (is_exact_scalar_v<T>) {
    const PluckerVector<T> p = plucker_vector(E);
    bool all_nonzero = true;
    for (const T& c : p.coords)
      if (c == T(0)) {
        all_nonzero = false;
        break;
      }
    if (all_nonzero != res.transverse)
      throw internal_check_error("is_coordinate_transverse: rank-based and minor-based verdicts disagree");
    if (res.witness && p.at(complement(*res.witness, E.N())) != T(0))
      throw internal_check_error("is_coordinate_transverse: witness does not pair with a vanishing coordinate");
  }
  return res;
}

// Sign classification of a Plucker line. The vector is sign-normalized first;
// `tol` drives the floating zero test and is ignored in exact mode.
template <typename T>
SignFlags sign_classify(const PluckerVector<T>& p, double tol = kDefaultTolerance) {
  const PluckerVector<T> q = normalize_sign(p, tol);
  const double scale = detail::plucker_scale(q.coords);
  SignFlags f;
  f.positive = true;
  f.nonnegative = true;
  f.all_nonzero = true;
  for (const T& c : q.coords) {
    const bool zero = detail::coord_is_zero(c, scale, tol);
    if (zero) {
      f.positive = false;
      f.all_nonzero = false;
    } else if (c < T(0)) {
      f.positive = false;
      f.nonnegative = false;
    }
  }
  return f;
}

// The two flag chains attached to a subspace: the leading chain E_i built from
// initial coordinate intervals and the trailing chain E'_i from final ones.
// Chain index i runs 1..N-1 with dim = i and position k holding E itself.
template <typename T>
struct FlagPair {
  std::vector<Flat<T>> leading;   // E_1 ⊂ ... ⊂ E_{N-1}
  std::vector<Flat<T>> trailing;  // E'_1 ⊂ ... ⊂ E'_{N-1}

  const Flat<T>& E(int i) const { return leading[static_cast<std::size_t>(i - 1)]; }
  const Flat<T>& Eprime(int i) const { return trailing[static_cast<std::size_t>(i - 1)]; }
};

inline IndexSet interval(int a, int b) {
  IndexSet I;
  for (int v = a; v <= b; ++v) I.push_back(v);
  return I;
}

// Build both chains. Preconditions: E ∩ V_[1,N-k] = 0 (i) and E ∩ V_[k+1,N] = 0
// (ii); they force dim E_i = dim E'_i = i, which is asserted. For i < k the
// members are intersections with coordinate intervals, for i > k direct sums.
template <typename T>
FlagPair<T> build_flags(const Subspace<T>& E) {
  const int N = E.N(), k = E.k();
  const double tol = E.tolerance();
  if (coordinate_intersection_dim(E, interval(1, N - k)) != 0)
    throw flag_precondition_error("i", "build_flags: E meets V_[1,N-k]");
  if (coordinate_intersection_dim(E, interval(k + 1, N)) != 0)
    throw flag_precondition_error("ii", "build_flags: E meets V_[k+1,N]");

  FlagPair<T> fp;
  auto check_dim = [](const Matrix<T>& gen, int want, const char* which) {
    if (gen.rows() != want) throw internal_check_error(std::string("build_flags: ") + which + " has wrong dimension");
  };
  for (int i = 1; i <= N - 1; ++i) {
    if (i < k) {
      Matrix<T> gen = intersection_generators(E.generators(), coordinate_rows<T>(interval(1, N - k + i), N), tol);
      check_dim(gen, i, "leading chain member");
      fp.leading.emplace_back(N, std::move(gen), tol);
    } else if (i == k) {
      fp.leading.push_back(as_flat(E));
    } else {
      Matrix<T> gen = vstack(E.generators(), coordinate_rows<T>(interval(1, i - k), N));
      fp.leading.emplace_back(N, std::move(gen), tol);  // direct sum by (i)
    }
  }
  for (int i = 1; i <= N - 1; ++i) {
    if (i < k) {
      Matrix<T> gen = intersection_generators(E.generators(), coordinate_rows<T>(interval(k - i + 1, N), N), tol);
      check_dim(gen, i, "trailing chain member");
      fp.trailing.emplace_back(N, std::move(gen), tol);
    } else if (i == k) {
      fp.trailing.push_back(as_flat(E));
    } else {
      Matrix<T> gen = vstack(E.generators(), coordinate_rows<T>(interval(N - i + k + 1, N), N));
      fp.trailing.emplace_back(N, std::move(gen), tol);  // direct sum by (ii)
    }
  }
  return fp;
}

struct GenericityResult {
  bool generic = false;
  std::optional<FailedCondition> failed;
};

// Genericity: conditions (i) and (ii) on coordinate intervals, then with the two
// flag chains, (iii) E'_i ∩ E_{k-i} = 0 for i in [1,k-1] and (iv)
// E'_{k+i} ∩ E_{N-i} = E for i in [1,N-k-1]. Condition (iv) is decided by
// dimension count plus containment of E in both sides.
template <typename T>
GenericityResult is_generic(const Subspace<T>& E) {
  const int N = E.N(), k = E.k();
  const double tol = E.tolerance();
  if (coordinate_intersection_dim(E, interval(1, N - k)) != 0) return {false, FailedCondition{"i", 0}};
  if (coordinate_intersection_dim(E, interval(k + 1, N)) != 0) return {false, FailedCondition{"ii", 0}};
  const FlagPair<T> fp = build_flags(E);
  for (int i = 1; i <= k - 1; ++i) {
    if (intersection_dim(fp.Eprime(i).generators(), fp.E(k - i).generators(), tol) != 0)
      return {false, FailedCondition{"iii", i}};
  }
  for (int i = 1; i <= N - k - 1; ++i) {
    const Matrix<T>& a = fp.Eprime(k + i).generators();
    const Matrix<T>& b = fp.E(N - i).generators();
    const bool dim_ok = intersection_dim(a, b, tol) == k;
    const bool contained = contains(a, E.generators(), tol) && contains(b, E.generators(), tol);
    if (!(dim_ok && contained)) return {false, FailedCondition{"iv", i}};
  }
  return {true, std::nullopt};
}

// Aggregate classification. Exact mode enforces two implications that are
// theorems: the rank/minor agreement inside is_coordinate_transverse, and
// all_nonzero => generic.
template <typename T>
Classification classify(const Subspace<T>& E) {
  const double tol = E.tolerance();
  const PluckerVector<T> p = plucker_vector(E);
  const SignFlags sf = sign_classify(p, tol);
  Classification c;
  c.positive = sf.positive;
  c.nonnegative = sf.nonnegative;
  c.all_nonzero = sf.all_nonzero;
  c.margin = plucker_margin(p);

  if (!c.all_nonzero) {
    const double scale = detail::plucker_scale(p.coords);
    const std::vector<IndexSet> sets = enumerate_index_sets(E.N(), E.k());
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (detail::coord_is_zero(p.coords[i], scale, tol)) {
        c.witness = sets[i];
        break;
      }
    }
  }

  if constexpr (is_exact_scalar_v<T>) {
    const TransversalityResult tr = is_coordinate_transverse(E);
    if (tr.transverse != c.all_nonzero)
      throw internal_check_error("classify: transversality and nonzero-minor verdicts disagree");
  }

  const GenericityResult g = is_generic(E);
  c.generic = g.generic;
  c.failed_condition = g.failed;

  if constexpr (is_exact_scalar_v<T>) {
    if (c.all_nonzero && !c.generic)
      throw internal_check_error("classify: all-nonzero subspace failed genericity");
  }
  return c;
}

}  // namespace tpgrass
