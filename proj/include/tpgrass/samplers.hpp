#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tpgrass/errors.hpp"
#include "tpgrass/flow.hpp"
#include "tpgrass/membership.hpp"
#include "tpgrass/subspace.hpp"

namespace tpgrass {

// Counter-based pseudorandomness: per-sample streams are split from a master
// seed by hashing, so batches reproduce bit-for-bit regardless of scheduling.
struct SplitMix64 {
  std::uint64_t state = 0;

  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Unbiased enough for test-data purposes; platform-independent.
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
};

inline std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
  SplitMix64 rng{master ^ (0x9e3779b97f4a7c15ull * (index + 1))};
  return rng.next();
}

enum class SamplerKind { vandermonde, coordinate, random_rational, flowed_coordinate, mixed_sign };

inline std::string to_string(SamplerKind k) {
  switch (k) {
    case SamplerKind::vandermonde: return "vandermonde";
    case SamplerKind::coordinate: return "coordinate";
    case SamplerKind::random_rational: return "random_rational";
    case SamplerKind::flowed_coordinate: return "flowed_coordinate";
    case SamplerKind::mixed_sign: return "mixed_sign";
  }
  throw std::invalid_argument("unknown sampler kind");
}

inline SamplerKind sampler_kind_from_string(const std::string& s) {
  if (s == "vandermonde") return SamplerKind::vandermonde;
  if (s == "coordinate") return SamplerKind::coordinate;
  if (s == "random_rational") return SamplerKind::random_rational;
  if (s == "flowed_coordinate") return SamplerKind::flowed_coordinate;
  if (s == "mixed_sign") return SamplerKind::mixed_sign;
  throw std::invalid_argument("unknown sampler kind: " + s);
}

// Everything needed to regenerate a sample. The seed fully determines output.
struct SamplerSpec {
  SamplerKind kind = SamplerKind::random_rational;
  int N = 0, k = 0;
  std::uint64_t seed = 0;
  std::vector<Rational> nodes;  // vandermonde; derived from seed when empty
  IndexSet index_set;           // coordinate / flowed_coordinate
  int entry_bound = 5;          // random_rational / mixed_sign
  double r = 0.1;               // flowed_coordinate
};

// Row space of the matrix (t_i^(j-1)) for strictly increasing positive nodes.
// All maximal minors are generalized Vandermonde determinants, hence strictly
// positive; construction re-checks that exactly.
inline Subspace<Rational> vandermonde_subspace(const std::vector<Rational>& nodes, int N) {
  const int k = static_cast<int>(nodes.size());
  Rational prev(0);
  for (const Rational& t : nodes) {
    if (!(t > prev)) throw std::invalid_argument("vandermonde_subspace: nodes must be strictly increasing and positive");
    prev = t;
  }
  Matrix<Rational> rows(k, N);
  for (int i = 0; i < k; ++i) {
    Rational p(1);
    for (int j = 0; j < N; ++j) {
      rows(i, j) = p;
      p *= nodes[static_cast<std::size_t>(i)];
    }
  }
  Subspace<Rational> E(Ambient{N, k}, std::move(rows));
  for (const Rational& c : maximal_minors(E.generators()))
    if (!(c > 0)) throw internal_check_error("vandermonde_subspace: a maximal minor is not positive");
  return E;
}

// Increasing positive nodes t_i = i + m_i/512 derived from a seed. Denominators
// are powers of two so the floating image of each node is exact.
inline std::vector<Rational> vandermonde_nodes(int k, std::uint64_t seed) {
  SplitMix64 rng{seed};
  std::vector<Rational> nodes;
  nodes.reserve(static_cast<std::size_t>(k));
  for (int i = 1; i <= k; ++i) nodes.emplace_back(512 * i + static_cast<long>(rng.below(256)), 512);
  return nodes;
}

// The coordinate subspace V_I: a boundary point whose Plucker vector is the
// indicator of I.
template <typename T = Rational>
Subspace<T> coordinate_subspace(const IndexSet& I, int N, double tol = kDefaultTolerance) {
  return Subspace<T>(Ambient{N, static_cast<int>(I.size())}, coordinate_rows<T>(I, N), tol);
}

// Uniform integer entries in [-entry_bound, entry_bound], resampled until the
// rows are independent.
inline Subspace<Rational> random_rational_subspace(int N, int k, int entry_bound, std::uint64_t seed) {
  if (entry_bound < 1) throw std::invalid_argument("random_rational_subspace: entry_bound must be >= 1");
  check_ambient(Ambient{N, k});
  SplitMix64 rng{seed};
  for (int attempt = 0; attempt < 100; ++attempt) {
    Matrix<Rational> rows(k, N);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < N; ++j) rows(i, j) = Rational(rng.uniform_int(-entry_bound, entry_bound));
    if (rank(rows) == k) return Subspace<Rational>(Ambient{N, k}, std::move(rows));
  }
  throw generation_failure("random_rational_subspace: 100 consecutive rank failures");
}

// Flow a coordinate subspace into the strictly positive region. The Plucker
// coordinates span magnitudes down to about r^(k(N-k)), so this subspace carries
// tolerance 0 and is classified by exact floating signs; those minors are
// computed cancellation-free and their signs are reliable at any magnitude.
inline Subspace<double> flowed_coordinate_subspace(const IndexSet& I, int N, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("flowed_coordinate_subspace: r must be > 0");
  Subspace<double> flowed = apply_flow(coordinate_subspace<double>(I, N, 0.0), r);
  const SignFlags sf = sign_classify(plucker_vector(flowed), 0.0);
  if (!sf.positive) throw internal_check_error("flowed_coordinate_subspace: flowed point not strictly positive");
  return flowed;
}

// A subspace with all Plucker coordinates nonzero but genuinely mixed signs
// after normalization: the all-nonzero-but-not-positive stratum.
inline Subspace<Rational> mixed_sign_subspace(int N, int k, std::uint64_t seed, int entry_bound = 5) {
  for (int attempt = 0; attempt < 500; ++attempt) {
    Subspace<Rational> E = random_rational_subspace(N, k, entry_bound, split_seed(seed, static_cast<std::uint64_t>(attempt)));
    const SignFlags sf = sign_classify(plucker_vector(E));
    if (sf.all_nonzero && !sf.positive) return E;
  }
  throw generation_failure("mixed_sign_subspace: retry budget exhausted");
}

inline bool is_floating_kind(SamplerKind k) { return k == SamplerKind::flowed_coordinate; }

inline Subspace<Rational> generate_exact(const SamplerSpec& spec) {
  switch (spec.kind) {
    case SamplerKind::vandermonde:
      return vandermonde_subspace(spec.nodes.empty() ? vandermonde_nodes(spec.k, spec.seed) : spec.nodes, spec.N);
    case SamplerKind::coordinate:
      return coordinate_subspace<Rational>(spec.index_set, spec.N);
    case SamplerKind::random_rational:
      return random_rational_subspace(spec.N, spec.k, spec.entry_bound, spec.seed);
    case SamplerKind::mixed_sign:
      return mixed_sign_subspace(spec.N, spec.k, spec.seed, spec.entry_bound);
    case SamplerKind::flowed_coordinate:
      throw std::invalid_argument("flowed_coordinate sampler has no exact mode");
  }
  throw std::invalid_argument("unknown sampler kind");
}

inline Subspace<double> generate_floating(const SamplerSpec& spec, double tol = kDefaultTolerance) {
  if (spec.kind == SamplerKind::flowed_coordinate) return flowed_coordinate_subspace(spec.index_set, spec.N, spec.r);
  return to_floating(generate_exact(spec), tol);
}

}  // namespace tpgrass
