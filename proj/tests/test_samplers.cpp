#include <doctest.h>

#include <cmath>

#include "tpgrass/samplers.hpp"

using namespace tpgrass;

TEST_CASE("vandermonde_subspace: frozen examples") {
  const Subspace<Rational> E = vandermonde_subspace({Rational(1), Rational(2)}, 4);
  const std::vector<Rational> want = {1, 3, 7, 2, 6, 4};
  CHECK(plucker_vector(E).coords == want);

  const Subspace<Rational> line = vandermonde_subspace({Rational(1)}, 3);
  const std::vector<Rational> ones = {1, 1, 1};
  CHECK(line.generators().row(0) == ones);
  CHECK(plucker_vector(line).coords == ones);

  const Subspace<Rational> big = vandermonde_subspace({Rational(1), Rational(2), Rational(3)}, 4);
  for (const Rational& c : plucker_vector(big).coords) CHECK(c > 0);

  CHECK_THROWS_AS(vandermonde_subspace({Rational(2), Rational(1)}, 4), std::invalid_argument);
  CHECK_THROWS_AS(vandermonde_subspace({Rational(0), Rational(1)}, 4), std::invalid_argument);
}

TEST_CASE("vandermonde positivity across random node tuples") {
  for (int N = 2; N <= 6; ++N)
    for (int k = 1; k < N; ++k)
      for (int trial = 0; trial < 50 / (N - 1); ++trial) {
        const std::uint64_t s = split_seed(53, static_cast<std::uint64_t>(N * 1000 + k * 100 + trial));
        const Subspace<Rational> E = vandermonde_subspace(vandermonde_nodes(k, s), N);
        CHECK(sign_classify(plucker_vector(E)).positive);
      }
}

TEST_CASE("coordinate_subspace") {
  const Subspace<Rational> E = coordinate_subspace<Rational>({1, 3}, 4);
  const std::vector<Rational> want = {0, 1, 0, 0, 0, 0};
  CHECK(plucker_vector(E).coords == want);
  const SignFlags f = sign_classify(plucker_vector(E));
  CHECK(f.nonnegative);
  CHECK(!f.positive);
}

TEST_CASE("random_rational_subspace: deterministic and rank-correct") {
  const Subspace<Rational> a = random_rational_subspace(5, 2, 3, 99);
  const Subspace<Rational> b = random_rational_subspace(5, 2, 3, 99);
  CHECK(a.generators() == b.generators());
  CHECK(rank(a.generators()) == 2);
  const Subspace<Rational> c = random_rational_subspace(5, 2, 3, 100);
  CHECK(a.generators() != c.generators());
  CHECK_THROWS_AS(random_rational_subspace(5, 2, 0, 1), std::invalid_argument);
}

TEST_CASE("flowed_coordinate_subspace: closed form at N=2") {
  const Subspace<double> E = flowed_coordinate_subspace({1}, 2, 1.0);
  const std::vector<double> row = E.generators().row(0);
  CHECK(row[0] == doctest::Approx(std::cosh(1.0)).epsilon(1e-14));
  CHECK(row[1] == doctest::Approx(std::sinh(1.0)).epsilon(1e-14));
  CHECK_THROWS_AS(flowed_coordinate_subspace({1}, 2, 0.0), std::invalid_argument);
}

TEST_CASE("flowed_coordinate_subspace: strict positivity for every index set") {
  for (int N = 2; N <= 4; ++N)
    for (int k = 1; k < N; ++k)
      for (const IndexSet& I : enumerate_index_sets(N, k)) {
        const Subspace<double> E = flowed_coordinate_subspace(I, N, 0.1);
        CHECK(sign_classify(plucker_vector(E), 0.0).positive);
      }
}

TEST_CASE("flowed_coordinate_subspace: full classification survives tolerance zero") {
  // Plucker margins here reach ~r^(k(N-k)) (1e-22 at N=6,k=3,r=0.01); both the
  // sign tests and the rank-based genericity checks must still get every
  // verdict right under strict floating comparisons.
  for (int N = 3; N <= 6; ++N)
    for (int k = 1; k < N; ++k)
      for (double r : {1.0, 0.01})
        for (const IndexSet& I : enumerate_index_sets(N, k)) {
          const Classification c = classify(flowed_coordinate_subspace(I, N, r));
          CHECK(c.positive);
          CHECK(c.all_nonzero);
          CHECK(c.generic);
        }
}

TEST_CASE("flowed_coordinate_subspace: approaches the boundary point as r drops") {
  const Subspace<double> boundary = coordinate_subspace<double>({1, 3}, 4);
  double prev = -1.0;
  for (double r : {0.1, 0.01, 0.001}) {
    const double d = grassmann_distance(flowed_coordinate_subspace({1, 3}, 4, r), boundary);
    if (prev >= 0.0) CHECK(d < prev);
    prev = d;
  }
  CHECK(prev < 5e-3);
}

TEST_CASE("mixed_sign_subspace: contract and determinism") {
  for (int N = 2; N <= 5; ++N)
    for (int k = 1; k < N; ++k) {
      const Subspace<Rational> E = mixed_sign_subspace(N, k, split_seed(59, static_cast<std::uint64_t>(N * 10 + k)));
      const Classification cls = classify(E);
      CHECK(cls.all_nonzero);
      CHECK(!cls.positive);
      CHECK(cls.generic);
      const Subspace<Rational> F = mixed_sign_subspace(N, k, split_seed(59, static_cast<std::uint64_t>(N * 10 + k)));
      CHECK(E.generators() == F.generators());
    }
}

TEST_CASE("alternating line is a valid mixed-sign shape") {
  Matrix<Rational> m(1, 3);
  m(0, 0) = 1, m(0, 1) = -1, m(0, 2) = 1;
  const SignFlags f = sign_classify(plucker_vector(Subspace<Rational>(Ambient{3, 1}, m)));
  CHECK(f.all_nonzero);
  CHECK(!f.positive);
}

TEST_CASE("split_seed: stable and index-sensitive") {
  CHECK(split_seed(7, 0) == split_seed(7, 0));
  CHECK(split_seed(7, 0) != split_seed(7, 1));
  CHECK(split_seed(7, 0) != split_seed(8, 0));
}

TEST_CASE("sampler spec dispatch") {
  SamplerSpec spec;
  spec.kind = SamplerKind::vandermonde;
  spec.N = 4;
  spec.k = 2;
  spec.seed = 7;
  const Subspace<Rational> a = generate_exact(spec);
  const Subspace<Rational> b = generate_exact(spec);
  CHECK(a.generators() == b.generators());

  spec.kind = SamplerKind::flowed_coordinate;
  spec.index_set = {1, 3};
  spec.r = 0.5;
  CHECK_THROWS_AS(generate_exact(spec), std::invalid_argument);
  const Subspace<double> f = generate_floating(spec);
  CHECK(f.k() == 2);
}
