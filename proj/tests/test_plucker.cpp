#include <doctest.h>

#include "oracles.hpp"
#include "tpgrass/plucker.hpp"
#include "tpgrass/samplers.hpp"

using namespace tpgrass;

namespace {

Subspace<Rational> vandermonde12_n4() {
  Matrix<Rational> m(2, 4);
  m(0, 0) = 1, m(0, 1) = 1, m(0, 2) = 1, m(0, 3) = 1;
  m(1, 0) = 1, m(1, 1) = 2, m(1, 2) = 4, m(1, 3) = 8;
  return Subspace<Rational>(Ambient{4, 2}, m);
}

}  // namespace

TEST_CASE("plucker_vector: frozen hand-computed minors") {
  const PluckerVector<Rational> p = plucker_vector(vandermonde12_n4());
  const std::vector<Rational> want = {1, 3, 7, 2, 6, 4};
  CHECK(p.coords == want);
}

TEST_CASE("plucker_vector: identity block") {
  for (int N : {3, 5}) {
    for (int k = 1; k < N; ++k) {
      IndexSet lead;
      for (int v = 1; v <= k; ++v) lead.push_back(v);
      const PluckerVector<Rational> p = plucker_vector(coordinate_subspace<Rational>(lead, N));
      for (std::size_t i = 0; i < p.coords.size(); ++i) CHECK(p.coords[i] == (i == 0 ? 1 : 0));
    }
  }
}

TEST_CASE("plucker_vector: row-basis change scales all coordinates by the determinant") {
  const Subspace<Rational> E = vandermonde12_n4();
  Matrix<Rational> m(2, 2);  // det 2
  m(0, 0) = 1, m(0, 1) = 1, m(1, 0) = 0, m(1, 1) = 2;
  const Subspace<Rational> F(E.ambient(), m * E.generators());
  const PluckerVector<Rational> p = plucker_vector(E), q = plucker_vector(F);
  for (std::size_t i = 0; i < p.coords.size(); ++i) CHECK(q.coords[i] == 2 * p.coords[i]);
}

TEST_CASE("plucker_vector: rank-deficient generators are rejected at construction") {
  Matrix<Rational> m(2, 4);
  m(0, 0) = 1, m(0, 1) = 2, m(0, 2) = 3, m(0, 3) = 4;
  m(1, 0) = 2, m(1, 1) = 4, m(1, 2) = 6, m(1, 3) = 8;
  CHECK_THROWS_AS(Subspace<Rational>(Ambient{4, 2}, m), std::invalid_argument);
}

TEST_CASE("normalize_sign") {
  const PluckerVector<double> a{Ambient{3, 2}, {-1.0, -1.4142135623730951, -1.0}};
  const std::vector<double> a_want = {1.0, 1.4142135623730951, 1.0};
  CHECK(normalize_sign(a).coords == a_want);

  const PluckerVector<Rational> b{Ambient{4, 2}, {1, 3, 7, 2, 6, 4}};
  CHECK(normalize_sign(b).coords == b.coords);

  const PluckerVector<Rational> c{Ambient{3, 1}, {0, 0, -5}};
  const std::vector<Rational> c_want = {0, 0, 5};
  CHECK(normalize_sign(c).coords == c_want);

  const PluckerVector<Rational> z{Ambient{3, 1}, {0, 0, 0}};
  CHECK_THROWS_AS(normalize_sign(z), std::invalid_argument);
}

TEST_CASE("compound_matrix: first and top exterior powers") {
  const Matrix<Rational> g = oracle::random_rational_matrix(4, 4, 5, 301);
  CHECK(compound_matrix(g, 1) == g);
  const Matrix<Rational> top = compound_matrix(g, 4);
  REQUIRE(top.rows() == 1);
  CHECK(top(0, 0) == oracle::det_expansion(g));

  Matrix<Rational> h(2, 2);
  h(0, 0) = 1, h(0, 1) = 1, h(1, 0) = 1, h(1, 1) = 2;
  const Matrix<Rational> c = compound_matrix(h, 2);
  REQUIRE(c.rows() == 1);
  CHECK(c(0, 0) == 1);

  CHECK_THROWS_AS(compound_matrix(g, 0), std::invalid_argument);
  CHECK_THROWS_AS(compound_matrix(g, 5), std::invalid_argument);
}

TEST_CASE("Cauchy-Binet functoriality, exact") {
  for (int N = 2; N <= 6; ++N) {
    for (int k = 1; k < N; ++k) {
      for (int trial = 0; trial < (N <= 4 ? 20 : 6); ++trial) {
        const std::uint64_t s = split_seed(23, static_cast<std::uint64_t>(N * 1000 + k * 100 + trial));
        const Matrix<Rational> g = oracle::random_invertible_matrix(N, 4, s);
        const Subspace<Rational> E = random_rational_subspace(N, k, 4, s + 1);
        const std::vector<Rational> lhs = compound_matrix(g, k).apply(plucker_vector(E).coords);
        const std::vector<Rational> rhs = plucker_vector(transform(E, g)).coords;
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("compound multiplicativity, exact") {
  for (int N = 2; N <= 5; ++N) {
    for (int k = 1; k <= N; ++k) {
      for (int trial = 0; trial < 5; ++trial) {
        const std::uint64_t s = split_seed(29, static_cast<std::uint64_t>(N * 1000 + k * 100 + trial));
        const Matrix<Rational> g = oracle::random_rational_matrix(N, N, 3, s);
        const Matrix<Rational> h = oracle::random_rational_matrix(N, N, 3, s + 1);
        CHECK(compound_matrix(g * h, k) == compound_matrix(g, k) * compound_matrix(h, k));
      }
    }
  }
}

TEST_CASE("projective well-definedness under basis change") {
  for (int trial = 0; trial < 30; ++trial) {
    const std::uint64_t s = split_seed(31, static_cast<std::uint64_t>(trial));
    const Subspace<Rational> E = random_rational_subspace(4, 2, 5, s);
    const Matrix<Rational> m = oracle::random_invertible_matrix(2, 4, s + 1);
    const Subspace<Rational> F(E.ambient(), m * E.generators());
    const PluckerVector<Rational> p = normalize_sign(plucker_vector(E));
    const PluckerVector<Rational> q = normalize_sign(plucker_vector(F));
    // proportional with a positive ratio
    Rational ratio(0);
    for (std::size_t i = 0; i < p.coords.size(); ++i) {
      if (p.coords[i] == 0) {
        CHECK(q.coords[i] == 0);
        continue;
      }
      const Rational r = q.coords[i] / p.coords[i];
      if (ratio == 0) {
        ratio = r;
        CHECK(ratio > 0);
      } else {
        CHECK(r == ratio);
      }
    }
  }
}

TEST_CASE("three-term Plucker relation at (N,k)=(4,2)") {
  for (int trial = 0; trial < 100; ++trial) {
    const Subspace<Rational> E = random_rational_subspace(4, 2, 7, split_seed(37, static_cast<std::uint64_t>(trial)));
    const PluckerVector<Rational> p = plucker_vector(E);
    const Rational rel = p.at({1, 2}) * p.at({3, 4}) - p.at({1, 3}) * p.at({2, 4}) + p.at({1, 4}) * p.at({2, 3});
    CHECK(rel == 0);
  }
}
