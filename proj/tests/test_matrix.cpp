#include <doctest.h>

#include "oracles.hpp"
#include "tpgrass/matrix.hpp"

using namespace tpgrass;

TEST_CASE("det: exact elimination agrees with cofactor expansion") {
  for (int n = 1; n <= 5; ++n) {
    for (int trial = 0; trial < 50; ++trial) {
      const Matrix<Rational> m =
          oracle::random_rational_matrix(n, n, 6, split_seed(11, static_cast<std::uint64_t>(n * 100 + trial)));
      CHECK(det(m) == oracle::det_expansion(m));
    }
  }
}

TEST_CASE("det: floating elimination agrees with cofactor expansion") {
  for (int n = 2; n <= 5; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const Matrix<Rational> q =
          oracle::random_rational_matrix(n, n, 6, split_seed(13, static_cast<std::uint64_t>(n * 100 + trial)));
      const Matrix<double> m = to_floating(q);
      CHECK(det(m) == doctest::Approx(to_double(oracle::det_expansion(q))).epsilon(1e-11));
    }
  }
}

TEST_CASE("det: small frozen cases") {
  Matrix<Rational> m(2, 2);
  m(0, 0) = 1, m(0, 1) = 1, m(1, 0) = 1, m(1, 1) = 2;
  CHECK(det(m) == 1);
  Matrix<Rational> s(2, 2);
  s(0, 0) = 2, s(0, 1) = 4, s(1, 0) = 1, s(1, 1) = 2;
  CHECK(det(s) == 0);
  CHECK_THROWS_AS(det(Matrix<Rational>(2, 3)), std::invalid_argument);
}

TEST_CASE("rank agrees with the minor oracle") {
  for (int trial = 0; trial < 60; ++trial) {
    const int rows = 2 + static_cast<int>(trial % 3);
    const int cols = 2 + static_cast<int>(trial % 4);
    const Matrix<Rational> m =
        oracle::random_rational_matrix(rows, cols, 2, split_seed(17, static_cast<std::uint64_t>(trial)));
    CHECK(rank(m) == oracle::rank_by_minors(m));
  }
}

TEST_CASE("rank: floating with tolerance") {
  Matrix<double> m(3, 3);
  m(0, 0) = 1;
  m(1, 1) = 1;
  m(2, 2) = 1e-14;  // relative noise against unit scale
  CHECK(rank(m, 1e-9) == 2);
  CHECK(rank(m, 0.0) == 3);
}

TEST_CASE("kernel vectors annihilate the matrix exactly") {
  for (int trial = 0; trial < 40; ++trial) {
    const int rows = 2 + trial % 2;
    const int cols = 3 + trial % 3;
    const Matrix<Rational> m =
        oracle::random_rational_matrix(rows, cols, 3, split_seed(19, static_cast<std::uint64_t>(trial)));
    const Matrix<Rational> basis = kernel(m);
    CHECK(basis.rows() == cols - rank(m));
    for (int b = 0; b < basis.rows(); ++b) {
      const std::vector<Rational> x = basis.row(b);
      const std::vector<Rational> y = m.apply(x);
      for (const Rational& v : y) CHECK(v == 0);
    }
    // basis rows are independent
    CHECK(rank(basis) == basis.rows());
  }
}

TEST_CASE("matrix algebra sanity") {
  const Matrix<Rational> a = oracle::random_rational_matrix(3, 4, 4, 101);
  const Matrix<Rational> b = oracle::random_rational_matrix(4, 2, 4, 102);
  const Matrix<Rational> c = oracle::random_rational_matrix(2, 5, 4, 103);
  CHECK(((a * b) * c) == (a * (b * c)));
  CHECK((a * b).transpose() == b.transpose() * a.transpose());
  CHECK(Matrix<Rational>::identity(3) * a == a);
  const Matrix<Rational> st = vstack(a, a);
  CHECK(st.rows() == 6);
  CHECK(rank(st) == rank(a));
}
