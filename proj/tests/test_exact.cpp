#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "plumbcalc/exact.hpp"

using namespace plumbcalc;
using exact::IntMatrix;

namespace {

// Independent oracle: determinant by recursive cofactor expansion.
Integer det_cofactor(const IntMatrix& m) {
  const int n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Integer acc = 0;
  IntMatrix minor(n - 1, n - 1);
  for (int j = 0; j < n; ++j) {
    for (int r = 1; r < n; ++r) {
      int mc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, mc++) = m(r, c);
      }
    }
    Integer term = m(0, j) * det_cofactor(minor);
    acc += (j % 2 == 0) ? term : Integer(-term);
  }
  return acc;
}

IntMatrix random_matrix(std::mt19937& rng, int n, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = dist(rng);
  return m;
}

}  // namespace

TEST_CASE("det of identity") {
  CHECK(exact::det(IntMatrix::identity(6)) == 1);
  CHECK(exact::det(IntMatrix::identity(0)) == 1);
}

TEST_CASE("det rejects non-square input") {
  IntMatrix m(2, 3);
  CHECK_THROWS_AS(exact::det(m), exact::NonSquareError);
}

TEST_CASE("det matches cofactor expansion on random 4x4 matrices") {
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 50; ++trial) {
    IntMatrix m = random_matrix(rng, 4, -9, 9);
    CHECK(exact::det(m) == det_cofactor(m));
  }
}

TEST_CASE("det handles zero pivots") {
  IntMatrix m(3, 3);
  // first pivot zero, needs a row swap
  m(0, 0) = 0; m(0, 1) = 2; m(0, 2) = 1;
  m(1, 0) = 1; m(1, 1) = 0; m(1, 2) = 3;
  m(2, 0) = 4; m(2, 1) = 5; m(2, 2) = 0;
  CHECK(exact::det(m) == det_cofactor(m));
  IntMatrix z(3, 3);
  CHECK(exact::det(z) == 0);
}

TEST_CASE("inverse_exact: identity and defining identity") {
  auto [adj, d] = exact::inverse_exact(IntMatrix::identity(4));
  CHECK(d == 1);
  CHECK(adj == IntMatrix::identity(4));

  std::mt19937 rng(7);
  int found = 0;
  while (found < 20) {
    IntMatrix m = random_matrix(rng, 5, -6, 6);
    Integer dm = exact::det(m);
    if (dm == 0) continue;
    ++found;
    auto [a, d2] = exact::inverse_exact(m);
    CHECK(d2 == dm);
    IntMatrix prod = m * a;
    IntMatrix expect(5, 5);
    for (int i = 0; i < 5; ++i) expect(i, i) = dm;
    CHECK(prod == expect);
  }
}

TEST_CASE("inverse_exact distinguishes singular from non-square") {
  IntMatrix sing(2, 2);
  sing(0, 0) = 1; sing(0, 1) = 2;
  sing(1, 0) = 2; sing(1, 1) = 4;
  CHECK_THROWS_AS(exact::inverse_exact(sing), exact::SingularError);
  CHECK_THROWS_AS(exact::inverse_exact(IntMatrix(2, 3)), exact::NonSquareError);
}

TEST_CASE("leading principal minors") {
  IntMatrix m(3, 3);
  m(0, 0) = 2; m(0, 1) = -1; m(0, 2) = 0;
  m(1, 0) = -1; m(1, 1) = 2; m(1, 2) = -1;
  m(2, 0) = 0; m(2, 1) = -1; m(2, 2) = 2;
  auto minors = exact::leading_principal_minors(m);
  REQUIRE(minors.size() == 3);
  CHECK(minors[0] == 2);
  CHECK(minors[1] == 3);
  CHECK(minors[2] == 4);

  // zero pivot on the way: falls back to per-minor determinants
  IntMatrix z(3, 3);
  z(0, 0) = 0; z(0, 1) = 1; z(1, 0) = 1; z(2, 2) = 5;
  auto zm = exact::leading_principal_minors(z);
  REQUIRE(zm.size() == 3);
  CHECK(zm[0] == 0);
  CHECK(zm[1] == -1);
  CHECK(zm[2] == -5);
}

TEST_CASE("bernoulli polynomial values") {
  CHECK(exact::bernoulli_poly(1, Rational(1, 2)) == 0);
  CHECK(exact::bernoulli_poly(2, Rational(0)) == Rational(1, 6));
  // B_3(x) = x^3 - 3x^2/2 + x/2
  CHECK(exact::bernoulli_poly(3, Rational(1, 4)) == Rational(3, 64));
  CHECK(exact::bernoulli_poly(3, Rational(1, 4)) ==
        -exact::bernoulli_poly(3, Rational(3, 4)));
}

TEST_CASE("bernoulli reflection property") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> numd(-20, 20), dend(1, 12);
  for (int m = 0; m <= 12; ++m)
    for (int trial = 0; trial < 8; ++trial) {
      Rational x(numd(rng), dend(rng));
      Rational lhs = exact::bernoulli_poly(m, 1 - x);
      Rational rhs = exact::bernoulli_poly(m, x);
      if (m % 2 == 1) rhs = -rhs;
      CHECK(lhs == rhs);
    }
}

TEST_CASE("bernoulli numbers match the classical list") {
  CHECK(exact::bernoulli_number(0) == 1);
  CHECK(exact::bernoulli_number(1) == Rational(-1, 2));
  CHECK(exact::bernoulli_number(2) == Rational(1, 6));
  CHECK(exact::bernoulli_number(4) == Rational(-1, 30));
  CHECK(exact::bernoulli_number(12) == Rational(-691, 2730));
  CHECK(exact::bernoulli_number(3) == 0);
}

TEST_CASE("integer helpers") {
  CHECK(isqrt(Integer(0)) == 0);
  CHECK(isqrt(Integer(15)) == 3);
  CHECK(isqrt(Integer(16)) == 4);
  CHECK(floor_div(Integer(-7), Integer(2)) == -4);
  CHECK(ceil_div(Integer(-7), Integer(2)) == -3);
  CHECK(floor_rat(Rational(-3, 2)) == -2);
  CHECK(ceil_rat(Rational(-3, 2)) == -1);
  CHECK(frac_part(Rational(-3, 2)) == Rational(1, 2));
  CHECK(frac_part(Rational(7, 3)) == Rational(1, 3));
}
