#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sbp/stencil.hpp"

using namespace sbp;

namespace {

Rational factorial(int n) {
  Rational f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

TEST_CASE("closed form of the centered weights") {
  for (int s = 1; s <= 8; ++s) {
    const auto st = central_coefficients(s);
    REQUIRE(st.alpha.size() == static_cast<std::size_t>(s));
    for (int m = 1; m <= s; ++m) {
      const Rational sign = (m % 2 == 1) ? 1 : -1;
      const Rational expect = sign * factorial(s) * factorial(s) / (m * factorial(s - m) * factorial(s + m));
      CHECK(st.alpha[m - 1] == expect);
    }
  }
}

TEST_CASE("familiar low-order stencils") {
  CHECK(central_coefficients(1).alpha == RationalVector{Rational(1, 2)});
  CHECK(central_coefficients(2).alpha == RationalVector{Rational(2, 3), Rational(-1, 12)});
}

TEST_CASE("moment conditions up to degree 2s") {
  // sum_m alpha_m (m^j - (-m)^j) = delta_{j1} for j <= 2s.
  for (int s = 1; s <= 8; ++s) {
    const auto st = central_coefficients(s);
    for (unsigned j = 0; j <= static_cast<unsigned>(2 * s); ++j) {
      Rational acc = 0;
      for (int m = 1; m <= s; ++m) acc += st.alpha[m - 1] * (ipow(m, j) - ipow(-m, j));
      CHECK(acc == (j == 1 ? 1 : 0));
    }
  }
}

TEST_CASE("coupling block pattern") {
  const auto st = central_coefficients(2);
  const auto c = coupling_block(st, 4);
  REQUIRE(c.rows() == 4);
  REQUIRE(c.cols() == 2);
  // Only rows r-s .. r-1 reach past the closure.
  CHECK(c(0, 0) == 0);
  CHECK(c(0, 1) == 0);
  CHECK(c(1, 0) == 0);
  CHECK(c(1, 1) == 0);
  CHECK(c(2, 0) == Rational(-1, 12));
  CHECK(c(2, 1) == 0);
  CHECK(c(3, 0) == Rational(2, 3));
  CHECK(c(3, 1) == Rational(-1, 12));
}

TEST_CASE("weighted coupling sum is one half") {
  for (int s = 1; s <= 8; ++s) {
    const auto st = central_coefficients(s);
    const auto c = coupling_block(st, 2 * s + 1);
    Rational total = 0;
    for (std::size_t i = 0; i < c.rows(); ++i)
      for (std::size_t j = 0; j < c.cols(); ++j) total += c(i, j);
    CHECK(total == Rational(1, 2));
  }
}

TEST_CASE("accuracy matrices") {
  const auto m = accuracy_matrices(2, 2, 3);
  REQUIRE(m.x.rows() == 3);
  REQUIRE(m.x.cols() == 3);
  REQUIRE(m.xtilde.rows() == 2);
  // 0^0 = 1
  CHECK(m.x(0, 0) == 1);
  CHECK(m.x(0, 1) == 0);
  CHECK(m.x(2, 2) == 4);
  CHECK(m.xtilde(0, 2) == 9);
  CHECK(m.xtilde(1, 1) == 4);
  // j i^(j-1), with 0 * 0^-1 = 0
  CHECK(m.y(0, 0) == 0);
  CHECK(m.y(0, 1) == 1);
  CHECK(m.y(0, 2) == 0);
  CHECK(m.y(2, 2) == 4);
}
