#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sbp/simplex.hpp"
#include "support.hpp"

using namespace sbp;
using sbp::testing::frac;

namespace {

Rational min_entry(const RationalVector& v) {
  Rational m = v.front();
  for (const auto& e : v) m = std::min(m, e);
  return m;
}

void check_consistent(const LpResult& res, const RationalVector& x0, const RationalMatrix& g) {
  RationalVector x = g * std::span<const Rational>(res.y);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += x0[i];
  CHECK(x == res.x);
  CHECK(min_entry(res.x) == res.eta);
}

}  // namespace

TEST_CASE("two entries, one free direction") {
  // x = (-1 + y, 1): min is maximized at y >= 2 with eta = 1.
  const RationalVector x0{-1, 1};
  RationalMatrix g(2, 1);
  g(0, 0) = 1;
  const auto res = maximize_min_entry(x0, g);
  REQUIRE(res.status == LpStatus::Optimal);
  CHECK(res.eta == 1);
  CHECK(res.y[0] >= 2);
  check_consistent(res, x0, g);
}

TEST_CASE("unbounded ray") {
  const RationalVector x0{0, 0};
  RationalMatrix g(2, 1);
  g(0, 0) = 1;
  g(1, 0) = 1;
  const auto res = maximize_min_entry(x0, g);
  CHECK(res.status == LpStatus::Unbounded);
  for (const auto& v : res.x) CHECK(v >= 1);
  check_consistent(res, x0, g);
}

TEST_CASE("no free parameters") {
  const RationalVector x0{Rational(3, 2), Rational(-1, 4), 7};
  const auto res = maximize_min_entry(x0, RationalMatrix(3, 0));
  REQUIRE(res.status == LpStatus::Optimal);
  CHECK(res.eta == Rational(-1, 4));
  CHECK(res.x == x0);
}

TEST_CASE("balancing two opposed entries") {
  // x = (y, 1 - y, 5): optimum y = 1/2, eta = 1/2.
  const RationalVector x0{0, 1, 5};
  RationalMatrix g(3, 1);
  g(0, 0) = 1;
  g(1, 0) = -1;
  const auto res = maximize_min_entry(x0, g);
  REQUIRE(res.status == LpStatus::Optimal);
  CHECK(res.eta == Rational(1, 2));
  CHECK(res.y[0] == Rational(1, 2));
}

TEST_CASE("optimum is independent of the starting point, monotone in added columns") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-9, 9);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t m = 6, k = 3;
    RationalVector x0(m);
    RationalMatrix g(m, k);
    for (std::size_t i = 0; i < m; ++i) {
      x0[i] = frac(d(rng), 4);
      for (std::size_t j = 0; j < k; ++j) g(i, j) = d(rng);
    }
    // A bounded LP needs a row combination that forbids every direction;
    // sum-zero columns give that.
    for (std::size_t j = 0; j < k; ++j) {
      Rational sum = 0;
      for (std::size_t i = 0; i + 1 < m; ++i) sum += g(i, j);
      g(m - 1, j) = -sum;
    }
    const auto base = maximize_min_entry(x0, g);
    REQUIRE(base.status == LpStatus::Optimal);
    check_consistent(base, x0, g);

    for (int w = 0; w < 20; ++w) {
      RationalVector start(k);
      for (auto& v : start) v = frac(d(rng), 3);
      const auto warm = maximize_min_entry(x0, g, start);
      REQUIRE(warm.status == LpStatus::Optimal);
      CHECK(warm.eta == base.eta);
    }

    RationalMatrix wider(m, k + 1);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < k; ++j) wider(i, j) = g(i, j);
      wider(i, k) = (i + 1 < m) ? Rational(d(rng)) : Rational(0);
    }
    Rational sum = 0;
    for (std::size_t i = 0; i + 1 < m; ++i) sum += wider(i, k);
    wider(m - 1, k) = -sum;
    const auto more = maximize_min_entry(x0, wider);
    REQUIRE(more.status == LpStatus::Optimal);
    CHECK(more.eta >= base.eta);
  }
}
