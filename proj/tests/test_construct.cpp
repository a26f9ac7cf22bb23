#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sbp/construct.hpp"
#include "sbp/errors.hpp"
#include "support.hpp"

using namespace sbp;
using sbp::testing::frac;

namespace {

ClosureManifold manifold_for(const SbpParameters& p) {
  const auto rep = exists_sbp(p);
  REQUIRE(rep.exists);
  return solve_closure(p, *rep.norm);
}

RationalVector random_xi(std::mt19937_64& rng, std::size_t dof) {
  std::uniform_int_distribution<long> num(-20, 20), den(1, 7);
  RationalVector xi(dof);
  for (auto& v : xi) v = frac(num(rng), den(rng));
  return xi;
}

}  // namespace

TEST_CASE("second order operator on five points") {
  const auto m = manifold_for(SbpParameters{1, 1, 1});
  CHECK(m.dof_d() == 0);
  const auto op = assemble_exact(m, {}, 5, Rational(1));
  const Rational half(1, 2);
  const Rational expect[5][5] = {{-1, 1, 0, 0, 0},
                                 {-half, 0, half, 0, 0},
                                 {0, -half, 0, half, 0},
                                 {0, 0, -half, 0, half},
                                 {0, 0, 0, -1, 1}};
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK(op.entry(i, j) == expect[i][j]);
  const Rational w[5] = {half, 1, 1, 1, half};
  for (std::size_t i = 0; i < 5; ++i) CHECK(op.weight(i) == w[i]);
  CHECK(verify(op).passes());
}

TEST_CASE("closure manifold structure") {
  for (const SbpParameters p : {SbpParameters{3, 3, 6}, SbpParameters{4, 4, 8}, SbpParameters{5, 5, 11}}) {
    const auto m = manifold_for(p);
    const auto acc = accuracy_matrices(p.s, p.t, p.r);
    const auto b0t = m.b0.transposed();
    const auto sym = m.b0 + b0t;
    for (std::size_t i = 0; i < sym.rows(); ++i)
      for (std::size_t j = 0; j < sym.cols(); ++j) CHECK(sym(i, j) == ((i == 0 && j == 0) ? -1 : 0));
    for (const auto& z : m.basis) {
      CHECK((z + z.transposed()).is_zero());
      CHECK((z * acc.x).is_zero());
    }
  }
}

TEST_CASE("known dof counts") {
  CHECK(manifold_for(SbpParameters{3, 3, 6}).dof_d() == 1);
  CHECK(manifold_for(SbpParameters{4, 4, 8}).dof_d() == 3);
  CHECK(manifold_for(SbpParameters{5, 5, 11}).dof_d() == 10);
}

TEST_CASE("every point of the manifold verifies exactly") {
  std::mt19937_64 rng(99);
  for (const SbpParameters p :
       {SbpParameters{2, 2, 4}, SbpParameters{3, 3, 6}, SbpParameters{4, 4, 8}, SbpParameters{5, 4, 10}, SbpParameters{6, 6, 14}}) {
    CAPTURE(p.str());
    const auto m = manifold_for(p);
    for (int trial = 0; trial < 3; ++trial) {
      const auto xi = random_xi(rng, m.dof_d());
      const auto n = min_grid_size(p) + static_cast<std::size_t>(trial);
      const auto op = assemble_exact(m, xi, n, Rational(1, static_cast<long>(n - 1)));
      const auto rep = verify(op);
      CHECK(rep.passes());
      CHECK(rep.sbp_residual == 0);
      CHECK(rep.min_weight > 0);
    }
  }
}

TEST_CASE("point reflection and step scaling") {
  std::mt19937_64 rng(5);
  const auto m = manifold_for(SbpParameters{4, 4, 8});
  const auto xi = random_xi(rng, m.dof_d());
  const std::size_t n = 25;
  const auto unit = assemble_exact(m, xi, n, Rational(1));
  const Rational h = frac(2, 7);
  const auto scaled = assemble_exact(m, xi, n, h);
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(unit.weight(i) == unit.weight(n - 1 - i));
    CHECK(scaled.weight(i) == unit.weight(i) * h);
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(unit.entry(n - 1 - i, n - 1 - j) == -unit.entry(i, j));
      CHECK(scaled.entry(i, j) == unit.entry(i, j) / h);
    }
  }
}

TEST_CASE("banded apply matches dense product") {
  const auto m = manifold_for(SbpParameters{3, 3, 6});
  const auto op = assemble_float(m, std::vector<double>{0.25}, 30, 0.1);
  std::vector<double> v(30), out(30);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::sin(0.3 * static_cast<double>(i));
  op.apply(v, out);
  for (std::size_t i = 0; i < 30; ++i) {
    double acc = 0;
    for (std::size_t j = 0; j < 30; ++j) acc += op.entry(i, j) * v[j];
    CHECK(out[i] == doctest::Approx(acc).epsilon(1e-12));
  }
}

TEST_CASE("a corrupted entry is detected") {
  const auto m = manifold_for(SbpParameters{4, 4, 8});
  auto op = assemble_exact(m, RationalVector(m.dof_d()), min_grid_size(m.params));
  REQUIRE(verify(op).passes());
  op.closure[2 * op.closure_width() + 5] += Rational(1, 1000000);
  const auto rep = verify(op);
  CHECK_FALSE(rep.passes());
  CHECK(rep.sbp_residual > 0);

  auto bad_norm = assemble_exact(m, RationalVector(m.dof_d()), min_grid_size(m.params));
  bad_norm.weights[1] += Rational(1, 1000);
  CHECK_FALSE(verify(bad_norm).passes());
}

TEST_CASE("float rounding keeps the residuals at roundoff") {
  const auto m = manifold_for(SbpParameters{6, 6, 15});
  const auto op = to_float(assemble_exact(m, RationalVector(m.dof_d()), 60, Rational(1, 59)));
  const auto rep = verify(op);
  CHECK(rep.passes(1e-9));
  CHECK(rep.sbp_residual < 1e-12);
}

TEST_CASE("seventh order operator in double on 100 points") {
  const auto m = manifold_for(SbpParameters{7, 7, 19});
  const auto op = to_float(assemble_exact(m, RationalVector(m.dof_d()), 100, Rational(1, 99)));
  CHECK(verify(op).sbp_residual <= 1e-12);
}

TEST_CASE("grid and xi checks") {
  const auto m = manifold_for(SbpParameters{3, 3, 6});
  CHECK_THROWS_AS(assemble_exact(m, RationalVector(1), min_grid_size(m.params) - 1), UnsupportedError);
  CHECK_THROWS_AS(assemble_exact(m, RationalVector(2), min_grid_size(m.params)), UsageError);
}
