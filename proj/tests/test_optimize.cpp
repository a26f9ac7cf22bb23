#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sbp/optimize.hpp"

using namespace sbp;

namespace {

ClosureManifold manifold_for(const SbpParameters& p) {
  const auto rep = exists_sbp(p);
  REQUIRE(rep.exists);
  return solve_closure(p, *rep.norm);
}

Eigen::MatrixXd rotation() {
  Eigen::MatrixXd c(2, 2);
  c << 0, 1, -1, 0;
  return c;
}

}  // namespace

TEST_CASE("spectral norm of a skew matrix") {
  CHECK(skew_spectral_norm(rotation() * 3.0) == doctest::Approx(3.0));
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(4, 4);
  c(0, 1) = 2;
  c(1, 0) = -2;
  c(2, 3) = -5;
  c(3, 2) = 5;
  CHECK(skew_spectral_norm(c) == doctest::Approx(5.0));
}

TEST_CASE("one-parameter toy family") {
  SurrogateFamily fam;
  fam.n = 2;
  fam.c0 = rotation();
  fam.cj = {rotation()};
  const auto res = minimize_surrogate_norm(fam);
  REQUIRE(res.xi.size() == 1);
  CHECK(res.xi[0] == doctest::Approx(-1.0).epsilon(1e-5));
  CHECK(res.norm_value < 1e-6);
  CHECK(res.converged);
}

TEST_CASE("two parameters with a nonzero optimum") {
  // C = [[0, 1 + a, 2], [., 0, b], [., ., 0]]; the optimum zeroes a and b and
  // leaves the fixed entry, so the value is 2.
  SurrogateFamily fam;
  fam.n = 3;
  fam.c0 = Eigen::MatrixXd::Zero(3, 3);
  fam.c0(0, 1) = 1;
  fam.c0(0, 2) = 2;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 3), b = Eigen::MatrixXd::Zero(3, 3);
  a(0, 1) = 1;
  b(1, 2) = 1;
  fam.c0 -= fam.c0.transpose().eval();
  a -= a.transpose().eval();
  b -= b.transpose().eval();
  fam.cj = {a, b};
  const auto res = minimize_surrogate_norm(fam);
  CHECK(res.norm_value == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(res.xi[0] == doctest::Approx(-1.0).epsilon(1e-3));
  CHECK(std::abs(res.xi[1]) < 1e-3);
}

TEST_CASE("no free parameters") {
  const auto m = manifold_for(SbpParameters{2, 2, 4});
  REQUIRE(m.dof_d() == 0);
  const auto fam = surrogate_family(m, 40);
  const auto res = minimize_surrogate_norm(fam);
  CHECK(res.xi.empty());
  CHECK(res.converged);
  CHECK(res.norm_value == doctest::Approx(fam.norm({})));
}

TEST_CASE("surrogate is skew and convex along segments") {
  const auto m = manifold_for(SbpParameters{4, 4, 8});
  const auto fam = surrogate_family(m, 60);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 0.5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> a(fam.dof()), b(fam.dof()), mid(fam.dof());
    for (std::size_t j = 0; j < fam.dof(); ++j) {
      a[j] = g(rng);
      b[j] = g(rng);
      mid[j] = 0.5 * (a[j] + b[j]);
    }
    const Eigen::MatrixXd c = fam.evaluate(a);
    CHECK((c + c.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(fam.norm(mid) <= 0.5 * (fam.norm(a) + fam.norm(b)) + 1e-12);
  }
}

TEST_CASE("optimum is a local minimum under random perturbations") {
  const auto m = manifold_for(SbpParameters{5, 5, 11});
  const auto fam = surrogate_family(m, 100);
  const OptimizeOptions opts;
  const auto res = minimize_surrogate_norm(fam, opts);
  REQUIRE(res.converged);
  CHECK(res.norm_value == doctest::Approx(fam.norm(res.xi)));
  CHECK(res.norm_value <= fam.norm(std::vector<double>(fam.dof(), 0.0)) + opts.tol);

  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> dir(fam.dof());
    double len = 0;
    for (auto& v : dir) {
      v = g(rng);
      len += v * v;
    }
    len = std::sqrt(len);
    std::vector<double> xi = res.xi;
    for (std::size_t j = 0; j < xi.size(); ++j) xi[j] += 10 * opts.tol * dir[j] / len;
    CHECK(fam.norm(xi) >= res.norm_value - opts.tol);
  }
}

TEST_CASE("spectral radius stays below its bound") {
  for (const SbpParameters p : {SbpParameters{3, 3, 6}, SbpParameters{5, 5, 11}}) {
    const auto sel = select_operator(p);
    for (std::size_t n : {40, 80}) {
      const auto op = sel.float_operator(n, 1.0 / static_cast<double>(n - 1));
      const double rho = spectral_radius(op);
      CHECK(rho > 0);
      CHECK(rho <= spectral_radius_bound(op) * (1 + 1e-12));
    }
  }
}

TEST_CASE("selected operator is exact and matches its float rounding") {
  const auto sel = select_operator(SbpParameters{4, 4, 8});
  REQUIRE(sel.xi.size() == sel.manifold.dof_d());
  const auto exact = sel.exact(30, Rational(1, 29));
  CHECK(verify(exact).passes());
  const auto fl = sel.float_operator(30, 1.0 / 29.0);
  for (std::size_t i = 0; i < 30; ++i)
    for (std::size_t j = 0; j < 30; ++j)
      CHECK(fl.entry(i, j) == doctest::Approx(to_double(exact.entry(i, j))).epsilon(1e-14));
  const auto plain = select_operator(SbpParameters{4, 4, 8}, false);
  for (const auto& v : plain.xi) CHECK(v == 0);
}
