#include "sbp/existence.hpp"

#include <algorithm>
#include <numeric>

#include "sbp/errors.hpp"
#include "sbp/simplex.hpp"
#include "sbp/stencil.hpp"

namespace sbp {

void SbpParameters::validate() const {
  if (s < 1 || t < 1 || r < 1) throw UsageError("invalid parameters " + str() + ": need s, t, r >= 1");
  if (r < s) throw UnsupportedError("unsupported parameters " + str() + ": need r >= s");
}

std::string SbpParameters::str() const {
  return "(" + std::to_string(s) + "," + std::to_string(t) + "," + std::to_string(r) + ")";
}

namespace {

// d/dx x^e evaluated at integer k with the convention that it vanishes for e = 0.
Rational dpow(int e, int k) { return e == 0 ? Rational(0) : e * ipow(k, e - 1); }

RationalVector norm_rhs(const SbpParameters& params) {
  const auto stencil = central_coefficients(params.s);
  const auto c = coupling_block(stencil, params.r);
  RationalVector b;
  for (int p = 0; p <= params.t; ++p)
    for (int q = p; q <= params.t; ++q) {
      Rational sum = 0;
      for (int k = 0; k < params.r; ++k)
        for (int l = 0; l < params.s; ++l) {
          if (c(k, l) == 0) continue;
          sum += (ipow(k, p) * ipow(params.r + l, q) + ipow(k, q) * ipow(params.r + l, p)) * c(k, l);
        }
      if (p == 0 && q == 0) sum -= 1;
      b.push_back(sum);
    }
  return b;
}

std::size_t equation_count(int t) { return static_cast<std::size_t>((t + 1) * (t + 2) / 2); }

}  // namespace

LinearSystem build_diagonal_norm_system(const SbpParameters& params) {
  params.validate();
  LinearSystem sys{RationalMatrix(equation_count(params.t), params.r), norm_rhs(params)};
  std::size_t row = 0;
  for (int p = 0; p <= params.t; ++p)
    for (int q = p; q <= params.t; ++q, ++row)
      for (int k = 0; k < params.r; ++k) sys.a(row, k) = dpow(p + q, k);
  return sys;
}

LinearSystem build_block_norm_system(const SbpParameters& params) {
  params.validate();
  const int r = params.r;
  const auto unknowns = static_cast<std::size_t>(r * (r + 1) / 2);
  LinearSystem sys{RationalMatrix(equation_count(params.t), unknowns), norm_rhs(params)};
  std::size_t row = 0;
  for (int p = 0; p <= params.t; ++p)
    for (int q = p; q <= params.t; ++q, ++row) {
      auto coef = [&](int k, int l) -> Rational {
        return ipow(k, p) * dpow(q, l) + ipow(k, q) * dpow(p, l);
      };
      std::size_t col = 0;
      for (int k = 0; k < r; ++k)
        for (int l = k; l < r; ++l, ++col) {
          Rational v = coef(k, l);
          if (k != l) v += coef(l, k);
          sys.a(row, col) = v;
        }
    }
  return sys;
}

ExistenceReport exists_sbp(const SbpParameters& params) {
  return exists_sbp(params, {});
}

ExistenceReport exists_sbp(const SbpParameters& params,
                           std::span<const std::size_t> permutation) {
  const auto sys = build_diagonal_norm_system(params);
  ExistenceReport report;
  report.params = params;

  auto sol = solve_affine(sys.a, sys.b);
  if (!sol) {
    report.eta = -1;
    return report;
  }
  report.dof_p = sol->dof();

  RationalMatrix g = sol->basis;
  if (!permutation.empty()) {
    if (permutation.size() != g.cols()) throw UsageError("exists_sbp: permutation length != dof_P");
    RationalMatrix permuted(g.rows(), g.cols());
    for (std::size_t j = 0; j < g.cols(); ++j)
      for (std::size_t i = 0; i < g.rows(); ++i) permuted(i, j) = g(i, permutation[j]);
    g = std::move(permuted);
  }

  const LpResult lp = maximize_min_entry(sol->particular, g);
  report.eta = lp.eta;
  report.exists = lp.eta > 0;
  if (report.exists) report.norm = NormCandidate{params, lp.x, lp.eta, report.dof_p};
  return report;
}

SearchResult min_closure_search(int s, int t, int max_r) {
  if (s < 1 || t < 1) throw UsageError("min_closure_search: s and t must be >= 1");
  if (max_r <= 0) max_r = 8 * s;
  auto probe = [&](int r) { return exists_sbp(SbpParameters{s, t, r}); };

  ExistenceReport hit = probe(s);
  if (hit.exists) return {s, hit};

  int fail = s;
  int step = 1;
  int r = s + 1;
  for (;;) {
    if (r > max_r) {
      if (fail >= max_r)
        throw NumericalError("no operator for (s,t)=(" + std::to_string(s) + "," +
                             std::to_string(t) + ") with r <= " + std::to_string(max_r));
      r = max_r;
    }
    hit = probe(r);
    if (hit.exists) break;
    fail = r;
    step *= 2;
    r = fail + step;
  }
  int ok = r;
  while (ok - fail > 1) {
    const int mid = fail + (ok - fail) / 2;
    auto rep = probe(mid);
    if (rep.exists) {
      ok = mid;
      hit = std::move(rep);
    } else {
      fail = mid;
    }
  }
  return {ok, hit};
}

SearchResult max_boundary_order(int s) {
  if (s < 1) throw UsageError("max_boundary_order: s must be >= 1");
  for (int t = s; t >= 1; --t) {
    auto rep = exists_sbp(SbpParameters{s, t, 2 * s});
    if (rep.exists) return {t, rep};
  }
  throw NumericalError("no operator with r = 2s for s = " + std::to_string(s));
}

}  // namespace sbp
