#include "sbp/simplex.hpp"

#include <algorithm>
#include <vector>

#include "sbp/errors.hpp"

namespace sbp {

namespace {

Rational min_entry(std::span<const Rational> v) {
  return *std::min_element(v.begin(), v.end());
}

}  // namespace

LpResult maximize_min_entry(std::span<const Rational> x0, const RationalMatrix& g,
                            std::span<const Rational> start) {
  const std::size_t m = x0.size();
  const std::size_t v = g.cols();
  if (m == 0) throw UsageError("maximize_min_entry: empty x0");
  if (g.rows() != m) throw UsageError("maximize_min_entry: G row count differs from x0");
  if (!start.empty() && start.size() != v)
    throw UsageError("maximize_min_entry: start has wrong length");

  RationalVector origin(v, Rational(0));
  if (!start.empty()) std::copy(start.begin(), start.end(), origin.begin());

  RationalVector shifted = g * std::span<const Rational>(origin);
  for (std::size_t i = 0; i < m; ++i) shifted[i] += x0[i];

  LpResult res;
  if (v == 0) {
    res.x = shifted;
    res.eta = min_entry(res.x);
    return res;
  }

  const Rational eta0 = min_entry(shifted);

  // Columns: 0 = w, 1 = w', 2+2j = y_j^+, 3+2j = y_j^-, then m slacks.
  const std::size_t nstruct = 2 + 2 * v;
  const std::size_t ncols = nstruct + m;
  std::vector<RationalVector> tab(m, RationalVector(ncols + 1));
  for (std::size_t i = 0; i < m; ++i) {
    auto& row = tab[i];
    row[0] = 1;
    row[1] = -1;
    for (std::size_t j = 0; j < v; ++j) {
      row[2 + 2 * j] = -g(i, j);
      row[3 + 2 * j] = g(i, j);
    }
    row[nstruct + i] = 1;
    row[ncols] = shifted[i] - eta0;
  }
  RationalVector reduced(ncols);
  reduced[0] = 1;
  reduced[1] = -1;
  Rational objective = 0;

  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = nstruct + i;

  std::size_t entering = ncols;
  bool unbounded = false;
  for (;;) {
    entering = ncols;
    for (std::size_t j = 0; j < ncols; ++j)
      if (reduced[j] > 0) {
        entering = j;
        break;
      }
    if (entering == ncols) break;

    std::size_t leave = m;
    Rational best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (tab[i][entering] <= 0) continue;
      Rational ratio = tab[i][ncols] / tab[i][entering];
      if (leave == m || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) {
      unbounded = true;
      break;
    }

    auto& prow = tab[leave];
    const Rational inv = 1 / prow[entering];
    for (auto& val : prow)
      if (val != 0) val *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || tab[i][entering] == 0) continue;
      const Rational f = tab[i][entering];
      for (std::size_t j = 0; j <= ncols; ++j)
        if (prow[j] != 0) tab[i][j] -= f * prow[j];
    }
    const Rational f = reduced[entering];
    for (std::size_t j = 0; j < ncols; ++j)
      if (prow[j] != 0) reduced[j] -= f * prow[j];
    objective += f * prow[ncols];
    basis[leave] = entering;
    ++res.pivots;
  }

  RationalVector value(ncols, Rational(0));
  for (std::size_t i = 0; i < m; ++i) value[basis[i]] = tab[i][ncols];

  if (unbounded) {
    // Walk along the ray until eta >= 1.
    const Rational eta_now = eta0 + objective;
    Rational theta = 0;
    if (eta_now < 1) theta = (1 - eta_now) / reduced[entering];
    value[entering] += theta;
    for (std::size_t i = 0; i < m; ++i) value[basis[i]] -= theta * tab[i][entering];
    res.status = LpStatus::Unbounded;
  }

  res.y = origin;
  for (std::size_t j = 0; j < v; ++j) res.y[j] += value[2 + 2 * j] - value[3 + 2 * j];
  res.x = g * std::span<const Rational>(res.y);
  for (std::size_t i = 0; i < m; ++i) res.x[i] += x0[i];
  res.eta = min_entry(res.x);
  if (!unbounded && res.eta != eta0 + value[0] - value[1])
    throw InternalError("simplex: optimal eta disagrees with min entry");
  return res;
}

}  // namespace sbp
