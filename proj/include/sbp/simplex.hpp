#pragma once

#include <span>

#include "sbp/ratlinalg.hpp"

namespace sbp {

enum class LpStatus { Optimal, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Optimal;
  Rational eta;       // min_i x_i at the returned point
  RationalVector y;   // free parameters, length = G.cols()
  RationalVector x;   // x0 + G y
  std::size_t pivots = 0;
};

/// Maximizes min_i (x0 + G y)_i over y in exact arithmetic.
///
/// Solved as the LP  max eta  s.t.  eta - (G y)_i <= x0_i  with the free
/// variables split into nonnegative parts and eta shifted by min(x0) so the
/// all-slack basis is feasible. Bland's rule on both the entering and leaving
/// choice guarantees termination. On an unbounded ray the returned y is a
/// finite point on that ray with every x_i >= 1.
///
/// `start` shifts the origin of the search to y = start; the optimal eta does
/// not depend on it (the vertex may).
LpResult maximize_min_entry(std::span<const Rational> x0, const RationalMatrix& g,
                            std::span<const Rational> start = {});

}  // namespace sbp
