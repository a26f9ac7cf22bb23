#pragma once

#include "sbp/ratlinalg.hpp"

namespace sbp {

/// Centered first-derivative stencil of order 2s. Only positive offsets are
/// stored: the full row is (-alpha_s, ..., -alpha_1, 0, alpha_1, ..., alpha_s).
struct CenteredStencil {
  int s = 0;
  RationalVector alpha;  // alpha[i-1] multiplies offset +i
};

CenteredStencil central_coefficients(int s);

/// Where interior rows reach back into the closure: an r x s block with
/// C(k, l) = alpha_{r + l - k} when 1 <= r + l - k <= s, else 0.
RationalMatrix coupling_block(const CenteredStencil& stencil, int r);

/// Monomial matrices describing boundary accuracy (0^0 = 1, 0 * 0^-1 = 0).
struct AccuracyMatrices {
  RationalMatrix x;       // r x (t+1), i^j
  RationalMatrix xtilde;  // s x (t+1), (r+i)^j
  RationalMatrix y;       // r x (t+1), j i^(j-1)
};

AccuracyMatrices accuracy_matrices(int s, int t, int r);

}  // namespace sbp
