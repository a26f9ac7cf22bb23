#include "sbp/stencil.hpp"

#include <string>

#include "sbp/errors.hpp"

namespace sbp {

CenteredStencil central_coefficients(int s) {
  if (s < 1) throw UsageError("central_coefficients: s must be >= 1");
  // Odd moments only: sum_i alpha_i (i^k - (-i)^k) = 2 sum_i alpha_i i^k
  // must equal 1 for k = 1 and 0 for k = 3, 5, ..., 2s-1. Even moments
  // vanish by antisymmetry.
  const auto n = static_cast<std::size_t>(s);
  RationalMatrix a(n, n);
  RationalVector b(n, Rational(0));
  for (std::size_t row = 0; row < n; ++row)
    for (std::size_t i = 1; i <= n; ++i)
      a(row, i - 1) = 2 * ipow(static_cast<long>(i), static_cast<unsigned>(2 * row + 1));
  b[0] = 1;
  auto sol = solve_affine(a, b);
  if (!sol || sol->dof() != 0) throw InternalError("central stencil system is singular");
  return CenteredStencil{s, std::move(sol->particular)};
}

RationalMatrix coupling_block(const CenteredStencil& stencil, int r) {
  const int s = stencil.s;
  if (r < s)
    throw UnsupportedError("closure size r=" + std::to_string(r) +
                           " is smaller than stencil half-width s=" + std::to_string(s));
  RationalMatrix c(static_cast<std::size_t>(r), static_cast<std::size_t>(s));
  for (int k = 0; k < r; ++k)
    for (int l = 0; l < s; ++l) {
      const int offset = r + l - k;
      if (offset >= 1 && offset <= s) c(k, l) = stencil.alpha[offset - 1];
    }
  return c;
}

AccuracyMatrices accuracy_matrices(int s, int t, int r) {
  if (s < 1 || t < 1 || r < 1) throw UsageError("accuracy_matrices: s, t, r must be >= 1");
  const auto cols = static_cast<std::size_t>(t + 1);
  AccuracyMatrices m{RationalMatrix(r, cols), RationalMatrix(s, cols), RationalMatrix(r, cols)};
  for (int i = 0; i < r; ++i)
    for (int j = 0; j <= t; ++j) {
      m.x(i, j) = ipow(i, j);
      if (j > 0) m.y(i, j) = j * ipow(i, j - 1);
    }
  for (int i = 0; i < s; ++i)
    for (int j = 0; j <= t; ++j) m.xtilde(i, j) = ipow(r + i, j);
  return m;
}

}  // namespace sbp
