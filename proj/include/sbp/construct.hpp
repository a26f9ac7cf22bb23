#pragma once

#include <cstddef>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "sbp/existence.hpp"
#include "sbp/stencil.hpp"

namespace sbp {

/// Every boundary closure compatible with a given norm: B(xi) = B0 + sum xi_j Z_j.
struct ClosureManifold {
  SbpParameters params;
  NormCandidate norm;
  CenteredStencil stencil;
  RationalMatrix coupling;          // r x s
  RationalMatrix b0;                // r x r, B0 + B0^T = -e0 e0^T
  /// Antisymmetric, Z_j X = 0, pairwise orthogonal in the Frobenius inner
  /// product; b0 is orthogonal to all of them.
  std::vector<RationalMatrix> basis;

  std::size_t dof_d() const { return basis.size(); }

  /// B0 + sum_j xi_j Z_j
  RationalMatrix closure_matrix(std::span<const Rational> xi) const;
};

/// Solves the antisymmetric part of the closure from B2 X = P Y - C Xtilde - B1 X.
/// Unknowns are the strictly lower triangle of B2, row-major.
ClosureManifold solve_closure(const SbpParameters& params, const NormCandidate& norm);

enum class Representation { Exact, Float };

/// n x n SBP pair on a uniform grid with step h. Stored by structure: the top
/// closure rows (h = 1 scaling), the centered stencil, and the boundary norm
/// weights. The bottom closure is the point reflection D[n-1-i][n-1-j] = -D[i][j].
template <typename T>
struct AssembledOperator {
  SbpParameters params;
  std::size_t n = 0;
  T h;
  std::vector<T> weights;  // r boundary norm weights at h = 1
  std::vector<T> closure;  // r x (r+s) row-major, rows of P^{-1}[B | C] at h = 1
  std::vector<T> alpha;    // s
  std::vector<T> xi;

  static constexpr Representation representation =
      std::is_same_v<T, double> ? Representation::Float : Representation::Exact;

  std::size_t r() const { return static_cast<std::size_t>(params.r); }
  std::size_t s() const { return static_cast<std::size_t>(params.s); }
  std::size_t closure_width() const { return r() + s(); }

  /// D entry at step 1 (unscaled).
  T unit_entry(std::size_t i, std::size_t j) const;
  T unit_weight(std::size_t i) const;

  T entry(std::size_t i, std::size_t j) const { return unit_entry(i, j) / h; }
  T weight(std::size_t i) const { return unit_weight(i) * h; }

  /// Column range [first, last) that may hold nonzeros in row i.
  std::pair<std::size_t, std::size_t> row_support(std::size_t i) const;

  /// out = D v, O(n s) using the band structure.
  void apply(std::span<const T> v, std::span<T> out) const;
};

using ExactOperator = AssembledOperator<Rational>;
using FloatOperator = AssembledOperator<double>;

std::size_t min_grid_size(const SbpParameters& params);

/// Throws UnsupportedError for n < 2r + 2s and UsageError for a wrong xi length.
ExactOperator assemble_exact(const ClosureManifold& manifold, std::span<const Rational> xi,
                             std::size_t n, const Rational& h);
ExactOperator assemble_exact(const ClosureManifold& manifold, std::span<const Rational> xi,
                             std::size_t n);

FloatOperator assemble_float(const ClosureManifold& manifold, std::span<const double> xi,
                             std::size_t n, double h);
FloatOperator assemble_float(const ClosureManifold& manifold, std::span<const double> xi,
                             std::size_t n);

/// Rebuilds an operator from stored closure rows and norm weights (h = 1
/// scaling), as read from coefficient files.
template <typename T>
AssembledOperator<T> assemble_from_closure(const SbpParameters& params, std::vector<T> weights,
                                           std::vector<T> closure, std::size_t n, T h);

FloatOperator to_float(const ExactOperator& op);

template <typename T>
struct VerificationReport {
  T sbp_residual{};                // max |P D + D^T P - Q| over all entries
  std::vector<T> boundary_residual;  // per degree 0..t, rows < r and >= n-r
  std::vector<T> interior_residual;  // per degree 0..2s
  T min_weight{};

  /// All residuals exactly zero (Exact) or below `tol` (Float), positive norm.
  bool passes(const T& tol = T(0)) const;
};

template <typename T>
VerificationReport<T> verify(const AssembledOperator<T>& op);

}  // namespace sbp
