#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>

#include "sbp/ratlinalg.hpp"

namespace sbp {

/// (s, t, r): interior order 2s, boundary order t, closure size r.
struct SbpParameters {
  int s = 1;
  int t = 1;
  int r = 1;

  /// Throws UsageError for s, t < 1 and UnsupportedError for r < s.
  void validate() const;
  std::string str() const;

  friend bool operator==(const SbpParameters&, const SbpParameters&) = default;
};

/// Positive diagonal boundary norm satisfying the compatibility system.
struct NormCandidate {
  SbpParameters params;
  RationalVector weights;  // diagonal of the r x r boundary block
  Rational eta;            // min weight
  std::size_t dof_p = 0;
};

struct ExistenceReport {
  SbpParameters params;
  bool exists = false;
  /// LP optimum. For an inconsistent norm system this is the sentinel -1.
  Rational eta;
  std::size_t dof_p = 0;
  std::optional<NormCandidate> norm;
};

struct LinearSystem {
  RationalMatrix a;
  RationalVector b;
};

/// One row per (p, q), 0 <= p <= q <= t, lexicographic; r unknowns (the
/// diagonal norm weights). The (0,0) row is identically 0 = 0.
LinearSystem build_diagonal_norm_system(const SbpParameters& params);

/// Same rows and right-hand side over the r(r+1)/2 entries of a symmetric
/// boundary norm, upper triangle in row-major order.
LinearSystem build_block_norm_system(const SbpParameters& params);

ExistenceReport exists_sbp(const SbpParameters& params);

/// Variant that lets callers reorder the nullspace basis before the LP (the
/// optimal eta must not depend on it). `permutation` has length dof_P.
ExistenceReport exists_sbp(const SbpParameters& params,
                           std::span<const std::size_t> permutation);

struct SearchResult {
  int value = 0;  // r_min or t_max
  ExistenceReport report;
};

/// Smallest r with an operator for (s, t): upward doubling probe from r = s,
/// then bisection. Throws NumericalError when nothing exists for r <= max_r
/// (default 8s).
SearchResult min_closure_search(int s, int t, int max_r = 0);

/// Largest t <= s for which (s, t, 2s) admits an operator, scanning down.
SearchResult max_boundary_order(int s);

}  // namespace sbp
