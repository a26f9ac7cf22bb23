#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "sbp/construct.hpp"

namespace sbp {

/// Coefficient files for one operator: P_s_t_r.txt holds "i v" rows (boundary
/// norm weights), D_s_t_r.txt holds "i j v" rows (top closure rows of D).
/// Both are scaled to h = 1; only the upper-left corner is stored.
struct CoefficientFileSet {
  std::filesystem::path p_file;
  std::filesystem::path d_file;
  SbpParameters params;
};

/// `prefix` is prepended verbatim, so "out/" writes into a directory.
CoefficientFileSet coefficient_paths(const SbpParameters& params, const std::string& prefix);

/// Values as 17 significant digits, or p/q tokens when `exact`.
void write_norm(std::ostream& out, const ExactOperator& op, bool exact);
void write_derivative(std::ostream& out, const ExactOperator& op, bool exact);
void write_coefficients(const CoefficientFileSet& files, const ExactOperator& op, bool exact);

/// Parses both files (decimal or p/q tokens, converted exactly) and checks
/// the index ranges. The result has h = 1 and the smallest admissible n.
ExactOperator read_coefficients(const CoefficientFileSet& files);

}  // namespace sbp
