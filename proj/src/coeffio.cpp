#include "sbp/coeffio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sbp/errors.hpp"

namespace sbp {

CoefficientFileSet coefficient_paths(const SbpParameters& params, const std::string& prefix) {
  const std::string tag = std::to_string(params.s) + "_" + std::to_string(params.t) + "_" +
                          std::to_string(params.r) + ".txt";
  return {prefix + "P_" + tag, prefix + "D_" + tag, params};
}

namespace {

std::string render(const Rational& v, bool exact) {
  if (exact) return to_string(v);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", to_double(v));
  return buf;
}

std::vector<std::vector<std::string>> read_rows(const std::filesystem::path& path, std::size_t width) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream fields(line);
    std::vector<std::string> row;
    for (std::string tok; fields >> tok;) row.push_back(tok);
    if (row.empty()) continue;
    if (row.size() != width)
      throw UsageError(path.string() + ":" + std::to_string(lineno) + ": expected " +
                       std::to_string(width) + " columns");
    rows.push_back(std::move(row));
  }
  return rows;
}

std::size_t parse_index(const std::string& tok, std::size_t bound, const std::filesystem::path& path) {
  const Rational v = parse_rational(tok);
  if (v.get_den() != 1 || v < 0 || v >= static_cast<unsigned long>(bound))
    throw UsageError(path.string() + ": index " + tok + " out of range [0, " + std::to_string(bound) + ")");
  return v.get_num().get_ui();
}

}  // namespace

void write_norm(std::ostream& out, const ExactOperator& op, bool exact) {
  for (std::size_t i = 0; i < op.r(); ++i) out << i << ' ' << render(op.weights[i], exact) << '\n';
}

void write_derivative(std::ostream& out, const ExactOperator& op, bool exact) {
  const std::size_t width = op.closure_width();
  for (std::size_t i = 0; i < op.r(); ++i)
    for (std::size_t j = 0; j < width; ++j) {
      const Rational& v = op.closure[i * width + j];
      if (v != 0) out << i << ' ' << j << ' ' << render(v, exact) << '\n';
    }
}

void write_coefficients(const CoefficientFileSet& files, const ExactOperator& op, bool exact) {
  std::ofstream p(files.p_file), d(files.d_file);
  if (!p || !d) throw UsageError("cannot write " + files.p_file.string() + " / " + files.d_file.string());
  write_norm(p, op, exact);
  write_derivative(d, op, exact);
  if (!p.flush() || !d.flush()) throw NumericalError("write failed for " + files.p_file.string());
}

ExactOperator read_coefficients(const CoefficientFileSet& files) {
  const SbpParameters& params = files.params;
  params.validate();
  const auto r = static_cast<std::size_t>(params.r);
  const std::size_t width = r + static_cast<std::size_t>(params.s);

  std::vector<Rational> weights(r);
  std::vector<bool> seen(r, false);
  for (const auto& row : read_rows(files.p_file, 2)) {
    const std::size_t i = parse_index(row[0], r, files.p_file);
    weights[i] = parse_number(row[1]);
    seen[i] = true;
  }
  for (std::size_t i = 0; i < r; ++i)
    if (!seen[i]) throw UsageError(files.p_file.string() + ": missing weight " + std::to_string(i));

  std::vector<Rational> closure(r * width);
  for (const auto& row : read_rows(files.d_file, 3)) {
    const std::size_t i = parse_index(row[0], r, files.d_file);
    const std::size_t j = parse_index(row[1], width, files.d_file);
    closure[i * width + j] = parse_number(row[2]);
  }
  return assemble_from_closure(params, std::move(weights), std::move(closure),
                               min_grid_size(params), Rational(1));
}

}  // namespace sbp
