#include "sbp/ratlinalg.hpp"

#include <limits>
#include <string>
#include <utility>

#include "sbp/errors.hpp"

namespace sbp {

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1;
  return out;
}

RationalVector RationalMatrix::column(std::size_t j) const {
  RationalVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

RationalMatrix RationalMatrix::transposed() const {
  RationalMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

bool RationalMatrix::is_zero() const {
  for (const auto& v : data_)
    if (v != 0) return false;
  return true;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.rows()) throw UsageError("matrix product: inner dimensions differ");
  RationalMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (b(k, j) != 0) out(i, j) += aik * b(k, j);
    }
  return out;
}

namespace {

template <typename Op>
RationalMatrix elementwise(const RationalMatrix& a, const RationalMatrix& b, Op op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw UsageError("elementwise op: shapes differ");
  RationalMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = op(a(i, j), b(i, j));
  return out;
}

// Reduced row echelon form of `m` in place, restricted to the first
// `ncols` columns. Returns the pivot column of each pivot row.
std::vector<std::size_t> reduce(RationalMatrix& m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = m.rows();
  const std::size_t width = m.cols();
  std::size_t prow = 0;
  Rational factor;
  for (std::size_t c = 0; c < ncols && prow < rows; ++c) {
    std::size_t best = rows;
    std::size_t best_bits = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = prow; i < rows; ++i) {
      if (m(i, c) == 0) continue;
      const std::size_t bits = bit_length(m(i, c));
      if (bits < best_bits) {
        best = i;
        best_bits = bits;
      }
    }
    if (best == rows) continue;
    if (best != prow)
      for (std::size_t j = c; j < width; ++j) swap(m(best, j), m(prow, j));

    const Rational inv = 1 / m(prow, c);
    m(prow, c) = 1;
    for (std::size_t j = c + 1; j < width; ++j)
      if (m(prow, j) != 0) m(prow, j) *= inv;

    std::vector<std::size_t> nz;
    for (std::size_t j = c + 1; j < width; ++j)
      if (m(prow, j) != 0) nz.push_back(j);

    for (std::size_t i = 0; i < rows; ++i) {
      if (i == prow || m(i, c) == 0) continue;
      factor = m(i, c);
      m(i, c) = 0;
      for (std::size_t j : nz) m(i, j) -= factor * m(prow, j);
    }
    pivots.push_back(c);
    ++prow;
  }
  return pivots;
}

}  // namespace

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
  return elementwise(a, b, [](const Rational& x, const Rational& y) -> Rational { return x + y; });
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
  return elementwise(a, b, [](const Rational& x, const Rational& y) -> Rational { return x - y; });
}

RationalVector operator*(const RationalMatrix& a, std::span<const Rational> x) {
  if (a.cols() != x.size()) throw UsageError("matrix-vector product: dimensions differ");
  RationalVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0 && x[j] != 0) out[i] += a(i, j) * x[j];
  return out;
}

RationalVector AffineSolutionSet::evaluate(std::span<const Rational> y) const {
  if (y.size() != dof()) throw UsageError("affine evaluate: wrong parameter count");
  RationalVector out = particular;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j)
      if (basis(i, j) != 0 && y[j] != 0) out[i] += basis(i, j) * y[j];
  return out;
}

std::optional<AffineSolutionSet> solve_affine(const RationalMatrix& a,
                                              std::span<const Rational> b) {
  if (a.rows() != b.size())
    throw UsageError("solve_affine: A has " + std::to_string(a.rows()) + " rows but b has " +
                     std::to_string(b.size()) + " entries");
  const std::size_t n = a.cols();
  RationalMatrix aug(a.rows(), n + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  const auto pivots = reduce(aug, n);
  for (std::size_t i = pivots.size(); i < aug.rows(); ++i)
    if (aug(i, n) != 0) return std::nullopt;

  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < n; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);

  AffineSolutionSet out;
  out.particular.assign(n, Rational(0));
  for (std::size_t k = 0; k < pivots.size(); ++k) out.particular[pivots[k]] = aug(k, n);

  out.basis = RationalMatrix(n, free_cols.size());
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    const std::size_t col = free_cols[f];
    out.basis(col, f) = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) out.basis(pivots[k], f) = -aug(k, col);
  }
  return out;
}

std::size_t rank(const RationalMatrix& a) {
  RationalMatrix work = a;
  return reduce(work, work.cols()).size();
}

}  // namespace sbp
