#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sbp/rational.hpp"

namespace sbp {

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<Rational> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Rational> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  RationalVector column(std::size_t j) const;
  RationalMatrix transposed() const;

  bool is_zero() const;

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
RationalVector operator*(const RationalMatrix& a, std::span<const Rational> x);

/// Exact solution set {particular + basis * y} of a linear system.
struct AffineSolutionSet {
  RationalVector particular;
  RationalMatrix basis;  // n x dof, columns span the nullspace

  std::size_t dof() const { return basis.cols(); }
  /// particular + basis * y
  RationalVector evaluate(std::span<const Rational> y) const;
};

/// Solves A x = b exactly. Returns std::nullopt when b is not in range(A).
///
/// Elimination runs column by column to reduced row echelon form. Within a
/// column the pivot row is the remaining nonzero entry of smallest bit length.
/// Non-pivot columns are the free variables in ascending order; nullspace
/// vector j carries a 1 in free slot j and zeros in the other free slots, so
/// the basis is the canonical RREF basis and does not depend on pivot order.
std::optional<AffineSolutionSet> solve_affine(const RationalMatrix& a,
                                              std::span<const Rational> b);

std::size_t rank(const RationalMatrix& a);

}  // namespace sbp
