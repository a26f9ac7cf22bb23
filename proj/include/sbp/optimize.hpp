#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

#include "sbp/construct.hpp"

namespace sbp {

/// Skew-symmetric surrogate C(xi) = C0 + sum_j xi_j C_j with
/// C0 = P D0 - Q/2 and C_j = P D_j at step h = 1.
struct SurrogateFamily {
  std::size_t n = 0;
  Eigen::MatrixXd c0;
  std::vector<Eigen::MatrixXd> cj;

  std::size_t dof() const { return cj.size(); }
  Eigen::MatrixXd evaluate(std::span<const double> xi) const;
  double norm(std::span<const double> xi) const;
};

SurrogateFamily surrogate_family(const ClosureManifold& manifold, std::size_t n = 100);

struct OptimizationResult {
  std::vector<double> xi;
  double norm_value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

struct OptimizeOptions {
  double tol = 1e-7;
  std::size_t max_iter = 10000;
};

/// Minimizes ||C(xi)||_2, written as the SDP
///   min tau  s.t.  tau I - [[0, C(xi)], [C(xi)^T, 0]] >= 0
/// and solved with a log-det barrier method (damped Newton on the centering
/// problem, barrier weight grown until the duality gap bound 2n/t is below
/// tol / 10). Newton steps are counted against max_iter.
OptimizationResult minimize_surrogate_norm(const SurrogateFamily& family,
                                           const OptimizeOptions& options = {});

/// Existence, closure, and optionally the surrogate optimum for one triple.
struct SelectedOperator {
  ClosureManifold manifold;
  OptimizationResult optimization;  // xi = 0, converged, when not optimized
  RationalVector xi;                // exact value of optimization.xi

  ExactOperator exact(std::size_t n, const Rational& h) const;
  /// Exact assembly rounded once to double.
  FloatOperator float_operator(std::size_t n, double h) const;
};

/// Throws UnsupportedError when no positive diagonal norm exists.
SelectedOperator select_operator(const SbpParameters& params, bool optimize = true,
                                 const OptimizeOptions& options = {});

/// Spectral norm of a skew-symmetric matrix, from the eigenvalues of C^T C.
double skew_spectral_norm(const Eigen::MatrixXd& c);

Eigen::MatrixXd dense_derivative(const FloatOperator& op);
Eigen::VectorXd norm_diagonal(const FloatOperator& op);

/// Largest |lambda| of D (general real eigenproblem). Throws NumericalError
/// if the eigensolver does not converge.
double spectral_radius(const FloatOperator& op);

/// ||P^{-1}|| (||P D - Q/2|| + 1/2), an upper bound on the spectral radius.
double spectral_radius_bound(const FloatOperator& op);

}  // namespace sbp
