#include "sbp/optimize.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sbp/errors.hpp"

namespace sbp {

Eigen::MatrixXd SurrogateFamily::evaluate(std::span<const double> xi) const {
  if (xi.size() != cj.size()) throw UsageError("surrogate evaluate: xi length != dof");
  Eigen::MatrixXd c = c0;
  for (std::size_t j = 0; j < xi.size(); ++j) c += xi[j] * cj[j];
  return c;
}

double SurrogateFamily::norm(std::span<const double> xi) const {
  return skew_spectral_norm(evaluate(xi));
}

double skew_spectral_norm(const Eigen::MatrixXd& c) {
  if (c.size() == 0) return 0.0;
  const Eigen::MatrixXd gram = c.transpose() * c;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("symmetric eigensolve failed");
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

SurrogateFamily surrogate_family(const ClosureManifold& manifold, std::size_t n) {
  const RationalVector zero(manifold.dof_d(), Rational(0));
  const ExactOperator base = assemble_exact(manifold, zero, n, Rational(1));

  SurrogateFamily fam;
  fam.n = n;
  fam.c0 = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto [lo, hi] = base.row_support(i);
    for (std::size_t j = lo; j < hi; ++j) {
      Rational v = base.weight(i) * base.entry(i, j);
      if (i == j && i == 0) v += Rational(1, 2);
      if (i == j && i == n - 1) v -= Rational(1, 2);
      fam.c0(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_double(v);
    }
  }

  // P D_j is Z_j in the top-left corner and its point reflection, negated,
  // in the bottom-right corner.
  const auto r = static_cast<std::size_t>(manifold.params.r);
  for (const auto& z : manifold.basis) {
    Eigen::MatrixXd cj = Eigen::MatrixXd::Zero(fam.c0.rows(), fam.c0.cols());
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) {
        if (z(a, b) == 0) continue;
        const double v = to_double(z(a, b));
        cj(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = v;
        cj(static_cast<Eigen::Index>(n - 1 - a), static_cast<Eigen::Index>(n - 1 - b)) = -v;
      }
    fam.cj.push_back(std::move(cj));
  }

  auto skew_error = [](const Eigen::MatrixXd& m) { return (m + m.transpose()).cwiseAbs().maxCoeff(); };
  double worst = skew_error(fam.c0);
  for (const auto& cj : fam.cj) worst = std::max(worst, skew_error(cj));
  if (worst > 1e-12)
    throw InternalError("surrogate family is not skew-symmetric (error " + std::to_string(worst) + ")");
  return fam;
}

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// Barrier state for tau I - S(xi) with S(xi) = [[0, C], [C^T, 0]].
class NormBarrier {
 public:
  explicit NormBarrier(const SurrogateFamily& fam) : fam_(fam) {
    const Index n = static_cast<Index>(fam.n);
    dim_ = 2 * n;
    s0_ = embed(fam.c0);

    // Indices touched by any C_j; every S_j lives on this set.
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (const auto& cj : fam.cj)
      for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b)
          if (cj(a, b) != 0.0) used[static_cast<std::size_t>(a)] = used[static_cast<std::size_t>(b)] = true;
    for (Index a = 0; a < n; ++a)
      if (used[static_cast<std::size_t>(a)]) support_.push_back(a);
    for (Index a = 0; a < n; ++a)
      if (used[static_cast<std::size_t>(a)]) support_.push_back(n + a);

    for (const auto& cj : fam.cj) sj_.push_back(restrict(embed(cj)));
  }

  Index dim() const { return dim_; }

  MatrixXd slack(double tau, const VectorXd& xi) const {
    MatrixXd c = fam_.c0;
    for (Index j = 0; j < xi.size(); ++j) c += xi(j) * fam_.cj[static_cast<std::size_t>(j)];
    MatrixXd f = -embed(c);
    f.diagonal().array() += tau;
    return f;
  }

  // log det of a positive definite matrix, or nullopt-like NaN when not PD.
  static double logdet(const MatrixXd& f, Eigen::LLT<MatrixXd>* out = nullptr) {
    Eigen::LLT<MatrixXd> llt(f);
    if (llt.info() != Eigen::Success) return std::numeric_limits<double>::quiet_NaN();
    const double v = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
    if (!std::isfinite(v)) return std::numeric_limits<double>::quiet_NaN();
    if (out) *out = std::move(llt);
    return v;
  }

  // Gradient and Hessian of t*tau - log det F in z = (tau, xi).
  void derivatives(double t, const Eigen::LLT<MatrixXd>& llt, VectorXd& grad, MatrixXd& hess) const {
    const Index d = static_cast<Index>(sj_.size());
    const MatrixXd w = llt.solve(MatrixXd::Identity(dim_, dim_));
    const MatrixXd w2 = w * w;
    const MatrixXd wi = restrict(w);
    const MatrixXd w2i = restrict(w2);

    grad.resize(d + 1);
    hess.resize(d + 1, d + 1);
    grad(0) = t - w.trace();
    hess(0, 0) = w.squaredNorm();

    std::vector<MatrixXd> m(static_cast<std::size_t>(d));
    for (Index j = 0; j < d; ++j) {
      const MatrixXd& sj = sj_[static_cast<std::size_t>(j)];
      grad(j + 1) = wi.cwiseProduct(sj).sum();
      hess(0, j + 1) = hess(j + 1, 0) = -w2i.cwiseProduct(sj).sum();
      m[static_cast<std::size_t>(j)] = wi * sj;
    }
    for (Index j = 0; j < d; ++j)
      for (Index k = j; k < d; ++k) {
        const double v =
            m[static_cast<std::size_t>(j)].cwiseProduct(m[static_cast<std::size_t>(k)].transpose()).sum();
        hess(j + 1, k + 1) = hess(k + 1, j + 1) = v;
      }
  }

 private:
  MatrixXd embed(const MatrixXd& c) const {
    const Index n = c.rows();
    MatrixXd s = MatrixXd::Zero(2 * n, 2 * n);
    s.topRightCorner(n, n) = c;
    s.bottomLeftCorner(n, n) = c.transpose();
    return s;
  }

  MatrixXd restrict(const MatrixXd& m) const {
    const Index k = static_cast<Index>(support_.size());
    MatrixXd out(k, k);
    for (Index a = 0; a < k; ++a)
      for (Index b = 0; b < k; ++b)
        out(a, b) = m(support_[static_cast<std::size_t>(a)], support_[static_cast<std::size_t>(b)]);
    return out;
  }

  const SurrogateFamily& fam_;
  Index dim_ = 0;
  MatrixXd s0_;
  std::vector<Index> support_;
  std::vector<MatrixXd> sj_;
};

// argmin ||C0 + sum_j xi_j C_j||_F over the entries the C_j touch.
VectorXd frobenius_start(const SurrogateFamily& fam) {
  const Index n = static_cast<Index>(fam.n);
  std::vector<std::pair<Index, Index>> entries;
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      for (const auto& cj : fam.cj)
        if (cj(a, b) != 0.0) {
          entries.emplace_back(a, b);
          break;
        }
  const Index d = static_cast<Index>(fam.dof());
  MatrixXd a(static_cast<Index>(entries.size()), d);
  VectorXd rhs(static_cast<Index>(entries.size()));
  for (Index k = 0; k < a.rows(); ++k) {
    const auto [i, j] = entries[static_cast<std::size_t>(k)];
    rhs(k) = -fam.c0(i, j);
    for (Index c = 0; c < d; ++c) a(k, c) = fam.cj[static_cast<std::size_t>(c)](i, j);
  }
  return a.colPivHouseholderQr().solve(rhs);
}

}  // namespace

OptimizationResult minimize_surrogate_norm(const SurrogateFamily& family,
                                           const OptimizeOptions& options) {
  OptimizationResult res;
  const std::size_t d = family.dof();
  res.xi.assign(d, 0.0);
  if (d == 0) {
    res.norm_value = family.norm(res.xi);
    res.converged = true;
    return res;
  }

  // Work with unit-Frobenius directions; xi_j = eta_j / scale_j.
  SurrogateFamily unit = family;
  std::vector<double> scale(d);
  for (std::size_t j = 0; j < d; ++j) {
    scale[j] = unit.cj[j].norm();
    if (scale[j] == 0.0) throw UsageError("surrogate family has a zero direction");
    unit.cj[j] /= scale[j];
  }
  NormBarrier barrier(unit);
  const double m = static_cast<double>(barrier.dim());
  // Gap bound m/t well below tol; pushing t further only fights roundoff.
  const double gap_target = options.tol / 10.0;
  const std::size_t max_newton = 60;  // per centering round
  const double mu = 10.0;

  // Start from the Frobenius-norm minimizer; the particular closure can sit
  // many orders of magnitude away from the optimum.
  VectorXd xi = frobenius_start(unit);
  res.xi.assign(xi.data(), xi.data() + xi.size());
  double tau = 1.01 * unit.norm(res.xi) + 1e-3;
  double t = 1.0;

  VectorXd grad;
  MatrixXd hess;
  bool done = false;
  while (!done && res.iterations < options.max_iter) {
    // Centering.
    for (std::size_t newton = 0; newton < max_newton; ++newton) {
      if (res.iterations >= options.max_iter) break;
      Eigen::LLT<MatrixXd> llt;
      const double ld = NormBarrier::logdet(barrier.slack(tau, xi), &llt);
      if (std::isnan(ld)) throw InternalError("barrier iterate left the feasible region");
      barrier.derivatives(t, llt, grad, hess);
      const VectorXd step = hess.ldlt().solve(-grad);
      const double decrement = -grad.dot(step);
      ++res.iterations;
      if (!(decrement > 0.0) || decrement / 2.0 < 1e-10) break;

      double alpha = 1.0;
      bool moved = false;
      while (alpha > 1e-12) {
        const double tau_new = tau + alpha * step(0);
        const VectorXd xi_new = xi + alpha * step.tail(static_cast<Index>(d));
        const double ld_new = NormBarrier::logdet(barrier.slack(tau_new, xi_new));
        if (!std::isnan(ld_new)) {
          const double change = t * alpha * step(0) - (ld_new - ld);
          if (change <= 0.25 * alpha * grad.dot(step)) {
            tau = tau_new;
            xi = xi_new;
            moved = true;
            break;
          }
        }
        alpha *= 0.5;
      }
      if (!moved) break;
    }
    if (m / t <= gap_target && res.iterations < options.max_iter) done = true;
    t *= mu;
  }

  for (std::size_t j = 0; j < d; ++j) res.xi[j] = xi(static_cast<Index>(j)) / scale[j];
  res.norm_value = family.norm(res.xi);
  res.converged = done;
  return res;
}

SelectedOperator select_operator(const SbpParameters& params, bool optimize,
                                 const OptimizeOptions& options) {
  const ExistenceReport rep = exists_sbp(params);
  if (!rep.exists)
    throw UnsupportedError("no positive diagonal norm for " + params.str());
  SelectedOperator sel{solve_closure(params, *rep.norm), {}, {}};
  if (optimize) {
    const auto fam = surrogate_family(sel.manifold, std::max<std::size_t>(100, min_grid_size(params)));
    sel.optimization = minimize_surrogate_norm(fam, options);
  } else {
    sel.optimization.xi.assign(sel.manifold.dof_d(), 0.0);
    sel.optimization.converged = true;
  }
  for (double v : sel.optimization.xi) sel.xi.emplace_back(v);
  return sel;
}

ExactOperator SelectedOperator::exact(std::size_t n, const Rational& h) const {
  return assemble_exact(manifold, xi, n, h);
}

FloatOperator SelectedOperator::float_operator(std::size_t n, double h) const {
  FloatOperator op = to_float(exact(n, Rational(1)));
  op.h = h;
  return op;
}

Eigen::MatrixXd dense_derivative(const FloatOperator& op) {
  const auto n = static_cast<Index>(op.n);
  MatrixXd d = MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < op.n; ++i) {
    const auto [lo, hi] = op.row_support(i);
    for (std::size_t j = lo; j < hi; ++j) d(static_cast<Index>(i), static_cast<Index>(j)) = op.entry(i, j);
  }
  return d;
}

Eigen::VectorXd norm_diagonal(const FloatOperator& op) {
  VectorXd p(static_cast<Index>(op.n));
  for (std::size_t i = 0; i < op.n; ++i) p(static_cast<Index>(i)) = op.weight(i);
  return p;
}

double spectral_radius(const FloatOperator& op) {
  Eigen::EigenSolver<MatrixXd> es(dense_derivative(op), false);
  if (es.info() != Eigen::Success)
    throw NumericalError("eigensolver did not converge for " + op.params.str() + " at n=" +
                         std::to_string(op.n));
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double spectral_radius_bound(const FloatOperator& op) {
  const VectorXd p = norm_diagonal(op);
  MatrixXd c = p.asDiagonal() * dense_derivative(op);
  c(0, 0) += 0.5;
  c(c.rows() - 1, c.cols() - 1) -= 0.5;
  return (1.0 / p.minCoeff()) * (skew_spectral_norm(c) + 0.5);
}

}  // namespace sbp
