#include "sbp/construct.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sbp/errors.hpp"

namespace sbp {

namespace {

std::size_t lower_index(std::size_t i, std::size_t j) { return i * (i - 1) / 2 + j; }

template <typename T>
T magnitude(const T& v) {
  using std::abs;
  return T(abs(v));
}

Rational frobenius_dot(const RationalMatrix& a, const RationalMatrix& b) {
  Rational sum = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0 && b(i, j) != 0) sum += a(i, j) * b(i, j);
  return sum;
}

// Exact Gram-Schmidt (no normalization) of the columns of `g`.
std::vector<RationalVector> orthogonalize(const RationalMatrix& g) {
  std::vector<RationalVector> out;
  for (std::size_t j = 0; j < g.cols(); ++j) {
    RationalVector v = g.column(j);
    for (const auto& u : out) {
      Rational num = 0, den = 0;
      for (std::size_t i = 0; i < v.size(); ++i) {
        num += v[i] * u[i];
        den += u[i] * u[i];
      }
      const Rational f = num / den;
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= f * u[i];
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

RationalMatrix ClosureManifold::closure_matrix(std::span<const Rational> xi) const {
  if (xi.size() != basis.size()) throw UsageError("closure_matrix: xi length != dof_D");
  RationalMatrix out = b0;
  for (std::size_t j = 0; j < xi.size(); ++j) {
    if (xi[j] == 0) continue;
    for (std::size_t a = 0; a < out.rows(); ++a)
      for (std::size_t b = 0; b < out.cols(); ++b)
        if (basis[j](a, b) != 0) out(a, b) += xi[j] * basis[j](a, b);
  }
  return out;
}

ClosureManifold solve_closure(const SbpParameters& params, const NormCandidate& norm) {
  params.validate();
  const auto r = static_cast<std::size_t>(params.r);
  const auto cols = static_cast<std::size_t>(params.t + 1);
  if (norm.weights.size() != r) throw UsageError("solve_closure: norm has wrong size");

  ClosureManifold m;
  m.params = params;
  m.norm = norm;
  m.stencil = central_coefficients(params.s);
  m.coupling = coupling_block(m.stencil, params.r);
  const auto acc = accuracy_matrices(params.s, params.t, params.r);

  // rhs = P Y - C Xtilde - B1 X with B1 = -1/2 e0 e0^T.
  RationalMatrix rhs = acc.y;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t c = 0; c < cols; ++c) rhs(i, c) *= norm.weights[i];
  rhs = rhs - m.coupling * acc.xtilde;
  for (std::size_t c = 0; c < cols; ++c) rhs(0, c) += Rational(1, 2) * acc.x(0, c);

  const std::size_t unknowns = r * (r - 1) / 2;
  RationalMatrix a(r * cols, unknowns);
  RationalVector b(r * cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t eq = i * cols + c;
      b[eq] = rhs(i, c);
      // (B2 X)(i, c) = sum_{k<i} u(i,k) X(k,c) - sum_{k>i} u(k,i) X(k,c)
      for (std::size_t k = 0; k < i; ++k) a(eq, lower_index(i, k)) = acc.x(k, c);
      for (std::size_t k = i + 1; k < r; ++k) a(eq, lower_index(k, i)) = -acc.x(k, c);
    }

  auto sol = solve_affine(a, b);
  if (!sol)
    throw InternalError("closure system inconsistent for " + params.str() +
                        "; the norm does not satisfy the compatibility conditions");

  auto unpack = [r](std::span<const Rational> u) {
    RationalMatrix z(r, r);
    for (std::size_t i = 1; i < r; ++i)
      for (std::size_t k = 0; k < i; ++k) {
        z(i, k) = u[lower_index(i, k)];
        z(k, i) = -u[lower_index(i, k)];
      }
    return z;
  };
  // Z antisymmetric with Z X = 0 means Z = N K N^T for N spanning the
  // vectors orthogonal to the columns of X and K antisymmetric. With N
  // orthogonalized exactly, the pairs n_a n_b^T - n_b n_a^T (a < b) form a
  // Frobenius-orthogonal basis of the same space the elimination found.
  const RationalMatrix xt = acc.x.transposed();
  const auto left_null = solve_affine(xt, RationalVector(xt.rows(), Rational(0)));
  const auto ns = orthogonalize(left_null->basis);
  for (std::size_t p = 0; p < ns.size(); ++p)
    for (std::size_t q = p + 1; q < ns.size(); ++q) {
      RationalMatrix z(r, r);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < r; ++k) z(i, k) = ns[p][i] * ns[q][k] - ns[q][i] * ns[p][k];
      m.basis.push_back(std::move(z));
    }
  if (m.basis.size() != sol->dof())
    throw InternalError("closure nullspace dimension mismatch for " + params.str());

  // Particular closure orthogonal to the nullspace (minimum Frobenius norm).
  RationalMatrix b2 = unpack(sol->particular);
  for (const auto& z : m.basis) {
    const Rational f = frobenius_dot(b2, z) / frobenius_dot(z, z);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t k = 0; k < r; ++k)
        if (z(i, k) != 0) b2(i, k) -= f * z(i, k);
  }
  m.b0 = std::move(b2);
  m.b0(0, 0) -= Rational(1, 2);
  return m;
}

std::size_t min_grid_size(const SbpParameters& params) {
  return static_cast<std::size_t>(2 * params.r + 2 * params.s);
}

template <typename T>
T AssembledOperator<T>::unit_entry(std::size_t i, std::size_t j) const {
  const std::size_t width = closure_width();
  if (i < r()) return j < width ? closure[i * width + j] : T(0);
  if (i >= n - r()) {
    const std::size_t ii = n - 1 - i;
    const std::size_t jj = n - 1 - j;
    return jj < width ? T(-closure[ii * width + jj]) : T(0);
  }
  if (j == i) return T(0);
  if (j > i) return j - i <= s() ? alpha[j - i - 1] : T(0);
  return i - j <= s() ? T(-alpha[i - j - 1]) : T(0);
}

template <typename T>
T AssembledOperator<T>::unit_weight(std::size_t i) const {
  if (i < r()) return weights[i];
  if (i >= n - r()) return weights[n - 1 - i];
  return T(1);
}

template <typename T>
std::pair<std::size_t, std::size_t> AssembledOperator<T>::row_support(std::size_t i) const {
  if (i < r()) return {0, closure_width()};
  if (i >= n - r()) return {n - closure_width(), n};
  return {i - s(), i + s() + 1};
}

template <typename T>
void AssembledOperator<T>::apply(std::span<const T> v, std::span<T> out) const {
  if (v.size() != n || out.size() != n) throw UsageError("apply: vector length != n");
  const std::size_t width = closure_width();
  const std::size_t rr = r();
  const std::size_t ss = s();
  const T inv_h = T(1) / h;
  for (std::size_t i = 0; i < rr; ++i) {
    T acc(0), acc_bottom(0);
    const T* row = closure.data() + i * width;
    for (std::size_t j = 0; j < width; ++j) {
      acc += row[j] * v[j];
      acc_bottom -= row[j] * v[n - 1 - j];
    }
    out[i] = acc * inv_h;
    out[n - 1 - i] = acc_bottom * inv_h;
  }
  for (std::size_t i = rr; i < n - rr; ++i) {
    T acc(0);
    for (std::size_t m = 1; m <= ss; ++m) acc += alpha[m - 1] * (v[i + m] - v[i - m]);
    out[i] = acc * inv_h;
  }
}

template struct AssembledOperator<Rational>;
template struct AssembledOperator<double>;

namespace {

void check_grid(const SbpParameters& params, std::size_t n) {
  if (n < min_grid_size(params))
    throw UnsupportedError("grid of " + std::to_string(n) + " points is too small for " +
                           params.str() + "; need n >= 2r + 2s = " +
                           std::to_string(min_grid_size(params)));
}

}  // namespace

template <typename T>
AssembledOperator<T> assemble_from_closure(const SbpParameters& params, std::vector<T> weights,
                                           std::vector<T> closure, std::size_t n, T h) {
  params.validate();
  check_grid(params, n);
  const auto r = static_cast<std::size_t>(params.r);
  const auto s = static_cast<std::size_t>(params.s);
  if (weights.size() != r || closure.size() != r * (r + s))
    throw UsageError("assemble_from_closure: closure data has wrong shape for " + params.str());
  AssembledOperator<T> op;
  op.params = params;
  op.n = n;
  op.h = h;
  op.weights = std::move(weights);
  op.closure = std::move(closure);
  const auto stencil = central_coefficients(params.s);
  for (const auto& a : stencil.alpha) {
    if constexpr (std::is_same_v<T, double>)
      op.alpha.push_back(to_double(a));
    else
      op.alpha.push_back(a);
  }
  return op;
}

template AssembledOperator<Rational> assemble_from_closure(const SbpParameters&,
                                                           std::vector<Rational>,
                                                           std::vector<Rational>, std::size_t,
                                                           Rational);
template AssembledOperator<double> assemble_from_closure(const SbpParameters&,
                                                         std::vector<double>, std::vector<double>,
                                                         std::size_t, double);

ExactOperator assemble_exact(const ClosureManifold& manifold, std::span<const Rational> xi,
                             std::size_t n, const Rational& h) {
  check_grid(manifold.params, n);
  const auto r = static_cast<std::size_t>(manifold.params.r);
  const auto s = static_cast<std::size_t>(manifold.params.s);
  const RationalMatrix b = manifold.closure_matrix(xi);
  std::vector<Rational> closure(r * (r + s));
  for (std::size_t i = 0; i < r; ++i) {
    const Rational inv_w = 1 / manifold.norm.weights[i];
    for (std::size_t j = 0; j < r; ++j) closure[i * (r + s) + j] = b(i, j) * inv_w;
    for (std::size_t l = 0; l < s; ++l) closure[i * (r + s) + r + l] = manifold.coupling(i, l) * inv_w;
  }
  auto op = assemble_from_closure(manifold.params, manifold.norm.weights, std::move(closure), n, h);
  op.xi.assign(xi.begin(), xi.end());
  return op;
}

ExactOperator assemble_exact(const ClosureManifold& manifold, std::span<const Rational> xi,
                             std::size_t n) {
  return assemble_exact(manifold, xi, n, Rational(1, static_cast<unsigned long>(n - 1)));
}

FloatOperator assemble_float(const ClosureManifold& manifold, std::span<const double> xi,
                             std::size_t n, double h) {
  check_grid(manifold.params, n);
  if (xi.size() != manifold.dof_d()) throw UsageError("assemble_float: xi length != dof_D");
  const auto r = static_cast<std::size_t>(manifold.params.r);
  const auto s = static_cast<std::size_t>(manifold.params.s);
  std::vector<double> weights(r);
  std::vector<double> closure(r * (r + s));
  for (std::size_t i = 0; i < r; ++i) {
    weights[i] = to_double(manifold.norm.weights[i]);
    for (std::size_t j = 0; j < r; ++j) {
      double v = to_double(manifold.b0(i, j));
      for (std::size_t k = 0; k < xi.size(); ++k)
        if (manifold.basis[k](i, j) != 0) v += xi[k] * to_double(manifold.basis[k](i, j));
      closure[i * (r + s) + j] = v / weights[i];
    }
    for (std::size_t l = 0; l < s; ++l)
      closure[i * (r + s) + r + l] = to_double(manifold.coupling(i, l)) / weights[i];
  }
  auto op = assemble_from_closure(manifold.params, std::move(weights), std::move(closure), n, h);
  op.xi.assign(xi.begin(), xi.end());
  return op;
}

FloatOperator assemble_float(const ClosureManifold& manifold, std::span<const double> xi,
                             std::size_t n) {
  return assemble_float(manifold, xi, n, 1.0 / static_cast<double>(n - 1));
}

FloatOperator to_float(const ExactOperator& op) {
  FloatOperator out;
  out.params = op.params;
  out.n = op.n;
  out.h = to_double(op.h);
  for (const auto& v : op.weights) out.weights.push_back(to_double(v));
  for (const auto& v : op.closure) out.closure.push_back(to_double(v));
  for (const auto& v : op.alpha) out.alpha.push_back(to_double(v));
  for (const auto& v : op.xi) out.xi.push_back(to_double(v));
  return out;
}

template <typename T>
bool VerificationReport<T>::passes(const T& tol) const {
  if (!(min_weight > 0)) return false;
  if (sbp_residual > tol) return false;
  for (const auto& v : boundary_residual)
    if (v > tol) return false;
  for (const auto& v : interior_residual)
    if (v > tol) return false;
  return true;
}

template struct VerificationReport<Rational>;
template struct VerificationReport<double>;

template <typename T>
VerificationReport<T> verify(const AssembledOperator<T>& op) {
  VerificationReport<T> rep;
  const std::size_t n = op.n;
  const std::size_t r = op.r();

  rep.min_weight = op.weight(0);
  for (std::size_t i = 0; i < n; ++i) rep.min_weight = std::min<T>(rep.min_weight, op.weight(i));

  // P D + D^T P - Q; D is banded with half-width r + s, so nothing else can be nonzero.
  rep.sbp_residual = T(0);
  const std::size_t band = op.closure_width();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= band ? i - band : 0;
    for (std::size_t j = lo; j <= i; ++j) {
      T m = op.weight(i) * op.entry(i, j) + op.weight(j) * op.entry(j, i);
      if (i == j && i == 0) m += T(1);
      if (i == j && i == n - 1) m -= T(1);
      rep.sbp_residual = std::max<T>(rep.sbp_residual, magnitude(m));
    }
  }

  // Monomials x^k on the grid x_i = i h against k x^(k-1).
  std::vector<T> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = op.h * T(static_cast<long>(i));
  const int max_degree = std::max(op.params.t, 2 * op.params.s);
  std::vector<T> f(n, T(1)), df(n);
  std::vector<T> prev(n, T(0));  // x^(k-1)
  rep.boundary_residual.assign(static_cast<std::size_t>(op.params.t + 1), T(0));
  rep.interior_residual.assign(static_cast<std::size_t>(2 * op.params.s + 1), T(0));
  for (int k = 0; k <= max_degree; ++k) {
    if (k > 0) {
      prev = f;
      for (std::size_t i = 0; i < n; ++i) f[i] *= x[i];
    }
    op.apply(f, df);
    for (std::size_t i = 0; i < n; ++i) {
      const T exact = k == 0 ? T(0) : T(T(k) * prev[i]);
      const T err = magnitude(T(df[i] - exact));
      const bool boundary = i < r || i >= n - r;
      if (boundary && k <= op.params.t) {
        auto& slot = rep.boundary_residual[static_cast<std::size_t>(k)];
        slot = std::max<T>(slot, err);
      }
      if (!boundary && k <= 2 * op.params.s) {
        auto& slot = rep.interior_residual[static_cast<std::size_t>(k)];
        slot = std::max<T>(slot, err);
      }
    }
  }
  return rep;
}

template VerificationReport<Rational> verify(const AssembledOperator<Rational>&);
template VerificationReport<double> verify(const AssembledOperator<double>&);

}  // namespace sbp
