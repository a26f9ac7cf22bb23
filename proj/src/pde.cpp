#include "sbp/pde.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <thread>

#include "sbp/errors.hpp"

#if defined(__SSE__)
#include <xmmintrin.h>
#endif

namespace sbp {

AbScheme ab_coefficients(int q) {
  if (q < 1) throw UsageError("ab_coefficients: q must be >= 1");
  // beta_j = int_0^1 prod_{m != j} (u + m) / (m - j) du
  AbScheme ab{q, {}};
  for (int j = 0; j < q; ++j) {
    RationalVector poly{Rational(1)};  // ascending powers of u
    Rational denom = 1;
    for (int m = 0; m < q; ++m) {
      if (m == j) continue;
      RationalVector next(poly.size() + 1, Rational(0));
      for (std::size_t e = 0; e < poly.size(); ++e) {
        next[e] += poly[e] * m;
        next[e + 1] += poly[e];
      }
      poly = std::move(next);
      denom *= m - j;
    }
    Rational integral = 0;
    for (std::size_t e = 0; e < poly.size(); ++e)
      integral += poly[e] / Rational(static_cast<long>(e + 1));
    ab.beta.push_back(integral / denom);
  }
  return ab;
}

double fitted_order(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw UsageError("fitted_order: need >= 2 matching points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return -sxy / sxx;
}

namespace {

// The Gaussian tails underflow into subnormals, which are ~100x slower on
// x86; flush them to zero for the duration of a run.
class FlushSubnormals {
 public:
#if defined(__SSE__)
  FlushSubnormals() : saved_(_mm_getcsr()) { _mm_setcsr(saved_ | 0x8040); }
  ~FlushSubnormals() { _mm_setcsr(saved_); }

 private:
  unsigned saved_;
#endif
};

void fit_orders(ConvergenceStudy& study) {
  if (study.n_list.size() < 2) return;
  std::vector<double> x(study.n_list.begin(), study.n_list.end());
  study.fitted_order = fitted_order(x, study.errors);
  study.interior_order = fitted_order(x, study.interior_errors);
}

FloatOperator rescaled(const FloatOperator& prototype, std::size_t n, double h) {
  return assemble_from_closure(prototype.params, prototype.weights, prototype.closure, n, h);
}

}  // namespace

ConvergenceStudy derivative_convergence(const FloatOperator& prototype,
                                        std::span<const std::size_t> n_list) {
  ConvergenceStudy study;
  study.params = prototype.params;
  study.n_list.assign(n_list.begin(), n_list.end());
  const std::size_t r = prototype.r();
  for (std::size_t n : n_list) {
    const double h = 1.0 / static_cast<double>(n - 1);
    const FloatOperator op = rescaled(prototype, n, h);
    std::vector<double> f(n), df(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = std::exp(static_cast<double>(i) * h);
    op.apply(f, df);
    double all = 0, interior = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double err = std::abs(df[i] - f[i]);
      all = std::max(all, err);
      if (i >= r && i < n - r) interior = std::max(interior, err);
    }
    study.errors.push_back(all);
    study.interior_errors.push_back(interior);
  }
  fit_orders(study);
  return study;
}

namespace {

mpf_class exp_series(const mpf_class& x, unsigned bits) {
  mpf_class sum(1, bits), term(1, bits), eps(1, bits);
  mpf_div_2exp(eps.get_mpf_t(), eps.get_mpf_t(), bits + 8);
  for (unsigned k = 1; abs(term) > eps; ++k) {
    term *= x;
    term /= k;
    sum += term;
  }
  return sum;
}

}  // namespace

ConvergenceStudy derivative_convergence_extended(const ExactOperator& prototype,
                                                 std::span<const std::size_t> n_list,
                                                 unsigned bits) {
  ConvergenceStudy study;
  study.params = prototype.params;
  study.n_list.assign(n_list.begin(), n_list.end());
  const std::size_t r = prototype.r();
  for (std::size_t n : n_list) {
    const ExactOperator op = assemble_from_closure(prototype.params, prototype.weights,
                                                   prototype.closure, n, Rational(1));
    const std::size_t width = op.closure_width();
    std::vector<mpf_class> closure, alpha;
    for (const auto& v : op.closure) closure.emplace_back(v, bits);
    for (const auto& v : op.alpha) alpha.emplace_back(v, bits);
    const mpf_class inv_h(static_cast<double>(n - 1), bits);
    std::vector<mpf_class> f;
    for (std::size_t i = 0; i < n; ++i) {
      Rational x(static_cast<long>(i), static_cast<unsigned long>(n - 1));
      x.canonicalize();
      f.push_back(exp_series(mpf_class(x, bits), bits));
    }

    double all = 0, interior = 0;
    mpf_class acc(0, bits), err(0, bits);
    for (std::size_t i = 0; i < n; ++i) {
      acc = 0;
      if (i < r) {
        for (std::size_t j = 0; j < width; ++j) acc += closure[i * width + j] * f[j];
      } else if (i >= n - r) {
        const std::size_t ii = n - 1 - i;
        for (std::size_t j = 0; j < width; ++j) acc -= closure[ii * width + j] * f[n - 1 - j];
      } else {
        for (std::size_t m = 1; m <= op.s(); ++m) acc += alpha[m - 1] * (f[i + m] - f[i - m]);
      }
      err = acc * inv_h - f[i];
      const double e = std::abs(err.get_d());
      all = std::max(all, e);
      if (i >= r && i < n - r) interior = std::max(interior, e);
    }
    study.errors.push_back(all);
    study.interior_errors.push_back(interior);
  }
  fit_orders(study);
  return study;
}

CflPair cfl_lookup(int s, int q) {
  static const std::map<int, double> cfl1{{2, 1.4}, {3, 1.6}, {4, 1.8}, {5, 1.9}, {6, 2.0}, {7, 2.1}};
  static const std::map<int, double> cfl2{{3, 1.39}, {4, 2.38}, {6, 8.93}, {7, 17.5}, {8, 34.1}};
  const auto a = cfl1.find(s);
  const auto b = cfl2.find(q);
  if (a == cfl1.end() || b == cfl2.end())
    throw UnsupportedError("no CFL multipliers for s=" + std::to_string(s) + ", q=" + std::to_string(q));
  return {a->second, b->second};
}

SbpParameters benchmark_parameters(int s) {
  static const std::map<int, int> r{{2, 4}, {3, 6}, {4, 8}, {5, 11}, {6, 15}, {7, 19}};
  const auto it = r.find(s);
  if (it == r.end()) throw UnsupportedError("no benchmark operator for s=" + std::to_string(s));
  return {s, s, it->second};
}

double boundary_data(double t) {
  const double a = 16.0 * std::log(10.0) / 100.0;
  return std::exp(-a * (t - 10.0) * (t - 10.0));
}

AdvectionRun solve_advection(const FloatOperator& prototype, int q, std::size_t n,
                             const AdvectionOptions& options) {
  const auto [cfl1, cfl2] = cfl_lookup(prototype.params.s, q);
  AdvectionRun run;
  run.params = prototype.params;
  run.q = q;
  run.n = n;
  run.h = options.length / static_cast<double>(n - 1);
  run.k = run.h / (cfl1 * cfl2 * options.step_divisor);
  const double span = options.end_time - options.start_time;
  run.steps = static_cast<std::size_t>(std::llround(span / run.k));
  const FloatOperator op = rescaled(prototype, n, run.h);

  std::vector<double> beta;
  for (const auto& b : ab_coefficients(q).beta) beta.push_back(to_double(b));
  const double sat = 1.0 / op.weight(0);
  const double k = run.k;
  const double t0 = options.start_time;
  auto exact = [&](std::size_t i, double t) { return boundary_data(t - static_cast<double>(i) * run.h); };
  auto rhs = [&](const std::vector<double>& v, double t, std::vector<double>& out) {
    op.apply(v, out);
    for (double& x : out) x = -x;
    out[0] -= sat * (v[0] - boundary_data(t));
  };

  // history[j] holds F at t_{m-j}; seeded from the exact solution.
  std::vector<std::vector<double>> history(static_cast<std::size_t>(q), std::vector<double>(n));
  std::vector<double> v(n), seed(n);
  for (int j = 0; j < q; ++j) {
    const double t = t0 - j * k;
    for (std::size_t i = 0; i < n; ++i) seed[i] = exact(i, t);
    rhs(seed, t, history[static_cast<std::size_t>(j)]);
  }
  for (std::size_t i = 0; i < n; ++i) v[i] = exact(i, t0);

  const FlushSubnormals ftz;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t m = 0; m < run.steps; ++m) {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0;
      for (int j = 0; j < q; ++j) acc += beta[static_cast<std::size_t>(j)] * history[static_cast<std::size_t>(j)][i];
      v[i] += k * acc;
    }
    std::rotate(history.rbegin(), history.rbegin() + 1, history.rend());
    rhs(v, t0 + static_cast<double>(m + 1) * k, history[0]);
    if (m % 256 == 0 || m + 1 == run.steps) {
      double peak = 0;
      for (double x : v) peak = std::max(peak, std::abs(x));
      if (!(peak <= 1e3))
        throw DivergenceError("advection run " + run.params.str() + " AB" + std::to_string(q) +
                              " n=" + std::to_string(n) + " diverged at step " + std::to_string(m + 1));
    }
  }
  run.cpu_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  run.final_time = t0 + static_cast<double>(run.steps) * k;
  double peak = -1;
  for (std::size_t i = 0; i < n; ++i) {
    const double err = std::abs(v[i] - exact(i, run.final_time));
    if (err > run.final_error) {
      run.final_error = err;
      run.error_x = static_cast<double>(i) * run.h;
    }
    if (std::abs(v[i]) > peak) {
      peak = std::abs(v[i]);
      run.peak_x = static_cast<double>(i) * run.h;
    }
  }
  return run;
}

std::vector<SweepRow> benchmark_sweep(const std::map<int, FloatOperator>& operators,
                                      std::span<const int> q_list,
                                      std::span<const std::size_t> n_list, unsigned jobs,
                                      const std::function<void(const SweepRow&)>& on_row) {
  std::vector<SweepRow> rows;
  for (const auto& [s, op] : operators)
    for (int q : q_list)
      for (std::size_t n : n_list) rows.push_back(SweepRow{s, q, n, 0.0, 0.0, false});

  std::atomic<std::size_t> next{0};
  std::mutex report;
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      SweepRow& row = rows[i];
      try {
        const AdvectionRun run = solve_advection(operators.at(row.s), row.q, row.n);
        row.final_error = run.final_error;
        row.cpu_seconds = run.cpu_seconds;
      } catch (const DivergenceError&) {
        row.diverged = true;
        row.final_error = std::numeric_limits<double>::infinity();
      }
      if (on_row) {
        std::lock_guard lock(report);
        on_row(row);
      }
    }
  };
  jobs = std::max(1u, jobs);
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return rows;
}

void write_sweep_csv_header(std::ostream& out) { out << "s,q,N,final_error,cpu_seconds\n"; }

void write_sweep_csv_row(std::ostream& out, const SweepRow& row) {
  char err[40], cpu[40];
  std::snprintf(err, sizeof err, "%.17g", row.final_error);
  std::snprintf(cpu, sizeof cpu, "%.17g", row.cpu_seconds);
  out << row.s << ',' << row.q << ',' << row.n << ',' << err << ',' << cpu << '\n';
}

double time_to_tolerance(std::span<const SweepRow> rows, int s, int q, double tol) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& row : rows)
    if (row.s == s && row.q == q && !row.diverged && row.final_error <= tol)
      best = std::min(best, row.cpu_seconds);
  return best;
}

}  // namespace sbp
