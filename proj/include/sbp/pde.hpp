#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <ostream>
#include <span>
#include <vector>

#include "sbp/construct.hpp"

namespace sbp {

/// v_{n+1} = v_n + k sum_j beta_j F(t_{n-j}, v_{n-j}), j = 0..q-1.
struct AbScheme {
  int q = 1;
  RationalVector beta;
};

AbScheme ab_coefficients(int q);

struct ConvergenceStudy {
  SbpParameters params;
  std::vector<std::size_t> n_list;
  std::vector<double> errors;           // max over the grid of |D f - f'|, f = exp on [0,1]
  std::vector<double> interior_errors;  // same over rows r .. n-r-1
  double fitted_order = 0.0;            // -slope of log(error) against log(n)
  double interior_order = 0.0;
};

/// `prototype` supplies the h = 1 closure; it is reassembled for every n.
ConvergenceStudy derivative_convergence(const FloatOperator& prototype,
                                        std::span<const std::size_t> n_list);

/// Same study evaluated with `bits`-bit floats on the exact coefficients, so
/// the fit is not cut short by double roundoff (~1e-13 at these sizes).
ConvergenceStudy derivative_convergence_extended(const ExactOperator& prototype,
                                                 std::span<const std::size_t> n_list,
                                                 unsigned bits = 256);

/// Least-squares slope of log(y) against log(x), negated.
double fitted_order(std::span<const double> x, std::span<const double> y);

struct CflPair {
  double cfl1 = 0.0;
  double cfl2 = 0.0;
};

/// CFL multipliers for the advection benchmark, s in 2..7 and q in {3,4,6,7,8}.
CflPair cfl_lookup(int s, int q);

/// Operators used by the advection benchmark: t = s, smallest r except r = 15 for s = 6.
SbpParameters benchmark_parameters(int s);

/// Inflow data g(t) = exp(-a (t - 10)^2), a = 16 ln(10) / 100.
double boundary_data(double t);

struct AdvectionRun {
  SbpParameters params;
  int q = 0;
  std::size_t n = 0;
  double h = 0.0;
  double k = 0.0;            // h / (cfl1 cfl2)
  std::size_t steps = 0;
  double final_time = 0.0;   // steps * k, the step count rounded to reach 1000
  double final_error = 0.0;  // max over the grid of |v - g(final_time - x)|
  double error_x = 0.0;      // grid point where final_error is attained
  double peak_x = 0.0;       // grid point of max |v|
  double cpu_seconds = 0.0;  // integration loop only
};

struct AdvectionOptions {
  double length = 1000.0;
  double end_time = 1000.0;
  double start_time = 0.0;  // v starts from the exact solution at start_time
  /// Divide the CFL time step further (convergence-in-k studies).
  double step_divisor = 1.0;
};

/// u_t + u_x = 0 on (0, length) with SAT inflow at x = 0 and ABq in time.
/// Throws DivergenceError once max|v| exceeds 1e3.
AdvectionRun solve_advection(const FloatOperator& prototype, int q, std::size_t n,
                             const AdvectionOptions& options = {});

struct SweepRow {
  int s = 0;
  int q = 0;
  std::size_t n = 0;
  double final_error = 0.0;  // +inf for diverged runs
  double cpu_seconds = 0.0;
  bool diverged = false;
};

/// Every (s, q, n) combination over the supplied operators (keyed by s).
/// Runs are spread over `jobs` threads; rows come back in (s, q, n) order
/// and `on_row` is called from one thread at a time.
std::vector<SweepRow> benchmark_sweep(const std::map<int, FloatOperator>& operators,
                                      std::span<const int> q_list,
                                      std::span<const std::size_t> n_list, unsigned jobs = 1,
                                      const std::function<void(const SweepRow&)>& on_row = {});

void write_sweep_csv_header(std::ostream& out);
void write_sweep_csv_row(std::ostream& out, const SweepRow& row);

/// Cheapest cpu time at which the (s, q) series reaches final_error <= tol,
/// or +inf when no run does.
double time_to_tolerance(std::span<const SweepRow> rows, int s, int q, double tol);

}  // namespace sbp
