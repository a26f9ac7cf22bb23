// sbp: existence, construction and testing of diagonal-norm SBP operators.
//
// Exit codes: 0 success (or "exists"), 1 not found / failed run, 2 usage error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "sbp/coeffio.hpp"
#include "sbp/errors.hpp"
#include "sbp/existence.hpp"
#include "sbp/optimize.hpp"
#include "sbp/pde.hpp"

using namespace sbp;

namespace {

std::string eta_text(const Rational& eta) { return to_scientific(eta, 4); }

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct OperatorSource {
  std::string from_prefix;  // read P_/D_ files instead of building
  bool no_optimize = false;
};

void add_source_options(CLI::App* cmd, OperatorSource& src) {
  cmd->add_option("--from-prefix", src.from_prefix,
                  "Load P_s_t_r.txt / D_s_t_r.txt from this prefix instead of constructing");
  cmd->add_flag("--no-optimize", src.no_optimize, "Use xi = 0 instead of the surrogate optimum");
}

ExactOperator load_or_build(const SbpParameters& params, const OperatorSource& src) {
  if (!src.from_prefix.empty()) return read_coefficients(coefficient_paths(params, src.from_prefix));
  return select_operator(params, !src.no_optimize).exact(min_grid_size(params), Rational(1));
}

int cmd_exist(int s, int t, int r) {
  const ExistenceReport rep = exists_sbp(SbpParameters{s, t, r});
  if (!rep.exists) {
    std::cout << "not exists\n";
    if (rep.eta != -1) std::cout << "dof_P=" << rep.dof_p << " eta_exact=" << to_string(rep.eta) << "\n";
    else std::cout << "norm system inconsistent\n";
    return 1;
  }
  std::cout << "exists dof_P=" << rep.dof_p << " eta=" << eta_text(rep.eta) << "\n";
  std::cout << "eta_exact=" << to_string(rep.eta) << "\n";
  return 0;
}

int cmd_search(const std::string& mode, int s, std::optional<int> t, int max_r) {
  SearchResult res;
  if (mode == "min-r") {
    if (!t) throw UsageError("search min-r needs S and T");
    res = min_closure_search(s, *t, max_r);
  } else {
    if (t) throw UsageError("search max-t takes only S");
    res = max_boundary_order(s);
  }
  const ExistenceReport& rep = res.report;
  std::cout << "s=" << rep.params.s << " t=" << rep.params.t << " r=" << rep.params.r
            << " dof_P=" << rep.dof_p;
  if (mode == "min-r") std::cout << " dof_D=" << solve_closure(rep.params, *rep.norm).dof_d();
  std::cout << " eta=" << eta_text(rep.eta) << "\n";
  std::cout << "eta_exact=" << to_string(rep.eta) << "\n";
  return 0;
}

int cmd_build(int s, int t, int r, bool optimize, bool exact, const std::string& prefix) {
  const SbpParameters params{s, t, r};
  const SelectedOperator sel = select_operator(params, optimize);
  const ExactOperator op = sel.exact(min_grid_size(params), Rational(1));
  const auto check = verify(op);
  if (!check.passes()) throw InternalError("constructed operator fails verification");
  const auto files = coefficient_paths(params, prefix);
  write_coefficients(files, op, exact);
  std::cout << "dof_D=" << sel.manifold.dof_d();
  if (optimize)
    std::cout << " surrogate_norm=" << num(sel.optimization.norm_value)
              << " converged=" << (sel.optimization.converged ? "yes" : "no");
  std::cout << "\n" << files.p_file.string() << "\n" << files.d_file.string() << "\n";
  return 0;
}

int cmd_spectrum(const SbpParameters& params, const std::vector<std::size_t>& n_list,
                 const OperatorSource& src) {
  const FloatOperator proto = to_float(load_or_build(params, src));
  std::cout << "n,inv_h,rho,rho_h\n";
  for (std::size_t n : n_list) {
    const double h = 1.0 / static_cast<double>(n - 1);
    FloatOperator op = assemble_from_closure(params, proto.weights, proto.closure, n, h);
    const double rho = spectral_radius(op);
    std::cout << n << ',' << num(1.0 / h) << ',' << num(rho) << ',' << num(rho * h) << "\n";
  }
  return 0;
}

SbpParameters benchmark_or_explicit(int s, int t, int r) {
  if (t == 0 && r == 0) return benchmark_parameters(s);
  if (t == 0 || r == 0) throw UsageError("give both --t and --r, or neither");
  return SbpParameters{s, t, r};
}

int cmd_converge(const SbpParameters& params, const std::vector<std::size_t>& n_list,
                 bool double_only, unsigned bits, const OperatorSource& src) {
  const ExactOperator exact = load_or_build(params, src);
  const ConvergenceStudy study = double_only
                                     ? derivative_convergence(to_float(exact), n_list)
                                     : derivative_convergence_extended(exact, n_list, bits);
  std::cout << "N,error,interior_error\n";
  for (std::size_t i = 0; i < study.n_list.size(); ++i)
    std::cout << study.n_list[i] << ',' << num(study.errors[i]) << ','
              << num(study.interior_errors[i]) << "\n";
  std::cout << "# fitted_order=" << num(study.fitted_order)
            << " interior_order=" << num(study.interior_order) << "\n";
  return 0;
}

int cmd_advect(int s, int q, std::size_t n, const OperatorSource& src) {
  const SbpParameters params = benchmark_parameters(s);
  const FloatOperator proto = to_float(load_or_build(params, src));
  const AdvectionRun run = solve_advection(proto, q, n);
  write_sweep_csv_header(std::cout);
  write_sweep_csv_row(std::cout, SweepRow{s, q, n, run.final_error, run.cpu_seconds, false});
  std::cout << "# h=" << num(run.h) << " k=" << num(run.k) << " steps=" << run.steps
            << " final_time=" << num(run.final_time) << " peak_x=" << num(run.peak_x) << "\n";
  return 0;
}

int cmd_sweep(const std::vector<int>& s_list, const std::vector<int>& q_list,
              const std::vector<std::size_t>& n_list, unsigned jobs, const std::string& out_path,
              const OperatorSource& src) {
  std::map<int, FloatOperator> ops;
  for (int s : s_list) ops.emplace(s, to_float(load_or_build(benchmark_parameters(s), src)));
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw UsageError("cannot write " + out_path);
  }
  std::ostream& out = out_path.empty() ? std::cout : file;
  write_sweep_csv_header(out);
  std::size_t diverged = 0;
  const auto rows = benchmark_sweep(ops, q_list, n_list, jobs, [&](const SweepRow& row) {
    write_sweep_csv_row(out, row);
    out.flush();
  });
  for (const auto& row : rows) diverged += row.diverged;
  if (diverged) std::cerr << diverged << " run(s) diverged\n";
  return diverged ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diagonal-norm summation-by-parts operators: existence, construction, experiments"};
  app.require_subcommand(1);

  int s = 0, t = 0, r = 0;
  OperatorSource src;

  auto* exist = app.add_subcommand("exist", "Decide existence for (S, T, R)");
  exist->add_option("S", s)->required();
  exist->add_option("T", t)->required();
  exist->add_option("R", r)->required();

  std::string mode;
  std::vector<int> search_args;
  int max_r = 0;
  auto* search = app.add_subcommand("search", "min-r S T: smallest closure; max-t S: best boundary order at r = 2S");
  search->add_option("MODE", mode)->required()->check(CLI::IsMember({"min-r", "max-t"}));
  search->add_option("ARGS", search_args)->required()->expected(1, 2);
  search->add_option("--max-r", max_r, "Search cap (default 8S)");

  bool optimize = false, exact = false;
  std::string prefix;
  auto* build = app.add_subcommand("build", "Construct an operator and write P_/D_ coefficient files");
  build->add_option("S", s)->required();
  build->add_option("T", t)->required();
  build->add_option("R", r)->required();
  build->add_flag("--optimize", optimize, "Pick xi by minimizing the surrogate norm");
  build->add_flag("--exact", exact, "Write p/q rationals instead of 17-digit decimals");
  build->add_option("--out-prefix", prefix, "Prefix for the output files");

  std::vector<std::size_t> n_list{100, 200, 400, 800};
  auto* spectrum = app.add_subcommand("spectrum", "Spectral radius of D_h for several n (CSV)");
  spectrum->add_option("S", s)->required();
  spectrum->add_option("T", t)->required();
  spectrum->add_option("R", r)->required();
  spectrum->add_option("--n-list", n_list)->delimiter(',');
  add_source_options(spectrum, src);

  std::vector<std::size_t> conv_n;
  bool double_only = false;
  unsigned bits = 256;
  auto* converge = app.add_subcommand("converge", "l-infinity error of D exp(x) on [0,1] (CSV)");
  converge->add_option("--s", s)->required();
  converge->add_option("--t", t, "Boundary order (default: benchmark operator for s)");
  converge->add_option("--r", r, "Closure size (default: benchmark operator for s)");
  converge->add_option("--N", conv_n)->required()->delimiter(',');
  converge->add_flag("--double", double_only, "Evaluate in double precision");
  converge->add_option("--bits", bits, "Float precision for the default evaluation");
  add_source_options(converge, src);

  int q = 0;
  std::size_t adv_n = 0;
  auto* advect = app.add_subcommand("advect", "One SBP-SAT advection run to t = 1000 (CSV)");
  advect->add_option("--s", s)->required();
  advect->add_option("--q", q)->required();
  advect->add_option("--N", adv_n)->required();
  add_source_options(advect, src);

  std::vector<int> sweep_s{2, 3, 4, 5, 6, 7}, sweep_q{3, 4, 6, 7, 8};
  std::vector<std::size_t> sweep_n{2000, 4000, 6000, 8000, 10000, 12000, 14000};
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string out_path;
  auto* sweep = app.add_subcommand("sweep", "Advection benchmark over s, q and N (CSV)");
  sweep->add_option("--s", sweep_s)->delimiter(',');
  sweep->add_option("--q", sweep_q)->delimiter(',');
  sweep->add_option("--N", sweep_n)->delimiter(',');
  sweep->add_option("--jobs", jobs);
  sweep->add_option("--out", out_path, "CSV path (default stdout)");
  add_source_options(sweep, src);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*exist) return cmd_exist(s, t, r);
    if (*search) {
      s = search_args[0];
      std::optional<int> tt;
      if (search_args.size() > 1) tt = search_args[1];
      return cmd_search(mode, s, tt, max_r);
    }
    if (*build) return cmd_build(s, t, r, optimize, exact, prefix);
    if (*spectrum) return cmd_spectrum(SbpParameters{s, t, r}, n_list, src);
    if (*converge) return cmd_converge(benchmark_or_explicit(s, t, r), conv_n, double_only, bits, src);
    if (*advect) return cmd_advect(s, q, adv_n, src);
    if (*sweep) return cmd_sweep(sweep_s, sweep_q, sweep_n, jobs, out_path, src);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
