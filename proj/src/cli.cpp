#include "dmg/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "dmg/analysis.hpp"
#include "dmg/cycle.hpp"
#include "dmg/tune.hpp"

namespace dmg::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Selectors {
  int dim = 2;
  int n = 0;
  std::string scheme = "diagonal";
  int order = 2;
  std::vector<double> relax;
  int levels = 0;
};

void add_selectors(CLI::App& cmd, Selectors& s) {
  cmd.add_option("--dim", s.dim, "Dimension")->check(CLI::IsMember({2, 3}));
  cmd.add_option("--n", s.n, "Grid points per side, 2^k+1 (default 65 in 2D, 17 in 3D)");
  cmd.add_option("--scheme", s.scheme, "Hierarchy")->check(CLI::IsMember({"diagonal", "usual"}));
  cmd.add_option("--order", s.order, "Residual order")->check(CLI::IsMember({2, 4}));
  cmd.add_option("--relax", s.relax, "Relaxation parameters, comma separated")->delimiter(',');
  cmd.add_option("--levels", s.levels, "Number of doublings L (default: deepest)");
}

int default_n(int dim) { return dim == 2 ? 65 : 17; }

CycleParams make_params(const Selectors& s) {
  CycleParams params;
  params.scheme = s.scheme == "usual" ? Scheme::Conventional : Scheme::Diagonal;
  params.dim = s.dim;
  params.residual_order = s.order;
  if (!s.relax.empty()) {
    if (s.relax.size() != params.relax_count()) {
      throw UsageError("--relax expects " + std::to_string(params.relax_count()) + " value(s) for " +
                       params.describe());
    }
    params = params.with_relax(s.relax);
  }
  params.validate();
  return params;
}

Hierarchy make_hierarchy(const Selectors& s, int n) {
  const int deepest = max_doublings(n);
  if (deepest < 1) throw UsageError("invalid grid size " + std::to_string(n) + " (need 2^k+1 with k >= 2)");
  return build_hierarchy(s.dim, n, s.levels > 0 ? s.levels : deepest,
                         s.scheme == "usual" ? Scheme::Conventional : Scheme::Diagonal);
}

std::string fmt(double x, int digits = 6) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + fmt(v[i]);
  return out;
}

void print_report(std::ostream& out, const ConvergenceReport& r) {
  out << "config: " << r.config << "\n"
      << "relax: " << join(r.relax) << "\n"
      << "rho: " << fmt(r.rho) << "\n"
      << "flops per iteration: " << fmt(r.flops_per_iter) << "N\n"
      << "flops per digit: " << format_per_digit(r.flops_per_digit) << "\n";
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path);
  if (!file) throw UsageError("cannot write " + path);
  file << text;
}

// u* = prod sin(pi x) vanishes on the boundary; f = -dim pi^2 u*.
double manufactured_u(const Hierarchy& h, int i, int j, int k) {
  const double pi = std::numbers::pi;
  double u = std::sin(pi * i * h.h()) * std::sin(pi * j * h.h());
  if (h.dim() == 3) u *= std::sin(pi * k * h.h());
  return u;
}

int run_solve(const Selectors& s, const std::string& rhs_kind, const std::string& rhs_file, double tol,
              int max_iter, const std::string& out_path, bool n_given, std::ostream& out, std::ostream& err) {
  Selectors sel = s;
  GridData data;
  if (rhs_kind == "file") {
    if (rhs_file.empty()) throw UsageError("--rhs file needs --rhs-file <path>");
    std::ifstream in(rhs_file);
    if (!in) throw UsageError("cannot read " + rhs_file);
    data = read_grid_csv(in);
    if (n_given && sel.n != data.n) throw UsageError("--n disagrees with the size in " + rhs_file);
    sel.dim = data.dim;
    sel.n = data.n;
  }
  const CycleParams params = make_params(sel);
  const Hierarchy hierarchy = make_hierarchy(sel, sel.n);

  Field f(hierarchy.finest(), hierarchy.n());
  if (rhs_kind == "file") {
    f = to_field(data, hierarchy);
  } else {
    const double scale = -hierarchy.dim() * std::numbers::pi * std::numbers::pi;
    fill_interior(f, hierarchy, [&](int i, int j, int k) { return scale * manufactured_u(hierarchy, i, j, k); });
  }

  const SolveResult result = solve(f, hierarchy, params, tol, max_iter);
  out << "config: " << params.describe() << "\n"
      << "n: " << hierarchy.n() << "  levels: " << hierarchy.depth() << "\n"
      << "iterations: " << result.iterations << "\n"
      << "final residual: " << fmt(result.history.back(), 4) << "\n";
  if (result.history.size() > 1 && result.history.front() > 0.0) {
    const double rate = std::pow(result.history.back() / result.history.front(), 1.0 / result.iterations);
    out << "mean reduction per cycle: " << fmt(rate, 4) << "\n";
  }
  if (rhs_kind == "manufactured") {
    double error = 0.0;
    for (const Index& idx : interior_nodes(hierarchy.finest(), hierarchy)) {
      error = std::max(error, std::abs(result.u(idx) - manufactured_u(hierarchy, idx[0], idx[1], idx[2])));
    }
    out << "max error vs exact: " << fmt(error, 4) << "\n";
  }
  if (!out_path.empty()) {
    std::ofstream file(out_path);
    if (!file) throw UsageError("cannot write " + out_path);
    write_grid_csv(file, result.u);
  }
  if (result.diverged) {
    err << "error: solve diverged for " << params.describe() << "\n";
    return kDivergence;
  }
  if (!result.converged) {
    err << "error: no convergence within " << max_iter << " iterations\n";
    return kDivergence;
  }
  return kOk;
}

TableConfig measure(TableConfig c, bool tuned, const TuneOptions& tune_opts, int iters) {
  const Hierarchy hierarchy = build_hierarchy(c.params.dim, c.n, max_doublings(c.n), c.params.scheme);
  c.rho0 = estimate_rate(c.params, hierarchy, iters, tune_opts.seed).rho;
  if (tuned) {
    const TuneResult t = tune_params(c.params, hierarchy, c.params.relax(), tune_opts);
    c.relax = t.params.relax();
    c.rho = estimate_rate(t.params, hierarchy, iters, tune_opts.seed).rho;
  }
  return c;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multigrid Poisson solver on diagonally oriented grids", "dmg_cli"};
  app.require_subcommand(1);

  Selectors sel;
  std::string rhs_kind = "manufactured";
  std::string rhs_file;
  std::string out_path;
  std::string csv_path;
  double tol = 1e-10;
  int max_iter = 100;
  int iters = 60;
  std::uint64_t seed = 1;
  std::vector<double> x0;
  int max_evals = 200;
  bool warm = false;
  int which = 1;

  auto* solve_cmd = app.add_subcommand("solve", "Solve a Poisson problem with V-cycles");
  add_selectors(*solve_cmd, sel);
  solve_cmd->add_option("--rhs", rhs_kind, "Right-hand side")->check(CLI::IsMember({"manufactured", "file"}));
  solve_cmd->add_option("--rhs-file", rhs_file, "Grid CSV holding f");
  solve_cmd->add_option("--tol", tol, "Relative residual tolerance");
  solve_cmd->add_option("--max-iter", max_iter, "Iteration limit");
  solve_cmd->add_option("--out", out_path, "Write the solution grid CSV here");

  auto* rate_cmd = app.add_subcommand("rate", "Estimate the asymptotic convergence factor");
  add_selectors(*rate_cmd, sel);
  rate_cmd->add_option("--iters", iters, "Power iterations (>= 20)");
  rate_cmd->add_option("--seed", seed, "Random start seed");
  rate_cmd->add_option("--csv", csv_path, "Also write the report as CSV");

  auto* tune_cmd = app.add_subcommand("tune", "Minimise the convergence factor over the relaxation parameters");
  add_selectors(*tune_cmd, sel);
  tune_cmd->add_option("--x0", x0, "Start point, comma separated (default all ones)")->delimiter(',');
  tune_cmd->add_option("--max-evals", max_evals, "Objective evaluation limit");
  tune_cmd->add_option("--iters", iters, "Power iterations per evaluation (>= 20)");
  tune_cmd->add_option("--seed", seed, "Random start seed");
  tune_cmd->add_flag("--warm", warm, "Warm-start from successively coarser grids");
  tune_cmd->add_option("--csv", csv_path, "Also write the tuned report as CSV");

  auto* table_cmd = app.add_subcommand("table", "Regenerate a comparison table");
  table_cmd->add_option("--which", which, "Table number")->check(CLI::IsMember({1, 2, 3}));
  table_cmd->add_option("--iters", iters, "Power iterations (>= 20)");
  table_cmd->add_option("--seed", seed, "Random start seed");
  table_cmd->add_option("--csv", csv_path, "Also write the measured reports as CSV");

  auto* oracle_cmd = app.add_subcommand("oracle", "Compare power iteration with the dense eigenvalue");
  add_selectors(*oracle_cmd, sel);
  int oracle_iters = 200;
  oracle_cmd->add_option("--iters", oracle_iters, "Power iterations (>= 20)");
  oracle_cmd->add_option("--seed", seed, "Random start seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  const auto& n_opt_owner = *app.get_subcommands().front();
  const bool n_given = n_opt_owner.get_option_no_throw("--n") != nullptr && n_opt_owner.count("--n") > 0;

  try {
    if (sel.n == 0) sel.n = default_n(sel.dim);
    if (iters < 20 || oracle_iters < 20) throw UsageError("--iters must be at least 20");

    if (solve_cmd->parsed()) {
      if (!(tol > 0.0) || max_iter < 1) throw UsageError("--tol must be positive and --max-iter at least 1");
      return run_solve(sel, rhs_kind, rhs_file, tol, max_iter, out_path, n_given, out, err);
    }

    if (rate_cmd->parsed()) {
      const ConvergenceReport r = estimate_rate(make_params(sel), make_hierarchy(sel, sel.n), iters, seed);
      print_report(out, r);
      if (!csv_path.empty()) write_file(csv_path, render_csv({r}));
      return kOk;
    }

    if (tune_cmd->parsed()) {
      const CycleParams base = make_params(sel);
      const std::vector<double> start = x0.empty() ? base.relax() : x0;
      if (start.size() != base.relax_count()) {
        throw UsageError("--x0 expects " + std::to_string(base.relax_count()) + " value(s)");
      }
      TuneOptions opts;
      opts.rate_iters = iters;
      opts.seed = seed;
      opts.simplex.max_evals = max_evals;
      const TuneResult t = warm ? tune_params_warm(base, sel.n, start, opts)
                                : tune_params(base, make_hierarchy(sel, sel.n), start, opts);
      const ConvergenceReport r = estimate_rate(t.params, make_hierarchy(sel, sel.n), iters, seed);
      out << "start: " << join(start) << "  rho " << fmt(t.rho_start) << "\n"
          << "evaluations: " << t.evals << "\n";
      print_report(out, r);
      if (!csv_path.empty()) write_file(csv_path, render_csv({r}));
      return kOk;
    }

    if (table_cmd->parsed()) {
      TuneOptions opts;
      opts.seed = seed;
      std::vector<TableConfig> configs = reference_table_configs(which);
      std::vector<ConvergenceReport> reports;
      for (TableConfig& c : configs) {
        c = measure(c, which != 2, opts, iters);
        ConvergenceReport r;
        r.config = c.params.describe();
        r.flops_per_iter = flops_per_cycle(c.params).value();
        r.relax = c.relax.empty() ? c.params.relax() : c.relax;
        r.rho = c.relax.empty() ? c.rho0 : c.rho;
        r.flops_per_digit = flops_per_digit(r.flops_per_iter, r.rho);
        reports.push_back(r);
      }
      const int n = configs.front().n;
      out << "Table " << which << " (" << n << (configs.front().params.dim == 2 ? "^2" : "^3")
          << " grid, measured, reference values in parentheses)\n"
          << render_text(make_table(configs));
      if (!csv_path.empty()) write_file(csv_path, render_csv(reports));
      return kOk;
    }

    if (oracle_cmd->parsed()) {
      if (!n_given) sel.n = sel.dim == 2 ? 9 : 5;
      const CycleParams params = make_params(sel);
      const Hierarchy hierarchy = make_hierarchy(sel, sel.n);
      const double power = estimate_rate(params, hierarchy, oracle_iters, seed).rho;
      const double dense = dominant_eigenvalue(assemble_error_operator(params, hierarchy));
      out << "config: " << params.describe() << "\n"
          << "power iteration rho: " << fmt(power, 8) << "\n"
          << "dense eigenvalue:    " << fmt(dense, 8) << "\n"
          << "difference: " << fmt(std::abs(power - dense), 3) << "\n";
      return kOk;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

GridData read_grid_csv(std::istream& in) {
  GridData data;
  std::string line;
  auto next_line = [&]() {
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };
  if (!next_line()) throw std::invalid_argument("grid CSV is empty");
  if (line == "dim,n" && !next_line()) throw std::invalid_argument("grid CSV has no size line");
  {
    std::istringstream head(line);
    char comma = 0;
    if (!(head >> data.dim >> comma >> data.n) || comma != ',') {
      throw std::invalid_argument("grid CSV size line must be 'dim,n', got '" + line + "'");
    }
  }
  if ((data.dim != 2 && data.dim != 3) || max_doublings(data.n) < 1) {
    throw std::invalid_argument("grid CSV has invalid dim or n");
  }
  const std::size_t total = data.dim == 2 ? static_cast<std::size_t>(data.n) * data.n
                                          : static_cast<std::size_t>(data.n) * data.n * data.n;
  data.values.reserve(total);
  while (next_line()) {
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0) throw std::invalid_argument("grid CSV has a bad value '" + cell + "'");
      data.values.push_back(v);
    }
  }
  if (data.values.size() != total) {
    throw std::invalid_argument("grid CSV has " + std::to_string(data.values.size()) + " values, expected " +
                                std::to_string(total));
  }
  return data;
}

void write_grid_csv(std::ostream& out, const Field& field) {
  const int n = field.n();
  out << field.dim() << "," << n << "\n" << std::setprecision(17);
  const int kmax = field.dim() == 3 ? n : 1;
  for (int k = 0; k < kmax; ++k) {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) out << (i ? "," : "") << field(i, j, k);
      out << "\n";
    }
  }
}

Field to_field(const GridData& data, const Hierarchy& hierarchy) {
  if (data.dim != hierarchy.dim() || data.n != hierarchy.n()) {
    throw std::invalid_argument("grid data does not match the hierarchy size");
  }
  Field f(hierarchy.finest(), hierarchy.n());
  for (const Index& idx : interior_nodes(hierarchy.finest(), hierarchy)) {
    f(idx) = data.values[f.index(idx[0], idx[1], idx[2])];
  }
  return f;
}

}  // namespace dmg::cli
