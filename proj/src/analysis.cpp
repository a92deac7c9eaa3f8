#include "dmg/analysis.hpp"

#include <charconv>
#include <cmath>
#include <complex>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>

namespace dmg {

double flops_per_digit(double flops_per_iter, double rho) {
  if (!std::isfinite(rho) || rho >= 1.0) return std::numeric_limits<double>::infinity();
  if (rho <= 0.0) return 0.0;
  return flops_per_iter / (-std::log10(rho));
}

namespace {

constexpr int kArnoldiSteps = 32;

// Arnoldi on the error map from the current iterate. Returns the largest
// |theta| over Ritz values whose residual is below 5e-2 |theta|, or -1 when
// none qualifies.
double arnoldi_radius(const VCycle& cycle, const Field& rhs, const Field& start) {
  using Vec = Eigen::Map<const Eigen::VectorXd>;
  const auto as_vec = [](const Field& f) { return Vec(f.data(), static_cast<Eigen::Index>(f.size())); };

  std::vector<Field> basis{start};
  const double start_norm = as_vec(start).norm();
  if (!(start_norm > 0.0)) return -1.0;
  for (double& x : basis[0].values()) x /= start_norm;

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(kArnoldiSteps + 1, kArnoldiSteps);
  int steps = 0;
  bool invariant = false;
  FlopLedger ledger;
  for (int j = 0; j < kArnoldiSteps; ++j) {
    Field w = cycle.apply(basis[static_cast<std::size_t>(j)], rhs, ledger);
    Eigen::Map<Eigen::VectorXd> wv(w.data(), static_cast<Eigen::Index>(w.size()));
    const double scale = wv.norm();
    if (!std::isfinite(scale)) return -1.0;
    // Two passes of modified Gram-Schmidt.
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i <= j; ++i) {
        const auto q = as_vec(basis[static_cast<std::size_t>(i)]);
        const double c = q.dot(wv);
        h(i, j) += c;
        wv -= c * q;
      }
    }
    steps = j + 1;
    const double next = wv.norm();
    h(j + 1, j) = next;
    if (next <= 1e-12 * scale) {
      invariant = true;
      break;
    }
    wv /= next;
    basis.push_back(std::move(w));
  }

  const Eigen::MatrixXd hm = h.topLeftCorner(steps, steps);
  const Eigen::EigenSolver<Eigen::MatrixXd> solver(hm);
  if (solver.info() != Eigen::Success) return -1.0;
  const double tail = invariant ? 0.0 : h(steps, steps - 1);
  double best = -1.0;
  for (Eigen::Index i = 0; i < steps; ++i) {
    const std::complex<double> theta = solver.eigenvalues()(i);
    const Eigen::VectorXcd y = solver.eigenvectors().col(i).normalized();
    const double residual = tail * std::abs(y(steps - 1));
    if (std::abs(theta) > best && residual <= 5e-2 * std::abs(theta)) best = std::abs(theta);
  }
  return best;
}

}  // namespace

ConvergenceReport estimate_rate(const CycleParams& params, const Hierarchy& hierarchy, int iters, std::uint64_t seed) {
  if (iters < 20) throw std::invalid_argument("estimate_rate needs at least 20 iterations");
  const VCycle cycle(hierarchy, params);

  ConvergenceReport report;
  report.config = params.describe();
  report.relax = params.relax();
  report.flops_per_iter = flops_per_cycle(params).value();

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Field u = cycle.make_field();
  fill_interior(u, hierarchy, [&](int, int, int) { return dist(rng); });
  const Field rhs = cycle.prepare_rhs(cycle.make_field());

  FlopLedger ledger;
  for (double norm = u.max_abs(); report.samples.size() < static_cast<std::size_t>(iters);) {
    for (double& x : u.values()) x /= norm;
    u = cycle.apply(u, rhs, ledger);
    norm = u.max_abs();
    report.samples.push_back(norm);
    if (!std::isfinite(norm) || norm == 0.0) break;
  }

  const std::size_t window = std::min<std::size_t>(10, report.samples.size());
  double log_sum = 0.0;
  for (std::size_t i = report.samples.size() - window; i < report.samples.size(); ++i) {
    log_sum += std::log(report.samples[i]);
  }
  report.rho_window = std::exp(log_sum / static_cast<double>(window));
  if (std::isnan(report.rho_window)) report.rho_window = std::numeric_limits<double>::infinity();
  report.rho = report.rho_window;
  if (std::isfinite(report.rho) && report.rho > 0.0 && report.samples.size() == static_cast<std::size_t>(iters)) {
    const double ritz = arnoldi_radius(cycle, rhs, u);
    if (ritz >= 0.0) report.rho = ritz;
  }
  report.divergent = !(report.rho < 1.0);
  report.flops_per_digit = flops_per_digit(report.flops_per_iter, report.rho);
  return report;
}

Eigen::MatrixXd assemble_error_operator(const CycleParams& params, const Hierarchy& hierarchy) {
  const auto nodes = interior_nodes(hierarchy.finest(), hierarchy);
  if (nodes.size() > 5000) {
    throw std::invalid_argument("error operator assembly is limited to 5000 unknowns, got " +
                                std::to_string(nodes.size()));
  }
  const VCycle cycle(hierarchy, params);
  const Field rhs = cycle.prepare_rhs(cycle.make_field());
  const auto count = static_cast<Eigen::Index>(nodes.size());
  Eigen::MatrixXd matrix(count, count);
  for (Eigen::Index k = 0; k < count; ++k) {
    Field e = cycle.make_field();
    e(nodes[static_cast<std::size_t>(k)]) = 1.0;
    FlopLedger ledger;
    const Field image = cycle.apply(e, rhs, ledger);
    for (Eigen::Index i = 0; i < count; ++i) matrix(i, k) = image(nodes[static_cast<std::size_t>(i)]);
  }
  return matrix;
}

double dominant_eigenvalue(const Eigen::MatrixXd& matrix) {
  if (matrix.rows() != matrix.cols()) throw std::invalid_argument("dominant_eigenvalue needs a square matrix");
  if (matrix.size() == 0) return 0.0;
  const Eigen::EigenSolver<Eigen::MatrixXd> solver(matrix, false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalue computation failed");
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

namespace {

double measured_per_digit(double per_iter, double rho) {
  return std::isnan(rho) ? rho : flops_per_digit(per_iter, rho);
}

TableConfig table_config(Scheme scheme, int dim, int order, double ref_rho0, double ref_rho,
                         std::vector<double> ref_relax) {
  TableConfig c;
  c.params.scheme = scheme;
  c.params.dim = dim;
  c.params.residual_order = order;
  c.n = dim == 2 ? 65 : 17;
  c.ref_rho0 = ref_rho0;
  c.ref_rho = ref_rho;
  c.ref_relax = std::move(ref_relax);
  return c;
}

}  // namespace

std::vector<TableConfig> reference_table_configs(int which) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  constexpr auto D = Scheme::Diagonal;
  constexpr auto U = Scheme::Conventional;
  switch (which) {
    case 1:
      return {table_config(D, 2, 2, 0.099, 0.052, {1.052}), table_config(U, 2, 2, 0.340, 0.260, {1.121}),
              table_config(D, 2, 4, 0.333, 0.200, {1.200}), table_config(U, 2, 4, 0.343, 0.216, {1.216})};
    case 2:
      return {table_config(D, 3, 2, 0.140, nan, {}), table_config(U, 3, 2, 0.477, nan, {}),
              table_config(D, 3, 4, 0.659, nan, {}), table_config(U, 3, 4, 0.651, nan, {})};
    case 3:
      return {table_config(D, 3, 2, 0.140, 0.043, {1.11, 1.42, 1.08, 0.99}),
              table_config(U, 3, 2, 0.477, 0.31, {1.30}),
              table_config(D, 3, 4, 0.659, 0.39, {0.91, 0.80, 0.70, 1.77}),
              table_config(U, 3, 4, 0.651, 0.41, {1.70})};
    default:
      throw std::invalid_argument("table must be 1, 2 or 3");
  }
}

std::vector<TableRow> make_table(const std::vector<TableConfig>& configs) {
  std::vector<TableRow> rows;
  rows.reserve(configs.size());
  for (const TableConfig& c : configs) {
    TableRow row;
    row.config = c.params.describe();
    row.per_iter = flops_per_cycle(c.params);
    row.rho0 = c.rho0;
    row.per_digit0 = measured_per_digit(row.per_iter.value(), c.rho0);
    row.relax = c.relax;
    row.rho = c.rho;
    row.per_digit = measured_per_digit(row.per_iter.value(), c.rho);
    row.ref_rho0 = c.ref_rho0;
    row.ref_rho = c.ref_rho;
    row.ref_relax = c.ref_relax;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_per_digit(double per_digit) {
  if (std::isnan(per_digit)) return "-";
  if (!std::isfinite(per_digit)) return "div";
  std::ostringstream os;
  os << std::fixed << std::setprecision(1) << per_digit << "N";
  return os.str();
}

namespace {

std::string fixed(double x, int digits) {
  if (std::isnan(x)) return "-";
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

std::string join_relax(const std::vector<double>& relax, int digits) {
  std::string out;
  for (std::size_t i = 0; i < relax.size(); ++i) {
    if (i > 0) out += " ";
    out += fixed(relax[i], digits);
  }
  return out;
}

std::string shortest(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    // from_chars rejects "inf"; map it explicitly.
    if (text == "inf") return std::numeric_limits<double>::infinity();
    throw std::invalid_argument("bad number in CSV: '" + text + "'");
  }
  return value;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::string render_text(const std::vector<TableRow>& rows) {
  bool tuned = false;
  for (const TableRow& r : rows) tuned = tuned || !r.relax.empty();
  std::ostringstream os;
  os << std::left << std::setw(24) << "algorithm" << std::right << std::setw(10) << "per iter" << std::setw(8) << "rho0"
     << std::setw(8) << "(ref)" << std::setw(10) << "per dig";
  if (tuned) {
    os << "   " << std::left << std::setw(24) << "relax" << std::setw(24) << "(ref)" << std::right << std::setw(8)
       << "rho" << std::setw(8) << "(ref)" << std::setw(10) << "per dig";
  }
  os << "\n";
  for (const TableRow& r : rows) {
    os << std::left << std::setw(24) << r.config << std::right << std::setw(10) << (fixed(r.per_iter.value(), 1) + "N")
       << std::setw(8) << fixed(r.rho0, 3) << std::setw(8) << fixed(r.ref_rho0, 3) << std::setw(10)
       << format_per_digit(r.per_digit0);
    if (tuned) {
      os << "   " << std::left << std::setw(24) << join_relax(r.relax, 3) << std::setw(24) << join_relax(r.ref_relax, 3)
         << std::right << std::setw(8) << fixed(r.rho, 3) << std::setw(8) << fixed(r.ref_rho, 3) << std::setw(10)
         << format_per_digit(r.per_digit);
    }
    os << "\n";
  }
  return os.str();
}

std::string render_csv(const std::vector<ConvergenceReport>& reports) {
  std::ostringstream os;
  os << "config,per_iter_flops_N,rho,flops_per_digit_N,relax_params\n";
  for (const ConvergenceReport& r : reports) {
    std::string relax;
    for (std::size_t i = 0; i < r.relax.size(); ++i) {
      if (i > 0) relax += ";";
      relax += shortest(r.relax[i]);
    }
    os << '"' << r.config << '"' << ',' << shortest(r.flops_per_iter) << ',' << shortest(r.rho) << ','
       << shortest(r.flops_per_digit) << ',' << relax << "\n";
  }
  return os.str();
}

std::vector<ConvergenceReport> parse_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != "config,per_iter_flops_N,rho,flops_per_digit_N,relax_params") {
    throw std::invalid_argument("missing CSV header");
  }
  std::vector<ConvergenceReport> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    // The config is quoted because it contains commas.
    if (line.front() != '"') throw std::invalid_argument("expected quoted config: " + line);
    const auto close = line.find('"', 1);
    if (close == std::string::npos || close + 1 >= line.size() || line[close + 1] != ',') {
      throw std::invalid_argument("malformed CSV line: " + line);
    }
    ConvergenceReport r;
    r.config = line.substr(1, close - 1);
    const auto fields = split(line.substr(close + 2), ',');
    if (fields.size() != 4) throw std::invalid_argument("expected 5 CSV columns: " + line);
    r.flops_per_iter = parse_double(fields[0]);
    r.rho = parse_double(fields[1]);
    r.flops_per_digit = parse_double(fields[2]);
    if (!fields[3].empty()) {
      for (const auto& v : split(fields[3], ';')) r.relax.push_back(parse_double(v));
    }
    r.divergent = !(r.rho < 1.0);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace dmg
