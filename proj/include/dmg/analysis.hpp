#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dmg/cycle.hpp"

namespace dmg {

/// Measured convergence of one configuration.
struct ConvergenceReport {
  std::string config;
  std::vector<double> relax;
  /// Dominant contraction factor per V-cycle.
  double rho = 0.0;
  /// Analytic flops per cycle in units of N.
  double flops_per_iter = 0.0;
  /// flops_per_iter / (-log10 rho); infinite when rho >= 1.
  double flops_per_digit = std::numeric_limits<double>::infinity();
  /// Geometric mean of the last 10 norm ratios.
  double rho_window = 0.0;
  /// Norm ratio of every iteration.
  std::vector<double> samples;
  bool divergent = false;
};

/// flops / (-log10 rho), or +inf when rho >= 1 (or rho is not finite).
double flops_per_digit(double flops_per_iter, double rho);

/// Power iteration on the error-propagation operator: f = 0, a seeded random
/// start, one V-cycle per step with max-norm renormalisation. rho_window is
/// the geometric mean of the last 10 norm ratios. When the dominant
/// eigenvalues form a complex pair those ratios oscillate, so rho is taken
/// from 32 Arnoldi steps started at the final iterate, falling
/// back to rho_window if no Ritz pair has a small residual. Requires
/// iters >= 20.
ConvergenceReport estimate_rate(const CycleParams& params, const Hierarchy& hierarchy, int iters, std::uint64_t seed);

/// Dense matrix of the error-propagation operator over the interior unknowns
/// (lexicographic order); column k is the image of the k-th unit error.
/// Throws std::invalid_argument above 5000 unknowns.
Eigen::MatrixXd assemble_error_operator(const CycleParams& params, const Hierarchy& hierarchy);

/// Largest eigenvalue modulus of a square matrix.
double dominant_eigenvalue(const Eigen::MatrixXd& matrix);

/// One row of a comparison table.
struct TableRow {
  std::string config;
  Rational per_iter;
  double rho0 = 0.0;
  double per_digit0 = 0.0;
  std::vector<double> relax;
  double rho = 0.0;
  double per_digit = 0.0;
  /// Reference values printed alongside, NaN or empty when absent.
  double ref_rho0 = std::numeric_limits<double>::quiet_NaN();
  double ref_rho = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> ref_relax;
};

/// Input to make_table: a configuration with its untuned (all parameters 1)
/// and tuned measurements. NaN marks a measurement that was not taken.
struct TableConfig {
  CycleParams params;
  int n = 0;
  double rho0 = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> relax;
  double rho = std::numeric_limits<double>::quiet_NaN();
  double ref_rho0 = std::numeric_limits<double>::quiet_NaN();
  double ref_rho = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> ref_relax;
};

std::vector<TableRow> make_table(const std::vector<TableConfig>& configs);

/// The four configurations of comparison table 1 (2D, 65^2, with
/// tuned p), 2 (3D, 17^3, untuned) or 3 (3D, 17^3, tuned), carrying the
/// reference values and no measurements. Throws for any other number.
std::vector<TableConfig> reference_table_configs(int which);

/// Per-digit figure as printed in tables: "25.0N", "div" for divergence, "-"
/// for NaN (not measured).
std::string format_per_digit(double per_digit);

/// Aligned plain-text rendering.
std::string render_text(const std::vector<TableRow>& rows);

/// CSV with columns config,per_iter_flops_N,rho,flops_per_digit_N,relax_params;
/// one line per report, relax parameters separated by ';'. Numbers are written
/// in shortest round-trip form so parse_csv recovers them exactly.
std::string render_csv(const std::vector<ConvergenceReport>& reports);
std::vector<ConvergenceReport> parse_csv(const std::string& text);

}  // namespace dmg
