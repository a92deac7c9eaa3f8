#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dmg/field.hpp"
#include "dmg/mesh.hpp"

namespace dmg {

/// Exact rational number; used for flop counts in units of N.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) = default;
};

/// V-cycle configuration. The diagonal 2D scheme and both conventional
/// schemes in 2D use `p`; the conventional 3D scheme uses `p_g`; the diagonal
/// 3D scheme uses p_m, p_r1, p_r2 and p_g.
struct CycleParams {
  Scheme scheme = Scheme::Diagonal;
  int dim = 2;
  int residual_order = 2;
  double p = 1.0;
  double p_m = 1.0;
  double p_r1 = 1.0;
  double p_r2 = 1.0;
  double p_g = 1.0;

  /// The parameters that actually enter this configuration, in the order
  /// (p) or (p_g) or (p_m, p_r1, p_r2, p_g).
  std::vector<double> relax() const;
  CycleParams with_relax(const std::vector<double>& values) const;
  std::size_t relax_count() const { return relax().size(); }
  /// e.g. "diagonal, O(h^2), 2D".
  std::string describe() const;

  /// Throws std::invalid_argument on bad order, dimension or parameters.
  void validate() const;
};

/// Flop counts by phase for one or more cycles.
struct FlopLedger {
  FlopCount residual = 0;
  FlopCount restriction = 0;
  FlopCount prolongation = 0;
  FlopCount coarse = 0;
  FlopCount correction = 0;

  /// residual + restriction + prolongation, the count the comparison tables use.
  FlopCount comparable() const { return residual + restriction + prolongation; }
  FlopCount total() const { return comparable() + coarse + correction; }
  FlopLedger& operator+=(const FlopLedger& other);
};

/// One V-cycle engine bound to a hierarchy.
class VCycle {
 public:
  VCycle(Hierarchy hierarchy, CycleParams params);

  const Hierarchy& hierarchy() const { return hierarchy_; }
  const CycleParams& params() const { return params_; }

  /// Zero field on the finest level.
  Field make_field() const;

  /// The right-hand-side term the residual is measured against: f itself at
  /// second order, the compact averaged f at fourth order (once per solve).
  Field prepare_rhs(const Field& f, FlopCount* setup_flops = nullptr) const;

  /// Finest-level residual of u against a prepared right-hand side.
  Field residual(const Field& u, const Field& rhs, FlopCount* flops = nullptr) const;

  /// The multigrid estimate of the correction v from a finest-level residual.
  Field correction(const Field& residual, FlopLedger& ledger) const;

  /// u + correction(residual(u, rhs)).
  Field apply(const Field& u, const Field& rhs, FlopLedger& ledger) const;

 private:
  Field coarse_solve(const Field& r, FlopLedger& ledger) const;
  Field restrict_to(const Field& r, const GridLevel& target, FlopLedger& ledger) const;
  Field prolong(const Field& v_coarse, const Field& r, FlopLedger& ledger) const;

  Hierarchy hierarchy_;
  CycleParams params_;
};

struct CycleResult {
  Field u;
  FlopLedger ledger;
};

/// One V-cycle from u for the right-hand side f.
CycleResult v_cycle(const Field& u, const Field& f, const Hierarchy& hierarchy, const CycleParams& params);

struct SolveResult {
  Field u;
  /// Finest-level residual max-norm before each cycle and after the last.
  std::vector<double> history;
  int iterations = 0;
  bool converged = false;
  bool diverged = false;
  FlopLedger ledger;
};

/// Iterates V-cycles from u = 0 until max|r| <= tol * max|f| or max_iter.
/// A residual that grows by 1e6 over its initial value, or turns non-finite,
/// stops the loop with `diverged` set.
SolveResult solve(const Field& f, const Hierarchy& hierarchy, const CycleParams& params, double tol, int max_iter);

/// Closed-form cost of one V-cycle in units of N (interior unknowns) for an
/// infinitely deep hierarchy: residual plus restriction plus prolongation.
Rational flops_per_cycle(const CycleParams& params);

/// Same with the geometric sums truncated at the hierarchy's number of
/// doublings L, i.e. with the (1 - 4^-L) or (1 - 8^-L) factors.
Rational flops_per_cycle(const CycleParams& params, const Hierarchy& hierarchy);

}  // namespace dmg
