#include "dmg/cycle.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "dmg/baseline.hpp"
#include "dmg/stencil2d.hpp"
#include "dmg/stencil3d.hpp"

namespace dmg {

// ---------------------------------------------------------------------------
// Rational

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
  if (d == 0) throw std::invalid_argument("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Rational operator+(const Rational& a, const Rational& b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
Rational operator-(const Rational& a, const Rational& b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
Rational operator*(const Rational& a, const Rational& b) { return {a.num * b.num, a.den * b.den}; }

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

// ---------------------------------------------------------------------------
// CycleParams

std::vector<double> CycleParams::relax() const {
  if (scheme == Scheme::Diagonal && dim == 3) return {p_m, p_r1, p_r2, p_g};
  if (dim == 3) return {p_g};
  return {p};
}

CycleParams CycleParams::with_relax(const std::vector<double>& values) const {
  if (values.size() != relax_count()) {
    throw std::invalid_argument("expected " + std::to_string(relax_count()) + " relaxation parameters for " +
                                describe() + ", got " + std::to_string(values.size()));
  }
  CycleParams out = *this;
  if (scheme == Scheme::Diagonal && dim == 3) {
    out.p_m = values[0];
    out.p_r1 = values[1];
    out.p_r2 = values[2];
    out.p_g = values[3];
  } else if (dim == 3) {
    out.p_g = values[0];
  } else {
    out.p = values[0];
  }
  return out;
}

std::string CycleParams::describe() const {
  std::ostringstream os;
  os << to_string(scheme) << ", O(h^" << residual_order << "), " << dim << "D";
  return os.str();
}

void CycleParams::validate() const {
  if (dim != 2 && dim != 3) throw std::invalid_argument("dimension must be 2 or 3");
  if (residual_order != 2 && residual_order != 4) throw std::invalid_argument("residual order must be 2 or 4");
  for (double x : relax()) {
    if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("relaxation parameters must be positive");
  }
}

FlopLedger& FlopLedger::operator+=(const FlopLedger& other) {
  residual += other.residual;
  restriction += other.restriction;
  prolongation += other.prolongation;
  coarse += other.coarse;
  correction += other.correction;
  return *this;
}

// ---------------------------------------------------------------------------
// VCycle

VCycle::VCycle(Hierarchy hierarchy, CycleParams params) : hierarchy_(std::move(hierarchy)), params_(params) {
  params_.validate();
  if (params_.dim != hierarchy_.dim() || params_.scheme != hierarchy_.scheme()) {
    throw std::invalid_argument("cycle parameters (" + params_.describe() + ") do not match the " +
                                to_string(hierarchy_.scheme()) + " " + std::to_string(hierarchy_.dim()) +
                                "D hierarchy");
  }
}

Field VCycle::make_field() const { return Field(hierarchy_.finest(), hierarchy_.n()); }

Field VCycle::prepare_rhs(const Field& f, FlopCount* setup_flops) const {
  require_same_level(f, make_field(), "prepare_rhs");
  if (params_.residual_order == 2) return f;
  return params_.dim == 2 ? stencil2d::mehrstellen_rhs(f, setup_flops) : stencil3d::mehrstellen_rhs(f, setup_flops);
}

Field VCycle::residual(const Field& u, const Field& rhs, FlopCount* flops) const {
  const double h = hierarchy_.h();
  if (params_.dim == 2) {
    return params_.residual_order == 2 ? stencil2d::residual2(u, rhs, h, flops)
                                       : stencil2d::residual4_cached(u, rhs, h, flops);
  }
  return params_.residual_order == 2 ? stencil3d::residual2(u, rhs, h, flops)
                                     : stencil3d::residual4_cached(u, rhs, h, flops);
}

Field VCycle::restrict_to(const Field& r, const GridLevel& target, FlopLedger& ledger) const {
  FlopCount* flops = &ledger.restriction;
  if (params_.scheme == Scheme::Conventional) {
    return params_.dim == 2 ? baseline::conv_restrict_2d(r, target, flops)
                            : baseline::conv_restrict_3d(r, target, flops);
  }
  switch (r.level().klass) {
    case LevelClass::Axis: return stencil2d::restrict_axis_to_diag(r, target, flops);
    case LevelClass::Diagonal: return stencil2d::restrict_diag_to_axis(r, target, flops);
    case LevelClass::Green:
    case LevelClass::Blue: return stencil3d::restrict_green_red(r, target, flops);
    case LevelClass::Red: return stencil3d::restrict_red_magenta(r, target, flops);
    case LevelClass::Magenta: return stencil3d::restrict_magenta_blue(r, target, flops);
  }
  throw std::logic_error("unreachable level class");
}

Field VCycle::prolong(const Field& v_coarse, const Field& r, FlopLedger& ledger) const {
  FlopCount* flops = &ledger.prolongation;
  const double h = hierarchy_.h();
  const CycleParams& q = params_;
  if (q.scheme == Scheme::Conventional) {
    return q.dim == 2 ? baseline::conv_prolong_2d(v_coarse, r, q.p, h, flops)
                      : baseline::conv_prolong_3d(v_coarse, r, q.p_g, h, flops);
  }
  switch (r.level().klass) {
    case LevelClass::Axis:
    case LevelClass::Diagonal: return stencil2d::prolong_jacobi2(v_coarse, r, q.p, h, flops);
    case LevelClass::Magenta: return stencil3d::prolong_blue_magenta(v_coarse, r, q.p_m, h, flops);
    case LevelClass::Red: return stencil3d::prolong_magenta_red(v_coarse, r, q.p_r1, q.p_r2, h, flops);
    case LevelClass::Green:
    case LevelClass::Blue: return stencil3d::prolong_red_green(v_coarse, r, q.p_g, h, flops);
  }
  throw std::logic_error("unreachable level class");
}

Field VCycle::coarse_solve(const Field& r, FlopLedger& ledger) const {
  const GridLevel& level = r.level();
  const auto nodes = interior_nodes(level, hierarchy_);
  const int dim = level.dim;
  const int s = level.lattice_stride();
  const double coeff = level.spacing_sq_coeff * hierarchy_.h() * hierarchy_.h();
  const double inv = 1.0 / (2 * dim);
  // A single unknown is solved exactly by one sweep from zero.
  const int sweeps = nodes.size() == 1 ? 1 : 20;
  Field v(level, r.n());
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    Field next(level, r.n());
    for (const Index& idx : nodes) {
      double sum = 0.0;
      for (int d = 0; d < dim; ++d) {
        for (int sign : {-1, 1}) {
          Index nb = idx;
          nb[d] += sign * s;
          sum += v(nb);
        }
      }
      next(idx) = inv * (-coeff * r(idx) + sum);
    }
    v = std::move(next);
  }
  ledger.coarse += static_cast<FlopCount>(sweeps) * static_cast<FlopCount>(nodes.size()) * (2 * dim + 2);
  return v;
}

Field VCycle::correction(const Field& residual, FlopLedger& ledger) const {
  require_same_level(residual, make_field(), "correction");
  const int depth = hierarchy_.depth();
  // residuals[k] lives on level depth-1-k.
  std::vector<Field> residuals;
  residuals.reserve(static_cast<std::size_t>(depth));
  residuals.push_back(residual);
  for (int l = depth - 1; l > 0; --l) {
    residuals.push_back(restrict_to(residuals.back(), hierarchy_.level(l - 1), ledger));
  }
  Field v = coarse_solve(residuals.back(), ledger);
  for (int l = 1; l < depth; ++l) {
    v = prolong(v, residuals[static_cast<std::size_t>(depth - 1 - l)], ledger);
  }
  return v;
}

Field VCycle::apply(const Field& u, const Field& rhs, FlopLedger& ledger) const {
  const Field r = residual(u, rhs, &ledger.residual);
  const Field v = correction(r, ledger);
  Field out = u;
  auto ov = out.values();
  const auto vv = v.values();
  for (std::size_t i = 0; i < ov.size(); ++i) ov[i] += vv[i];
  ledger.correction += hierarchy_.unknowns();
  return out;
}

CycleResult v_cycle(const Field& u, const Field& f, const Hierarchy& hierarchy, const CycleParams& params) {
  const VCycle cycle(hierarchy, params);
  FlopLedger ledger;
  Field next = cycle.apply(u, cycle.prepare_rhs(f), ledger);
  return {std::move(next), ledger};
}

SolveResult solve(const Field& f, const Hierarchy& hierarchy, const CycleParams& params, double tol, int max_iter) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (max_iter < 0) throw std::invalid_argument("iteration limit must be non-negative");
  const VCycle cycle(hierarchy, params);
  SolveResult result{cycle.make_field(), {}, 0, false, false, {}};
  const double f_norm = f.max_abs();
  if (f_norm == 0.0) {
    require_same_level(f, result.u, "solve");
    result.history.push_back(0.0);
    result.converged = true;
    return result;
  }
  const Field rhs = cycle.prepare_rhs(f);
  for (;;) {
    const Field r = cycle.residual(result.u, rhs, &result.ledger.residual);
    const double norm = r.max_abs();
    result.history.push_back(norm);
    if (norm <= tol * f_norm) {
      result.converged = true;
      break;
    }
    if (!std::isfinite(norm) || norm > 1e6 * result.history.front()) {
      result.diverged = true;
      break;
    }
    if (result.iterations == max_iter) break;
    const Field v = cycle.correction(r, result.ledger);
    auto uv = result.u.values();
    const auto vv = v.values();
    for (std::size_t i = 0; i < uv.size(); ++i) uv[i] += vv[i];
    result.ledger.correction += hierarchy.unknowns();
    ++result.iterations;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Analytic cost model

namespace {

struct CostModel {
  Rational residual;
  Rational restriction;   // asymptotic hierarchy total
  Rational prolongation;  // asymptotic hierarchy total
  std::int64_t ratio;     // node-count ratio per factor-two coarsening
};

CostModel cost_model(const CycleParams& params) {
  params.validate();
  const bool fourth = params.residual_order == 4;
  if (params.dim == 2) {
    const Rational residual = fourth ? Rational(12) : Rational(7);
    if (params.scheme == Scheme::Diagonal) return {residual, Rational(6), Rational(12), 4};
    return {residual, Rational(11, 3), Rational(32, 3), 4};
  }
  const Rational residual = fourth ? Rational(22) : Rational(9);
  if (params.scheme == Scheme::Diagonal) return {residual, Rational(62, 7), Rational(125, 7), 8};
  return {residual, Rational(30, 7), Rational(90, 7), 8};
}

}  // namespace

Rational flops_per_cycle(const CycleParams& params) {
  const CostModel m = cost_model(params);
  return m.residual + m.restriction + m.prolongation;
}

Rational flops_per_cycle(const CycleParams& params, const Hierarchy& hierarchy) {
  const CostModel m = cost_model(params);
  std::int64_t power = 1;
  for (int l = 0; l < hierarchy.doublings(); ++l) power *= m.ratio;
  const Rational truncation = Rational(1) - Rational(1, power);
  return m.residual + (m.restriction + m.prolongation) * truncation;
}

}  // namespace dmg
