#include "dmg/stencil2d.hpp"

#include <stdexcept>
#include <string>

#include "lattice.hpp"

namespace dmg::stencil2d {

using detail::for_each_node;
using detail::is_even;
using detail::tap_sum;

namespace {

void require_finest(const Field& u, const char* what) {
  const GridLevel& l = u.level();
  if (l.dim != 2 || l.klass != LevelClass::Axis || l.stride != 1) {
    throw std::invalid_argument(std::string(what) + ": expected a field on the finest 2D axis level");
  }
}

void require_transfer(const GridLevel& from, const GridLevel& to, LevelClass from_class, LevelClass to_class,
                      int to_stride, const char* what) {
  if (from.dim != 2 || to.dim != 2 || from.klass != from_class || to.klass != to_class ||
      to.stride != to_stride || to.level != from.level - 1) {
    throw std::invalid_argument(std::string(what) + ": level mismatch (" + to_string(from.klass) + " stride " +
                                std::to_string(from.stride) + " -> " + to_string(to.klass) + " stride " +
                                std::to_string(to.stride) + ")");
  }
}

const auto all_nodes = [](int, int, int) { return true; };

}  // namespace

Field residual2(const Field& u, const Field& f, double h, FlopCount* flops) {
  require_finest(u, "residual2");
  require_same_level(u, f, "residual2");
  Field r(u.level(), u.n());
  const auto axis = detail::linear_offsets(u.n(), 1, detail::kAxis2);
  const double inv_h2 = 1.0 / (h * h);
  const double* pu = u.data();
  const double* pf = f.data();
  double* pr = r.data();
  const auto nodes = for_each_node(2, u.n(), 1, all_nodes, [&](std::size_t c, int, int, int) {
    pr[c] = pf[c] - (tap_sum(pu, c, axis) - 4.0 * pu[c]) * inv_h2;
  });
  detail::add_flops(flops, nodes, 7);
  return r;
}

Field mehrstellen_rhs(const Field& f, FlopCount* flops) {
  require_finest(f, "mehrstellen_rhs");
  Field out(f.level(), f.n());
  const auto axis = detail::linear_offsets(f.n(), 1, detail::kAxis2);
  const double* pf = f.data();
  double* po = out.data();
  const auto nodes = for_each_node(2, f.n(), 1, all_nodes, [&](std::size_t c, int, int, int) {
    po[c] = (8.0 * pf[c] + tap_sum(pf, c, axis)) / 12.0;
  });
  detail::add_flops(flops, nodes, 6);
  return out;
}

Field residual4_cached(const Field& u, const Field& rhs_avg, double h, FlopCount* flops) {
  require_finest(u, "residual4");
  require_same_level(u, rhs_avg, "residual4");
  Field r(u.level(), u.n());
  const auto axis = detail::linear_offsets(u.n(), 1, detail::kAxis2);
  const auto diag = detail::linear_offsets(u.n(), 1, detail::kDiag2);
  const double scale = 1.0 / (6.0 * h * h);
  const double* pu = u.data();
  const double* pf = rhs_avg.data();
  double* pr = r.data();
  const auto nodes = for_each_node(2, u.n(), 1, all_nodes, [&](std::size_t c, int, int, int) {
    pr[c] = pf[c] - scale * (-20.0 * pu[c] + 4.0 * tap_sum(pu, c, axis) + tap_sum(pu, c, diag));
  });
  detail::add_flops(flops, nodes, 12);
  return r;
}

Field residual4(const Field& u, const Field& f, double h, FlopCount* flops) {
  require_same_level(u, f, "residual4");
  return residual4_cached(u, mehrstellen_rhs(f, flops), h, flops);
}

Field restrict_axis_to_diag(const Field& r, const GridLevel& target, FlopCount* flops) {
  const GridLevel& src = r.level();
  require_transfer(src, target, LevelClass::Axis, LevelClass::Diagonal, src.stride, "restrict_axis_to_diag");
  Field out(target, r.n());
  const int s = src.stride;
  const auto axis = detail::linear_offsets(r.n(), s, detail::kAxis2);
  const double* pr = r.data();
  double* po = out.data();
  const auto nodes = for_each_node(
      2, r.n(), s, [](int a, int b, int) { return is_even(a + b); },
      [&](std::size_t c, int, int, int) { po[c] = 0.125 * (4.0 * pr[c] + tap_sum(pr, c, axis)); });
  detail::add_flops(flops, nodes, 6);
  return out;
}

Field restrict_diag_to_axis(const Field& r, const GridLevel& target, FlopCount* flops) {
  const GridLevel& src = r.level();
  require_transfer(src, target, LevelClass::Diagonal, LevelClass::Axis, 2 * src.stride, "restrict_diag_to_axis");
  Field out(target, r.n());
  const int s = src.stride;
  const auto diag = detail::linear_offsets(r.n(), s, detail::kDiag2);
  const double* pr = r.data();
  double* po = out.data();
  const auto nodes = for_each_node(
      2, r.n(), s, [](int a, int b, int) { return is_even(a) && is_even(b); },
      [&](std::size_t c, int, int, int) { po[c] = 0.125 * (4.0 * pr[c] + tap_sum(pr, c, diag)); });
  detail::add_flops(flops, nodes, 6);
  return out;
}

Field prolong_jacobi2(const Field& v_coarse, const Field& r, double p, double h, FlopCount* flops) {
  if (!(p > 0.0)) throw std::invalid_argument("prolong_jacobi2: relaxation parameter must be positive");
  const GridLevel& target = r.level();
  const GridLevel& coarse = v_coarse.level();
  const int s = target.stride;
  const bool to_axis = target.klass == LevelClass::Axis;
  if (to_axis) {
    require_transfer(target, coarse, LevelClass::Axis, LevelClass::Diagonal, s, "prolong_jacobi2");
  } else {
    require_transfer(target, coarse, LevelClass::Diagonal, LevelClass::Axis, 2 * s, "prolong_jacobi2");
  }
  if (v_coarse.n() != r.n()) throw std::invalid_argument("prolong_jacobi2: grid size mismatch");

  Field v(target, r.n());
  const auto taps = detail::linear_offsets(r.n(), s, to_axis ? detail::kAxis2 : detail::kDiag2);
  const double coeff = p * target.spacing_sq_coeff * h * h;
  const double* pc = v_coarse.data();
  const double* pr = r.data();
  double* pv = v.data();

  // New nodes: odd scaled sum on an axis level, both scaled indices odd on a
  // diagonal level. Coincident nodes are the complement within the level.
  const auto fresh = [to_axis](int a, int b, int) { return to_axis ? !is_even(a + b) : (!is_even(a) && !is_even(b)); };
  const auto shared = [to_axis](int a, int b, int) { return to_axis ? is_even(a + b) : (is_even(a) && is_even(b)); };

  std::int64_t nodes = for_each_node(2, r.n(), s, fresh, [&](std::size_t c, int, int, int) {
    pv[c] = 0.25 * (-coeff * pr[c] + tap_sum(pc, c, taps));
  });
  nodes += for_each_node(2, r.n(), s, shared, [&](std::size_t c, int, int, int) {
    pv[c] = 0.25 * (-coeff * pr[c] + tap_sum(pv, c, taps));
  });
  detail::add_flops(flops, nodes, 6);
  return v;
}

}  // namespace dmg::stencil2d
