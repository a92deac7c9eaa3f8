#include "dmg/stencil3d.hpp"

#include <array>
#include <stdexcept>
#include <string>

#include "lattice.hpp"

namespace dmg::stencil3d {

using detail::for_each_node;
using detail::is_even;
using detail::tap_sum;

namespace {

void require_finest(const Field& u, const char* what) {
  const GridLevel& l = u.level();
  if (l.dim != 3 || l.klass != LevelClass::Green || l.stride != 1) {
    throw std::invalid_argument(std::string(what) + ": expected a field on the finest 3D green level");
  }
}

void require_pair(const GridLevel& fine, const GridLevel& coarse, bool ok, const char* what) {
  if (!ok || fine.dim != 3 || coarse.dim != 3 || coarse.level != fine.level - 1) {
    throw std::invalid_argument(std::string(what) + ": level mismatch (" + to_string(fine.klass) + " stride " +
                                std::to_string(fine.stride) + " / " + to_string(coarse.klass) + " stride " +
                                std::to_string(coarse.stride) + ")");
  }
}

bool is_simple_cubic(const GridLevel& l) { return l.klass == LevelClass::Green || l.klass == LevelClass::Blue; }

const auto all_nodes = [](int, int, int) { return true; };
const auto even_sum = [](int a, int b, int c) { return is_even(a + b + c); };
const auto odd_sum = [](int a, int b, int c) { return !is_even(a + b + c); };
const auto all_even = [](int a, int b, int c) { return is_even(a) && is_even(b) && is_even(c); };
const auto all_odd = [](int a, int b, int c) { return !is_even(a) && !is_even(b) && !is_even(c); };

/// Face-centre red nodes have exactly one even scaled coordinate, which names
/// the face normal. Returns -1 for other nodes.
int face_normal(int a, int b, int c) {
  const int evens = int(is_even(a)) + int(is_even(b)) + int(is_even(c));
  if (evens != 1) return -1;
  return is_even(a) ? 0 : (is_even(b) ? 1 : 2);
}

}  // namespace

Field residual2(const Field& u, const Field& f, double h, FlopCount* flops) {
  require_finest(u, "residual2_3d");
  require_same_level(u, f, "residual2_3d");
  Field r(u.level(), u.n());
  const auto axis = detail::linear_offsets(u.n(), 1, detail::kAxis3);
  const double inv_h2 = 1.0 / (h * h);
  const double* pu = u.data();
  const double* pf = f.data();
  double* pr = r.data();
  const auto nodes = for_each_node(3, u.n(), 1, all_nodes, [&](std::size_t c, int, int, int) {
    pr[c] = pf[c] - (tap_sum(pu, c, axis) - 6.0 * pu[c]) * inv_h2;
  });
  detail::add_flops(flops, nodes, 9);
  return r;
}

Field mehrstellen_rhs(const Field& f, FlopCount* flops) {
  require_finest(f, "mehrstellen_rhs_3d");
  Field out(f.level(), f.n());
  const auto axis = detail::linear_offsets(f.n(), 1, detail::kAxis3);
  const double* pf = f.data();
  double* po = out.data();
  const auto nodes = for_each_node(3, f.n(), 1, all_nodes, [&](std::size_t c, int, int, int) {
    po[c] = (6.0 * pf[c] + tap_sum(pf, c, axis)) / 12.0;
  });
  detail::add_flops(flops, nodes, 8);
  return out;
}

Field residual4_cached(const Field& u, const Field& rhs_avg, double h, FlopCount* flops) {
  require_finest(u, "residual4_3d");
  require_same_level(u, rhs_avg, "residual4_3d");
  Field r(u.level(), u.n());
  const auto axis = detail::linear_offsets(u.n(), 1, detail::kAxis3);
  const auto face = detail::linear_offsets(u.n(), 1, detail::kFaceDiag3);
  const double scale = 1.0 / (6.0 * h * h);
  const double* pu = u.data();
  const double* pf = rhs_avg.data();
  double* pr = r.data();
  const auto nodes = for_each_node(3, u.n(), 1, all_nodes, [&](std::size_t c, int, int, int) {
    pr[c] = pf[c] - scale * (-24.0 * pu[c] + 2.0 * tap_sum(pu, c, axis) + tap_sum(pu, c, face));
  });
  detail::add_flops(flops, nodes, 22);
  return r;
}

Field residual4(const Field& u, const Field& f, double h, FlopCount* flops) {
  require_same_level(u, f, "residual4_3d");
  return residual4_cached(u, mehrstellen_rhs(f, flops), h, flops);
}

Field restrict_green_red(const Field& r, const GridLevel& target, FlopCount* flops) {
  const GridLevel& src = r.level();
  const int s = src.lattice_stride();
  require_pair(src, target, is_simple_cubic(src) && target.klass == LevelClass::Red && target.stride == s,
               "restrict_green_red");
  Field out(target, r.n());
  const auto axis = detail::linear_offsets(r.n(), s, detail::kAxis3);
  const double* pr = r.data();
  double* po = out.data();
  const auto nodes = for_each_node(3, r.n(), s, even_sum, [&](std::size_t c, int, int, int) {
    po[c] = (6.0 * pr[c] + tap_sum(pr, c, axis)) / 12.0;
  });
  detail::add_flops(flops, nodes, 8);
  return out;
}

Field restrict_red_magenta(const Field& r, const GridLevel& target, FlopCount* flops) {
  const GridLevel& src = r.level();
  const int s = src.stride;
  require_pair(src, target,
               src.klass == LevelClass::Red && target.klass == LevelClass::Magenta && target.stride == s,
               "restrict_red_magenta");
  Field out(target, r.n());
  const auto face = detail::linear_offsets(r.n(), s, detail::kFaceDiag3);
  const auto axis = detail::linear_offsets(r.n(), s, detail::kAxis3);
  const double* pr = r.data();
  double* po = out.data();
  const auto corners = for_each_node(3, r.n(), s, all_even, [&](std::size_t c, int, int, int) {
    po[c] = (12.0 * pr[c] + tap_sum(pr, c, face)) / 24.0;
  });
  const auto centres = for_each_node(3, r.n(), s, all_odd, [&](std::size_t c, int, int, int) {
    po[c] = tap_sum(pr, c, axis) / 6.0;
  });
  detail::add_flops(flops, corners, 14);
  detail::add_flops(flops, centres, 6);
  return out;
}

Field restrict_magenta_blue(const Field& r, const GridLevel& target, FlopCount* flops) {
  const GridLevel& src = r.level();
  const int s = src.stride;
  require_pair(src, target,
               src.klass == LevelClass::Magenta && target.klass == LevelClass::Blue && target.stride == s,
               "restrict_magenta_blue");
  Field out(target, r.n());
  const auto body = detail::linear_offsets(r.n(), s, detail::kBodyDiag3);
  const double* pr = r.data();
  double* po = out.data();
  const auto nodes = for_each_node(3, r.n(), s, all_even, [&](std::size_t c, int, int, int) {
    po[c] = (8.0 * pr[c] + tap_sum(pr, c, body)) / 16.0;
  });
  detail::add_flops(flops, nodes, 10);
  return out;
}

Field prolong_blue_magenta(const Field& v_coarse, const Field& r, double p_m, double h, FlopCount* flops) {
  if (!(p_m > 0.0)) throw std::invalid_argument("prolong_blue_magenta: relaxation parameter must be positive");
  const GridLevel& target = r.level();
  const GridLevel& coarse = v_coarse.level();
  const int s = target.stride;
  require_pair(target, coarse,
               target.klass == LevelClass::Magenta && coarse.klass == LevelClass::Blue && coarse.stride == s &&
                   v_coarse.n() == r.n(),
               "prolong_blue_magenta");
  Field v(target, r.n());
  const auto body = detail::linear_offsets(r.n(), s, detail::kBodyDiag3);
  const double coeff = 4.0 * p_m * target.spacing_sq_coeff * h * h;
  const double* pc = v_coarse.data();
  const double* pr = r.data();
  double* pv = v.data();
  std::int64_t nodes = for_each_node(3, r.n(), s, all_odd, [&](std::size_t c, int, int, int) {
    pv[c] = 0.125 * (-coeff * pr[c] + tap_sum(pc, c, body));
  });
  nodes += for_each_node(3, r.n(), s, all_even, [&](std::size_t c, int, int, int) {
    pv[c] = 0.125 * (-coeff * pr[c] + tap_sum(pv, c, body));
  });
  detail::add_flops(flops, nodes, 10);
  return v;
}

Field prolong_magenta_red(const Field& v_coarse, const Field& r, double p_r1, double p_r2, double h,
                          FlopCount* flops) {
  if (!(p_r1 > 0.0) || !(p_r2 > 0.0)) {
    throw std::invalid_argument("prolong_magenta_red: relaxation parameters must be positive");
  }
  const GridLevel& target = r.level();
  const GridLevel& coarse = v_coarse.level();
  const int s = target.stride;
  require_pair(target, coarse,
               target.klass == LevelClass::Red && coarse.klass == LevelClass::Magenta && coarse.stride == s &&
                   v_coarse.n() == r.n(),
               "prolong_magenta_red");
  const int n = r.n();
  Field v(target, n);
  // Per face normal: the doubled pair along the normal and the in-plane corners.
  const std::array<std::vector<std::ptrdiff_t>, 3> normal_pair = {
      detail::linear_offsets(n, s, {{1, 0, 0}, {-1, 0, 0}}),
      detail::linear_offsets(n, s, {{0, 1, 0}, {0, -1, 0}}),
      detail::linear_offsets(n, s, {{0, 0, 1}, {0, 0, -1}})};
  const std::array<std::vector<std::ptrdiff_t>, 3> in_plane = {
      detail::linear_offsets(n, s, {{0, 1, 1}, {0, 1, -1}, {0, -1, 1}, {0, -1, -1}}),
      detail::linear_offsets(n, s, {{1, 0, 1}, {1, 0, -1}, {-1, 0, 1}, {-1, 0, -1}}),
      detail::linear_offsets(n, s, {{1, 1, 0}, {1, -1, 0}, {-1, 1, 0}, {-1, -1, 0}})};
  const auto face = detail::linear_offsets(n, s, detail::kFaceDiag3);
  const double h2 = target.spacing_sq_coeff * h * h;
  const double face_coeff = 2.0 * p_r1 * h2;
  const double corner_coeff = 4.0 * p_r2 * h2;
  const double* pc = v_coarse.data();
  const double* pr = r.data();
  double* pv = v.data();

  const auto faces = for_each_node(
      3, n, s, [](int a, int b, int c) { return face_normal(a, b, c) >= 0; },
      [&](std::size_t c, int a, int b, int cc) {
        const int d = face_normal(a, b, cc);
        pv[c] = 0.125 * (-face_coeff * pr[c] + 2.0 * tap_sum(pc, c, normal_pair[d]) + tap_sum(pc, c, in_plane[d]));
      });
  const auto corners = for_each_node(3, n, s, all_even, [&](std::size_t c, int, int, int) {
    pv[c] = (-corner_coeff * pr[c] + tap_sum(pv, c, face)) / 12.0;
  });
  detail::add_flops(flops, faces, 9);
  detail::add_flops(flops, corners, 14);
  return v;
}

Field prolong_red_green(const Field& v_coarse, const Field& r, double p_g, double h, FlopCount* flops) {
  if (!(p_g > 0.0)) throw std::invalid_argument("prolong_red_green: relaxation parameter must be positive");
  const GridLevel& target = r.level();
  const GridLevel& coarse = v_coarse.level();
  const int s = target.lattice_stride();
  require_pair(target, coarse,
               is_simple_cubic(target) && coarse.klass == LevelClass::Red && coarse.stride == s &&
                   v_coarse.n() == r.n(),
               "prolong_red_green");
  Field v(target, r.n());
  const auto axis = detail::linear_offsets(r.n(), s, detail::kAxis3);
  const double coeff = p_g * target.spacing_sq_coeff * h * h;
  const double* pc = v_coarse.data();
  const double* pr = r.data();
  double* pv = v.data();
  std::int64_t nodes = for_each_node(3, r.n(), s, odd_sum, [&](std::size_t c, int, int, int) {
    pv[c] = (-coeff * pr[c] + tap_sum(pc, c, axis)) / 6.0;
  });
  nodes += for_each_node(3, r.n(), s, even_sum, [&](std::size_t c, int, int, int) {
    pv[c] = (-coeff * pr[c] + tap_sum(pv, c, axis)) / 6.0;
  });
  detail::add_flops(flops, nodes, 8);
  return v;
}

}  // namespace dmg::stencil3d
