#include "dmg/baseline.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "lattice.hpp"

namespace dmg::baseline {

using detail::for_each_node;
using detail::is_even;
using detail::tap_sum;

namespace {

void require_pair(const GridLevel& fine, const GridLevel& coarse, int dim, const char* what) {
  const LevelClass cubic = dim == 2 ? LevelClass::Axis : LevelClass::Green;
  if (fine.dim != dim || coarse.dim != dim || fine.klass != cubic || coarse.klass != cubic ||
      coarse.stride != 2 * fine.stride || coarse.level != fine.level - 1) {
    throw std::invalid_argument(std::string(what) + ": level mismatch (" + to_string(fine.klass) + " stride " +
                                std::to_string(fine.stride) + " / " + to_string(coarse.klass) + " stride " +
                                std::to_string(coarse.stride) + ")");
  }
}

// Smoothing sweep shared by both dimensions: odd-sum nodes first, then
// even-sum nodes from the updated values.
std::int64_t red_black_sweep(Field& v, const Field& r, int dim, double coeff) {
  const int s = v.level().stride;
  const auto axis = detail::linear_offsets(v.n(), s, dim == 2 ? detail::kAxis2 : detail::kAxis3);
  const double inv = 1.0 / (2 * dim);
  const double* pr = r.data();
  double* pv = v.data();
  const auto update = [&](std::size_t c, int, int, int) { pv[c] = inv * (-coeff * pr[c] + tap_sum(pv, c, axis)); };
  std::int64_t nodes = for_each_node(dim, v.n(), s, [](int a, int b, int c) { return !is_even(a + b + c); }, update);
  nodes += for_each_node(dim, v.n(), s, [](int a, int b, int c) { return is_even(a + b + c); }, update);
  return nodes;
}

}  // namespace

Field conv_restrict_2d(const Field& r, const GridLevel& target, FlopCount* flops) {
  require_pair(r.level(), target, 2, "conv_restrict_2d");
  const int s = r.level().stride;
  Field out(target, r.n());
  const auto axis = detail::linear_offsets(r.n(), s, detail::kAxis2);
  const auto diag = detail::linear_offsets(r.n(), s, detail::kDiag2);
  const double* pr = r.data();
  double* po = out.data();
  const auto nodes = for_each_node(
      2, r.n(), s, [](int a, int b, int) { return is_even(a) && is_even(b); },
      [&](std::size_t c, int, int, int) {
        po[c] = 0.25 * pr[c] + 0.125 * tap_sum(pr, c, axis) + 0.0625 * tap_sum(pr, c, diag);
      });
  detail::add_flops(flops, nodes, 11);
  return out;
}

Field conv_prolong_2d(const Field& v_coarse, const Field& r, double p, double h, FlopCount* flops) {
  if (!(p > 0.0)) throw std::invalid_argument("conv_prolong_2d: relaxation parameter must be positive");
  require_pair(r.level(), v_coarse.level(), 2, "conv_prolong_2d");
  const int s = r.level().stride;
  const int n = r.n();
  Field v(r.level(), n);
  const auto x_pair = detail::linear_offsets(n, s, {{1, 0, 0}, {-1, 0, 0}});
  const auto y_pair = detail::linear_offsets(n, s, {{0, 1, 0}, {0, -1, 0}});
  const auto corners = detail::linear_offsets(n, s, detail::kDiag2);
  const double* pc = v_coarse.data();
  double* pv = v.data();

  FlopCount interp = 0;
  for_each_node(2, n, s, [](int a, int b, int) { return is_even(a) && is_even(b); },
                [&](std::size_t c, int, int, int) { pv[c] = pc[c]; });
  interp += 2 * for_each_node(
                    2, n, s, [](int a, int b, int) { return is_even(a) != is_even(b); },
                    [&](std::size_t c, int a, int, int) { pv[c] = 0.5 * tap_sum(pc, c, is_even(a) ? y_pair : x_pair); });
  interp += 4 * for_each_node(
                    2, n, s, [](int a, int b, int) { return !is_even(a) && !is_even(b); },
                    [&](std::size_t c, int, int, int) { pv[c] = 0.25 * tap_sum(pc, c, corners); });

  const auto nodes = red_black_sweep(v, r, 2, p * r.level().spacing_sq_coeff * h * h);
  if (flops != nullptr) *flops += interp + 6 * nodes;
  return v;
}

Field conv_restrict_3d(const Field& r, const GridLevel& target, FlopCount* flops) {
  require_pair(r.level(), target, 3, "conv_restrict_3d");
  const int s = r.level().stride;
  Field out(target, r.n());
  const auto axis = detail::linear_offsets(r.n(), s, detail::kAxis3);
  const auto face = detail::linear_offsets(r.n(), s, detail::kFaceDiag3);
  const auto body = detail::linear_offsets(r.n(), s, detail::kBodyDiag3);
  const double* pr = r.data();
  double* po = out.data();
  const auto nodes = for_each_node(
      3, r.n(), s, [](int a, int b, int c) { return is_even(a) && is_even(b) && is_even(c); },
      [&](std::size_t c, int, int, int) {
        po[c] = 0.125 * pr[c] + 0.0625 * tap_sum(pr, c, axis) + 0.03125 * tap_sum(pr, c, face) +
                0.015625 * tap_sum(pr, c, body);
      });
  detail::add_flops(flops, nodes, 30);
  return out;
}

Field conv_prolong_3d(const Field& v_coarse, const Field& r, double p_g, double h, FlopCount* flops) {
  if (!(p_g > 0.0)) throw std::invalid_argument("conv_prolong_3d: relaxation parameter must be positive");
  require_pair(r.level(), v_coarse.level(), 3, "conv_prolong_3d");
  const int s = r.level().stride;
  const int n = r.n();
  Field v(r.level(), n);
  const double* pc = v_coarse.data();
  double* pv = v.data();

  // Interpolation taps indexed by the odd-coordinate mask (bit d set when the
  // scaled coordinate along d is odd): the coarse corners of the smallest
  // coarse cell face, edge or body containing the node.
  std::array<std::vector<std::ptrdiff_t>, 8> taps;
  for (int mask = 1; mask < 8; ++mask) {
    std::vector<detail::Offset> list{{0, 0, 0}};
    for (int d = 0; d < 3; ++d) {
      if ((mask >> d & 1) == 0) continue;
      std::vector<detail::Offset> next;
      for (const auto& o : list) {
        for (int sign : {-1, 1}) {
          detail::Offset t = o;
          (d == 0 ? t.di : d == 1 ? t.dj : t.dk) = sign;
          next.push_back(t);
        }
      }
      list = std::move(next);
    }
    for (const auto& o : list) {
      taps[mask].push_back(static_cast<std::ptrdiff_t>(s) *
                           (o.di + static_cast<std::ptrdiff_t>(n) * (o.dj + static_cast<std::ptrdiff_t>(n) * o.dk)));
    }
  }

  FlopCount interp = 0;
  for (int mask = 0; mask < 8; ++mask) {
    const auto pred = [mask](int a, int b, int c) {
      return (int(!is_even(a)) | int(!is_even(b)) << 1 | int(!is_even(c)) << 2) == mask;
    };
    if (mask == 0) {
      for_each_node(3, n, s, pred, [&](std::size_t c, int, int, int) { pv[c] = pc[c]; });
      continue;
    }
    const auto& t = taps[mask];
    const double w = 1.0 / static_cast<double>(t.size());
    const auto count = for_each_node(3, n, s, pred, [&](std::size_t c, int, int, int) { pv[c] = w * tap_sum(pc, c, t); });
    interp += count * static_cast<FlopCount>(t.size());
  }

  const auto nodes = red_black_sweep(v, r, 3, p_g * r.level().spacing_sq_coeff * h * h);
  if (flops != nullptr) *flops += interp + 8 * nodes;
  return v;
}

}  // namespace dmg::baseline
