#include "dmg/reference.hpp"

#include <cstdlib>
#include <stdexcept>

namespace dmg::reference {

namespace {

bool inside(const Field& f, const Index& x) {
  for (int d = 0; d < f.dim(); ++d) {
    if (x[d] < 0 || x[d] > f.n() - 1) return false;
  }
  return true;
}

bool interior(const Field& f, const Index& x) {
  for (int d = 0; d < f.dim(); ++d) {
    if (x[d] <= 0 || x[d] >= f.n() - 1) return false;
  }
  return true;
}

double at(const Field& f, const Index& x) { return inside(f, x) ? f(x) : 0.0; }

Index shift(Index x, int di, int dj, int dk, int s) {
  x[0] += di * s;
  x[1] += dj * s;
  x[2] += dk * s;
  return x;
}

template <class Fn>
void for_all(int dim, int n, Fn fn) {
  const int kn = dim == 3 ? n : 1;
  for (int k = 0; k < kn; ++k) {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) fn(Index{i, j, k});
    }
  }
}

/// Nodes of `level` inside the domain interior.
template <class Fn>
void for_level(const Field& f, const GridLevel& level, Fn fn) {
  for_all(f.dim(), f.n(), [&](const Index& x) {
    if (interior(f, x) && node_mask(level, x)) fn(x);
  });
}

double sum_axis(const Field& f, const Index& x, int s) {
  double sum = 0.0;
  for (int d = 0; d < f.dim(); ++d) {
    Index lo = x, hi = x;
    lo[d] -= s;
    hi[d] += s;
    sum += at(f, lo) + at(f, hi);
  }
  return sum;
}

/// Sum over neighbours at (+-s, +-s) in every pair of axes.
double sum_face_diagonal(const Field& f, const Index& x, int s) {
  double sum = 0.0;
  for (int d0 = 0; d0 < f.dim(); ++d0) {
    for (int d1 = d0 + 1; d1 < f.dim(); ++d1) {
      for (int s0 : {-1, 1}) {
        for (int s1 : {-1, 1}) {
          Index y = x;
          y[d0] += s0 * s;
          y[d1] += s1 * s;
          sum += at(f, y);
        }
      }
    }
  }
  return sum;
}

double sum_body_diagonal(const Field& f, const Index& x, int s) {
  double sum = 0.0;
  for (int a : {-1, 1}) {
    for (int b : {-1, 1}) {
      for (int c : {-1, 1}) sum += at(f, shift(x, a, b, c, s));
    }
  }
  return sum;
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string(what) + ": level mismatch");
}

}  // namespace

// ---------------------------------------------------------------------------
// 2D

Field residual2_2d(const Field& u, const Field& f, double h) {
  Field r(u.level(), u.n());
  for_level(u, u.level(), [&](const Index& x) {
    const double lap = (at(u, shift(x, 1, 0, 0, 1)) + at(u, shift(x, -1, 0, 0, 1)) + at(u, shift(x, 0, 1, 0, 1)) +
                        at(u, shift(x, 0, -1, 0, 1)) - 4.0 * u(x)) /
                       (h * h);
    r(x) = f(x) - lap;
  });
  return r;
}

Field residual4_2d(const Field& u, const Field& f, double h) {
  Field r(u.level(), u.n());
  for_level(u, u.level(), [&](const Index& x) {
    const double favg = (8.0 * f(x) + at(f, shift(x, 1, 0, 0, 1)) + at(f, shift(x, 0, 1, 0, 1)) +
                         at(f, shift(x, -1, 0, 0, 1)) + at(f, shift(x, 0, -1, 0, 1))) /
                        12.0;
    const double bracket = -20.0 * u(x) +
                           4.0 * (at(u, shift(x, 0, -1, 0, 1)) + at(u, shift(x, 0, 1, 0, 1)) +
                                  at(u, shift(x, -1, 0, 0, 1)) + at(u, shift(x, 1, 0, 0, 1))) +
                           at(u, shift(x, 1, 1, 0, 1)) + at(u, shift(x, -1, 1, 0, 1)) + at(u, shift(x, -1, -1, 0, 1)) +
                           at(u, shift(x, 1, -1, 0, 1));
    r(x) = favg - bracket / (6.0 * h * h);
  });
  return r;
}

Field restrict_axis_to_diag(const Field& r, const GridLevel& target) {
  require(r.level().klass == LevelClass::Axis && target.klass == LevelClass::Diagonal, "restrict_axis_to_diag");
  const int s = r.level().stride;
  Field out(target, r.n());
  for_level(r, target, [&](const Index& x) { out(x) = (4.0 * r(x) + sum_axis(r, x, s)) / 8.0; });
  return out;
}

Field restrict_diag_to_axis(const Field& r, const GridLevel& target) {
  require(r.level().klass == LevelClass::Diagonal && target.klass == LevelClass::Axis, "restrict_diag_to_axis");
  const int s = r.level().stride;
  Field out(target, r.n());
  for_level(r, target, [&](const Index& x) { out(x) = (4.0 * r(x) + sum_face_diagonal(r, x, s)) / 8.0; });
  return out;
}

Field prolong_jacobi2(const Field& v_coarse, const Field& r, double p, double h) {
  const GridLevel& target = r.level();
  const GridLevel& coarse = v_coarse.level();
  const int s = target.stride;
  const bool to_axis = target.klass == LevelClass::Axis;
  const double coeff = p * target.spacing_sq_coeff * h * h;
  const auto neighbours = [&](const Field& f, const Index& x) {
    return to_axis ? sum_axis(f, x, s) : sum_face_diagonal(f, x, s);
  };
  Field v(target, r.n());
  for_level(r, target, [&](const Index& x) {
    if (!node_mask(coarse, x)) v(x) = (-coeff * r(x) + neighbours(v_coarse, x)) / 4.0;
  });
  for_level(r, target, [&](const Index& x) {
    if (node_mask(coarse, x)) v(x) = (-coeff * r(x) + neighbours(v, x)) / 4.0;
  });
  return v;
}

// ---------------------------------------------------------------------------
// 3D

Field residual2_3d(const Field& u, const Field& f, double h) {
  Field r(u.level(), u.n());
  for_level(u, u.level(), [&](const Index& x) { r(x) = f(x) - (sum_axis(u, x, 1) - 6.0 * u(x)) / (h * h); });
  return r;
}

Field residual4_3d(const Field& u, const Field& f, double h) {
  Field r(u.level(), u.n());
  for_level(u, u.level(), [&](const Index& x) {
    const double favg = (6.0 * f(x) + sum_axis(f, x, 1)) / 12.0;
    const double bracket = -24.0 * u(x) + 2.0 * sum_axis(u, x, 1) + sum_face_diagonal(u, x, 1);
    r(x) = favg - bracket / (6.0 * h * h);
  });
  return r;
}

Field restrict_green_red(const Field& r, const GridLevel& target) {
  require(r.level().is_cubic() && target.klass == LevelClass::Red, "restrict_green_red");
  const int s = target.stride;
  Field out(target, r.n());
  for_level(r, target, [&](const Index& x) { out(x) = (6.0 * r(x) + sum_axis(r, x, s)) / 12.0; });
  return out;
}

Field restrict_red_magenta(const Field& r, const GridLevel& target) {
  require(r.level().klass == LevelClass::Red && target.klass == LevelClass::Magenta, "restrict_red_magenta");
  const int s = target.stride;
  Field out(target, r.n());
  for_level(r, target, [&](const Index& x) {
    if (node_mask(r.level(), x)) {
      out(x) = (12.0 * r(x) + sum_face_diagonal(r, x, s)) / 24.0;
    } else {
      out(x) = sum_axis(r, x, s) / 6.0;
    }
  });
  return out;
}

Field restrict_magenta_blue(const Field& r, const GridLevel& target) {
  require(r.level().klass == LevelClass::Magenta && target.klass == LevelClass::Blue, "restrict_magenta_blue");
  const int s = target.stride;
  Field out(target, r.n());
  for_level(r, target, [&](const Index& x) { out(x) = (8.0 * r(x) + sum_body_diagonal(r, x, s)) / 16.0; });
  return out;
}

Field prolong_blue_magenta(const Field& v_coarse, const Field& r, double p_m, double h) {
  const GridLevel& target = r.level();
  require(target.klass == LevelClass::Magenta && v_coarse.level().klass == LevelClass::Blue, "prolong_blue_magenta");
  const int s = target.stride;
  const double coeff = 4.0 * p_m * target.spacing_sq_coeff * h * h;
  Field v(target, r.n());
  for_level(r, target, [&](const Index& x) {
    if (!node_mask(v_coarse.level(), x)) v(x) = (-coeff * r(x) + sum_body_diagonal(v_coarse, x, s)) / 8.0;
  });
  for_level(r, target, [&](const Index& x) {
    if (node_mask(v_coarse.level(), x)) v(x) = (-coeff * r(x) + sum_body_diagonal(v, x, s)) / 8.0;
  });
  return v;
}

Field prolong_magenta_red(const Field& v_coarse, const Field& r, double p_r1, double p_r2, double h) {
  const GridLevel& target = r.level();
  const GridLevel& magenta = v_coarse.level();
  require(target.klass == LevelClass::Red && magenta.klass == LevelClass::Magenta, "prolong_magenta_red");
  const int s = target.stride;
  const double h2 = target.spacing_sq_coeff * h * h;
  Field v(target, r.n());
  for_level(r, target, [&](const Index& x) {
    if (node_mask(magenta, x)) return;
    int normal = -1;
    for (int d = 0; d < 3; ++d) {
      if ((x[d] / s) % 2 == 0) normal = d;
    }
    Index lo = x, hi = x;
    lo[normal] -= s;
    hi[normal] += s;
    const int d0 = (normal + 1) % 3;
    const int d1 = (normal + 2) % 3;
    double corners = 0.0;
    for (int s0 : {-1, 1}) {
      for (int s1 : {-1, 1}) {
        Index y = x;
        y[d0] += s0 * s;
        y[d1] += s1 * s;
        corners += at(v_coarse, y);
      }
    }
    v(x) = (-2.0 * p_r1 * h2 * r(x) + 2.0 * (at(v_coarse, lo) + at(v_coarse, hi)) + corners) / 8.0;
  });
  for_level(r, target, [&](const Index& x) {
    if (node_mask(magenta, x)) v(x) = (-4.0 * p_r2 * h2 * r(x) + sum_face_diagonal(v, x, s)) / 12.0;
  });
  return v;
}

Field prolong_red_green(const Field& v_coarse, const Field& r, double p_g, double h) {
  const GridLevel& target = r.level();
  const GridLevel& red = v_coarse.level();
  require(target.is_cubic() && red.klass == LevelClass::Red, "prolong_red_green");
  const int s = target.lattice_stride();
  const double coeff = p_g * target.spacing_sq_coeff * h * h;
  Field v(target, r.n());
  for_level(r, target, [&](const Index& x) {
    if (!node_mask(red, x)) v(x) = (-coeff * r(x) + sum_axis(v_coarse, x, s)) / 6.0;
  });
  for_level(r, target, [&](const Index& x) {
    if (node_mask(red, x)) v(x) = (-coeff * r(x) + sum_axis(v, x, s)) / 6.0;
  });
  return v;
}

// ---------------------------------------------------------------------------
// Conventional transfers, written as tensor products of 1D weights.

Field conv_restrict(const Field& r, const GridLevel& target) {
  require(r.level().is_cubic() && target.is_cubic() && target.stride == 2 * r.level().stride, "conv_restrict");
  const int s = r.level().stride;
  const int dim = r.dim();
  Field out(target, r.n());
  for_level(r, target, [&](const Index& x) {
    double sum = 0.0;
    for_all(dim, 3, [&](const Index& o) {
      double w = 1.0;
      for (int d = 0; d < dim; ++d) w *= o[d] == 1 ? 0.5 : 0.25;
      sum += w * at(r, shift(x, o[0] - 1, o[1] - 1, dim == 3 ? o[2] - 1 : 0, s));
    });
    out(x) = sum;
  });
  return out;
}

Field conv_prolong(const Field& v_coarse, const Field& r, double p, double h) {
  const GridLevel& target = r.level();
  require(target.is_cubic() && v_coarse.level().stride == 2 * target.stride, "conv_prolong");
  const int s = target.stride;
  const int dim = r.dim();
  Field v(target, r.n());
  for_level(r, target, [&](const Index& x) {
    double sum = 0.0;
    // Corners of the coarse cell containing x, weighted by the hat function.
    for_all(dim, 2, [&](const Index& corner) {
      Index y{};
      double w = 1.0;
      for (int d = 0; d < dim; ++d) {
        y[d] = (x[d] / (2 * s) + corner[d]) * 2 * s;
        w *= 1.0 - std::abs(x[d] - y[d]) / (2.0 * s);
      }
      if (w != 0.0) sum += w * at(v_coarse, y);
    });
    v(x) = sum;
  });
  const double coeff = p * target.spacing_sq_coeff * h * h;
  for (int colour : {1, 0}) {
    for_level(r, target, [&](const Index& x) {
      if (((x[0] + x[1] + x[2]) / s) % 2 == colour) v(x) = (-coeff * r(x) + sum_axis(v, x, s)) / (2.0 * dim);
    });
  }
  return v;
}

}  // namespace dmg::reference
