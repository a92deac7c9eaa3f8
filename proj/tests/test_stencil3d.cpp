#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dmg/stencil3d.hpp"
#include "support.hpp"

using namespace dmg;
using namespace testing;

namespace {

// n = 9 levels: 6 Green/1, 5 Red/1, 4 Magenta/1, 3 Blue/1, 2 Red/2, 1 Magenta/2, 0 Blue/2.
const Hierarchy kH = build_hierarchy(3, 9, 2);
const GridLevel& green() { return kH.level(6); }
const GridLevel& red() { return kH.level(5); }
const GridLevel& magenta() { return kH.level(4); }
const GridLevel& blue() { return kH.level(3); }
const GridLevel& red2() { return kH.level(2); }

bool all_odd(const Index& i) { return i[0] % 2 && i[1] % 2 && i[2] % 2; }
bool all_even(const Index& i) { return i[0] % 2 == 0 && i[1] % 2 == 0 && i[2] % 2 == 0; }
int manhattan(const Index& a, const Index& b) {
  return std::abs(a[0] - b[0]) + std::abs(a[1] - b[1]) + std::abs(a[2] - b[2]);
}
int chebyshev(const Index& a, const Index& b) {
  return std::max({std::abs(a[0] - b[0]), std::abs(a[1] - b[1]), std::abs(a[2] - b[2])});
}

FlopCount count(const GridLevel& level, bool (*pred)(const Index&) = nullptr) {
  FlopCount c = 0;
  for (const Index& idx : inner_nodes(level, 9)) c += (!pred || pred(idx)) ? 1 : 0;
  return c;
}

double eval_residual4_at_centre(int n) {
  const Hierarchy h = build_hierarchy(3, n, 1);
  const double dx = h.h();
  Field u(h.finest(), n), f(h.finest(), n);
  for (const Index& idx : inner_nodes(h.finest(), n)) {
    const double s = idx[0] * dx + 2 * idx[1] * dx - idx[2] * dx;
    u(idx) = std::exp(s);
    f(idx) = 6.0 * std::exp(s);
  }
  const int c = (n - 1) / 2;
  return std::abs(stencil3d::residual4(u, f, dx)(c, c, c));
}

}  // namespace

TEST_SUITE("stencil3d") {
  TEST_CASE("second-order residual") {
    const double h = kH.h();
    const Field f = random_field(green(), 9, 1);
    CHECK(max_diff(stencil3d::residual2(Field(green(), 9), f, h), f) == 0.0);

    Field u(green(), 9);
    for (const Index& idx : inner_nodes(green(), 9)) {
      const double x = idx[0] * h, y = idx[1] * h, z = idx[2] * h;
      u(idx) = x * x + y * y - 2 * z * z;
    }
    const Field r = stencil3d::residual2(u, Field(green(), 9), h);
    for (const Index& idx : inner_nodes(green(), 9, 2)) CHECK(std::abs(r(idx)) < 1e-9);

    const Hierarchy small = build_hierarchy(3, 5, 1);
    const Field g = random_field(small.finest(), 5, 2);
    CHECK(stencil3d::residual2(dense_solve(g, 2), g, small.h()).max_abs() < 1e-12);
  }

  TEST_CASE("fourth-order residual") {
    const double h = kH.h();
    const Field c = constant_field(green(), 9, 3.0);
    const Field r0 = stencil3d::residual4(Field(green(), 9), c, h);
    for (const Index& idx : inner_nodes(green(), 9, 2)) CHECK(r0(idx) == doctest::Approx(3.0));
    const Field r1 = stencil3d::residual4(c, Field(green(), 9), h);
    for (const Index& idx : inner_nodes(green(), 9, 2)) CHECK(std::abs(r1(idx)) < 1e-9);

    Field u(green(), 9), f(green(), 9);
    for (const Index& idx : inner_nodes(green(), 9)) {
      const double x = idx[0] * h;
      u(idx) = x * x * x * x;
      f(idx) = 12 * x * x;
    }
    const Field r2 = stencil3d::residual4(u, f, h);
    for (const Index& idx : inner_nodes(green(), 9, 2)) CHECK(std::abs(r2(idx)) < 1e-9);

    const double coarse = eval_residual4_at_centre(17);
    const double mid = eval_residual4_at_centre(33);
    const double finer = eval_residual4_at_centre(65);
    CHECK(coarse / mid == doctest::Approx(16.0).epsilon(0.125));
    CHECK(mid / finer == doctest::Approx(16.0).epsilon(0.125));

    const Hierarchy small = build_hierarchy(3, 5, 1);
    const Field g = random_field(small.finest(), 5, 3);
    CHECK(stencil3d::residual4(dense_solve(g, 4), g, small.h()).max_abs() < 1e-12);

    const Field avg = stencil3d::mehrstellen_rhs(f);
    CHECK(max_diff(stencil3d::residual4_cached(u, avg, h), r2) < 1e-12);
  }

  TEST_CASE("residual flop counts") {
    const Field u = random_field(green(), 9, 4);
    FlopCount a = 0, b = 0, c = 0;
    stencil3d::residual2(u, u, kH.h(), &a);
    const Field avg = stencil3d::mehrstellen_rhs(u, &b);
    stencil3d::residual4_cached(u, avg, kH.h(), &c);
    CHECK(a == 9 * count(green()));
    CHECK(b == 8 * count(green()));
    CHECK(c == 22 * count(green()));
  }

  TEST_CASE("green to red restriction") {
    const Field rc = stencil3d::restrict_green_red(constant_field(green(), 9, 2.0), red());
    for (const Index& idx : inner_nodes(red(), 9, 2)) CHECK(rc(idx) == doctest::Approx(2.0));

    const Index q{3, 4, 4};
    const Field from_green = stencil3d::restrict_green_red(delta(green(), 9, q), red());
    for (const Index& idx : inner_nodes(red(), 9)) CHECK(from_green(idx) == doctest::Approx(manhattan(idx, q) == 1 ? 1.0 / 12 : 0.0));
    const Field from_red = stencil3d::restrict_green_red(delta(green(), 9, {4, 3, 3}), red());
    for (const Index& idx : inner_nodes(red(), 9)) {
      CHECK(from_red(idx) == doctest::Approx(idx == Index{4, 3, 3} ? 0.5 : 0.0));
    }
    FlopCount flops = 0;
    stencil3d::restrict_green_red(delta(green(), 9, q), red(), &flops);
    CHECK(flops == 8 * count(red()));
  }

  TEST_CASE("red to magenta restriction") {
    const Field rc = stencil3d::restrict_red_magenta(constant_field(red(), 9, -1.0), magenta());
    for (const Index& idx : inner_nodes(magenta(), 9, 2)) CHECK(rc(idx) == doctest::Approx(-1.0));

    const Index face{4, 3, 3};
    const Field out = stencil3d::restrict_red_magenta(delta(red(), 9, face), magenta());
    for (const Index& idx : inner_nodes(magenta(), 9)) {
      double expected = 0.0;
      if (all_odd(idx) && manhattan(idx, face) == 1) expected = 1.0 / 6;
      if (all_even(idx) && manhattan(idx, face) == 2 && idx[0] == 4) expected = 1.0 / 24;
      CHECK(out(idx) == doctest::Approx(expected));
    }
    const Field corner = stencil3d::restrict_red_magenta(delta(red(), 9, {4, 4, 4}), magenta());
    for (const Index& idx : inner_nodes(magenta(), 9)) {
      CHECK(corner(idx) == doctest::Approx(idx == Index{4, 4, 4} ? 0.5 : 0.0));
    }
    FlopCount flops = 0;
    stencil3d::restrict_red_magenta(delta(red(), 9, face), magenta(), &flops);
    CHECK(flops == 14 * count(magenta(), all_even) + 6 * count(magenta(), all_odd));
  }

  TEST_CASE("magenta to blue restriction") {
    const Field rc = stencil3d::restrict_magenta_blue(constant_field(magenta(), 9, 4.0), blue());
    for (const Index& idx : inner_nodes(blue(), 9, 2)) CHECK(rc(idx) == doctest::Approx(4.0));

    const Field out = stencil3d::restrict_magenta_blue(delta(magenta(), 9, {3, 3, 3}), blue());
    for (const Index& idx : inner_nodes(blue(), 9)) {
      CHECK(out(idx) == doctest::Approx(chebyshev(idx, {3, 3, 3}) == 1 ? 1.0 / 16 : 0.0));
    }
    FlopCount flops = 0;
    stencil3d::restrict_magenta_blue(delta(magenta(), 9, {3, 3, 3}), blue(), &flops);
    CHECK(flops == 10 * count(blue()));
  }

  TEST_CASE("full green to blue chain preserves constants") {
    const Hierarchy h = build_hierarchy(3, 17, 2);
    const int top = h.depth() - 1;
    Field r = constant_field(h.level(top), 17, 1.0);
    r = stencil3d::restrict_green_red(r, h.level(top - 1));
    r = stencil3d::restrict_red_magenta(r, h.level(top - 2));
    r = stencil3d::restrict_magenta_blue(r, h.level(top - 3));
    CHECK(r(8, 8, 8) == doctest::Approx(1.0));
    CHECK(r(6, 8, 8) == doctest::Approx(1.0));
  }

  TEST_CASE("blue to magenta prolongation") {
    const double h = kH.h();
    CHECK(stencil3d::prolong_blue_magenta(Field(blue(), 9), Field(magenta(), 9), 1.0, h).max_abs() == 0.0);
    const Field v = stencil3d::prolong_blue_magenta(delta(blue(), 9, {4, 4, 4}), Field(magenta(), 9), 1.0, h);
    for (const Index& idx : inner_nodes(magenta(), 9)) {
      if (all_odd(idx)) CHECK(v(idx) == doctest::Approx(chebyshev(idx, {4, 4, 4}) == 1 ? 0.125 : 0.0));
    }
    CHECK(v(4, 4, 4) == doctest::Approx(0.125));
    const Field w = stencil3d::prolong_blue_magenta(Field(blue(), 9), delta(magenta(), 9, {3, 3, 3}), 1.0, h);
    CHECK(w(3, 3, 3) == doctest::Approx(-h * h / 2));
    FlopCount flops = 0;
    stencil3d::prolong_blue_magenta(Field(blue(), 9), Field(magenta(), 9), 1.0, h, &flops);
    CHECK(flops == 10 * count(magenta()));
  }

  TEST_CASE("magenta to red prolongation") {
    const double h = kH.h();
    CHECK(stencil3d::prolong_magenta_red(Field(magenta(), 9), Field(red(), 9), 1.0, 1.0, h).max_abs() == 0.0);
    const Index c{3, 3, 3};
    const Field v = stencil3d::prolong_magenta_red(delta(magenta(), 9, c), Field(red(), 9), 1.0, 1.0, h);
    for (const Index& idx : inner_nodes(red(), 9)) {
      if (!all_even(idx)) CHECK(v(idx) == doctest::Approx(manhattan(idx, c) == 1 ? 0.25 : 0.0));
    }
    // (2,1,1) has its normal along x: doubled (1,1,1) and (3,1,1), single corners.
    const Field from_centre = stencil3d::prolong_magenta_red(delta(magenta(), 9, {1, 1, 1}), Field(red(), 9), 1.0, 1.0, h);
    CHECK(from_centre(2, 1, 1) == doctest::Approx(0.25));
    const Field from_corner = stencil3d::prolong_magenta_red(delta(magenta(), 9, {2, 2, 2}), Field(red(), 9), 1.0, 1.0, h);
    CHECK(from_corner(2, 1, 1) == doctest::Approx(0.125));
    CHECK(from_corner(1, 2, 1) == doctest::Approx(0.125));
    // Centres are not red nodes, so a coarse centre value is not copied.
    CHECK(v(3, 3, 3) == 0.0);

    const Field rf = stencil3d::prolong_magenta_red(Field(magenta(), 9), delta(red(), 9, {2, 1, 1}), 1.0, 1.0, h);
    CHECK(rf(2, 1, 1) == doctest::Approx(-2 * h * h / 8));
    const Field rc = stencil3d::prolong_magenta_red(Field(magenta(), 9), delta(red(), 9, {4, 4, 4}), 1.0, 1.0, h);
    CHECK(rc(4, 4, 4) == doctest::Approx(-4 * h * h / 12));

    FlopCount flops = 0;
    stencil3d::prolong_magenta_red(Field(magenta(), 9), Field(red(), 9), 1.0, 1.0, h, &flops);
    CHECK(flops == 9 * (count(red()) - count(red(), all_even)) + 14 * count(red(), all_even));
  }

  TEST_CASE("red to green prolongation") {
    const double h = kH.h();
    CHECK(stencil3d::prolong_red_green(Field(red(), 9), Field(green(), 9), 1.0, h).max_abs() == 0.0);
    const Field v = stencil3d::prolong_red_green(delta(red(), 9, {4, 4, 4}), Field(green(), 9), 1.0, h);
    for (const Index& idx : inner_nodes(green(), 9)) {
      if ((idx[0] + idx[1] + idx[2]) % 2) CHECK(v(idx) == doctest::Approx(manhattan(idx, {4, 4, 4}) == 1 ? 1.0 / 6 : 0.0));
    }
    CHECK(v(4, 4, 4) == doctest::Approx(1.0 / 6));
    const Field w = stencil3d::prolong_red_green(Field(red(), 9), delta(green(), 9, {3, 4, 4}), 1.0, h);
    CHECK(w(3, 4, 4) == doctest::Approx(-h * h / 6));
    FlopCount flops = 0;
    stencil3d::prolong_red_green(Field(red(), 9), Field(green(), 9), 1.0, h, &flops);
    CHECK(flops == 8 * count(green()));
  }

  TEST_CASE("prolongations reproduce level solutions at p = 1") {
    const double h = kH.h();
    {
      const Field r = random_field(green(), 9, 5);
      Field rhs = r;
      for (double& x : rhs.values()) x *= h * h;
      const Field exact = dense_level_solve(green(), 9, kAxis3, 6.0, rhs);
      Field coarse(red(), 9);
      for (const Index& idx : inner_nodes(red(), 9)) coarse(idx) = exact(idx);
      CHECK(max_diff(stencil3d::prolong_red_green(coarse, r, 1.0, h), exact) < 1e-12);
    }
    {
      const Field r = random_field(magenta(), 9, 6);
      Field rhs = r;
      for (double& x : rhs.values()) x *= 4 * h * h;
      const Field exact = dense_level_solve(magenta(), 9, kBody3, 8.0, rhs);
      Field coarse(blue(), 9);
      for (const Index& idx : inner_nodes(blue(), 9)) coarse(idx) = exact(idx);
      CHECK(max_diff(stencil3d::prolong_blue_magenta(coarse, r, 1.0, h), exact) < 1e-12);
    }
  }

  TEST_CASE("level and parameter validation") {
    const Field g = random_field(green(), 9, 7);
    CHECK_THROWS_AS(stencil3d::restrict_green_red(g, magenta()), std::invalid_argument);
    CHECK_THROWS_AS(stencil3d::restrict_red_magenta(g, magenta()), std::invalid_argument);
    CHECK_THROWS_AS(stencil3d::restrict_magenta_blue(g, blue()), std::invalid_argument);
    CHECK_THROWS_AS(stencil3d::prolong_red_green(Field(red(), 9), g, 0.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(stencil3d::prolong_red_green(Field(magenta(), 9), g, 1.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(stencil3d::prolong_blue_magenta(Field(blue(), 9), Field(magenta(), 9), -1.0, 0.1),
                    std::invalid_argument);
    CHECK_THROWS_AS(stencil3d::prolong_magenta_red(Field(magenta(), 9), Field(red(), 9), 1.0, 0.0, 0.1),
                    std::invalid_argument);
    // Blue of one octave restricts onward as the green of the next.
    CHECK_NOTHROW(stencil3d::restrict_green_red(random_field(blue(), 9, 8), red2()));
  }

  TEST_CASE("kernels are linear and commute with the cube's symmetries") {
    const double h = kH.h();
    const Field u = random_field(green(), 9, 10), f = random_field(green(), 9, 11);
    const Field rr = random_field(red(), 9, 12), rm = random_field(magenta(), 9, 13);
    const Field rb = random_field(blue(), 9, 14);
    const Field u2 = random_field(green(), 9, 15), rr2 = random_field(red(), 9, 16);

    const double a = 0.4, b = 2.1;
    CHECK(max_diff(stencil3d::residual4(combine(a, u, b, u2), combine(a, f, b, u), h),
                   combine(a, stencil3d::residual4(u, f, h), b, stencil3d::residual4(u2, u, h))) < 1e-8);
    CHECK(max_diff(stencil3d::restrict_red_magenta(combine(a, rr, b, rr2), magenta()),
                   combine(a, stencil3d::restrict_red_magenta(rr, magenta()), b,
                           stencil3d::restrict_red_magenta(rr2, magenta()))) < 1e-12);
    CHECK(max_diff(stencil3d::prolong_magenta_red(combine(a, rm, b, rm), combine(a, rr, b, rr2), 1.1, 0.9, h),
                   combine(a, stencil3d::prolong_magenta_red(rm, rr, 1.1, 0.9, h), b,
                           stencil3d::prolong_magenta_red(rm, rr2, 1.1, 0.9, h))) < 1e-12);

    const auto group = symmetry_group(3);
    REQUIRE(group.size() == 48);
    for (const Symmetry& g : group) {
      const auto t = [&](const Field& x) { return transform(g, x); };
      CHECK(max_diff(stencil3d::residual2(t(u), t(f), h), t(stencil3d::residual2(u, f, h))) < 1e-9);
      CHECK(max_diff(stencil3d::residual4(t(u), t(f), h), t(stencil3d::residual4(u, f, h))) < 1e-9);
      CHECK(max_diff(stencil3d::restrict_green_red(t(u), red()), t(stencil3d::restrict_green_red(u, red()))) < 1e-12);
      CHECK(max_diff(stencil3d::restrict_red_magenta(t(rr), magenta()),
                     t(stencil3d::restrict_red_magenta(rr, magenta()))) < 1e-12);
      CHECK(max_diff(stencil3d::restrict_magenta_blue(t(rm), blue()),
                     t(stencil3d::restrict_magenta_blue(rm, blue()))) < 1e-12);
      CHECK(max_diff(stencil3d::prolong_blue_magenta(t(rb), t(rm), 1.2, h),
                     t(stencil3d::prolong_blue_magenta(rb, rm, 1.2, h))) < 1e-12);
      CHECK(max_diff(stencil3d::prolong_magenta_red(t(rm), t(rr), 1.3, 0.8, h),
                     t(stencil3d::prolong_magenta_red(rm, rr, 1.3, 0.8, h))) < 1e-12);
      CHECK(max_diff(stencil3d::prolong_red_green(t(rr), t(u), 0.9, h),
                     t(stencil3d::prolong_red_green(rr, u, 0.9, h))) < 1e-12);
    }
  }
}
