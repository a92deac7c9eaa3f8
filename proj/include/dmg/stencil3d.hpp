#pragma once

#include "dmg/field.hpp"

/// 3D kernels on the green -> red -> magenta -> blue chain. Indices are always
/// fine-grid indices; within one octave of stride s the red nodes are the
/// multiples of s with even scaled sum, magenta corners have all scaled
/// coordinates even and magenta centres all odd.
namespace dmg::stencil3d {

/// r = f - (7-point Laplacian of u), 9 flops per node.
Field residual2(const Field& u, const Field& f, double h, FlopCount* flops = nullptr);

/// (6 f + sum of 6 axis neighbours) / 12, computed once per solve.
Field mehrstellen_rhs(const Field& f, FlopCount* flops = nullptr);

/// 19-point fourth-order residual with a cached `mehrstellen_rhs`; 22 flops
/// per node (13 more than the 7-point residual).
Field residual4_cached(const Field& u, const Field& rhs_avg, double h, FlopCount* flops = nullptr);
Field residual4(const Field& u, const Field& f, double h, FlopCount* flops = nullptr);

/// Simple-cubic level (Green, or a Blue level acting as the next octave's
/// green) to the red FCC level: (6 r + 6 axis neighbours) / 12, 8 flops.
Field restrict_green_red(const Field& r, const GridLevel& target, FlopCount* flops = nullptr);

/// Red to magenta. Corners: (12 r + 12 face-diagonal neighbours) / 24, 14
/// flops. Centres are not red nodes and average their 6 axis neighbours, 6
/// flops.
Field restrict_red_magenta(const Field& r, const GridLevel& target, FlopCount* flops = nullptr);

/// Magenta to blue: (8 r + 8 body-diagonal neighbours) / 16, 10 flops.
Field restrict_magenta_blue(const Field& r, const GridLevel& target, FlopCount* flops = nullptr);

/// Blue to magenta: centres from the 8 blue corners, then the corners from the
/// updated centres; both (-4 p_m s^2 h^2 r + sum) / 8. 10 flops per node.
Field prolong_blue_magenta(const Field& v_coarse, const Field& r, double p_m, double h,
                           FlopCount* flops = nullptr);

/// Magenta to red. Face centres weight the two magenta centres along the face
/// normal twice and the four in-plane corners once:
/// (-2 p_r1 s^2 h^2 r + 2 [normal pair] + 4 corners) / 8, 9 flops. Magenta
/// corners are then refined from their 12 red neighbours:
/// (-4 p_r2 s^2 h^2 r + sum) / 12, 14 flops. Magenta centres are dropped.
Field prolong_magenta_red(const Field& v_coarse, const Field& r, double p_r1, double p_r2, double h,
                          FlopCount* flops = nullptr);

/// Red to the simple-cubic level: red-black Jacobi of the 7-point Laplacian,
/// odd-sum nodes first, (-p_g sigma^2 h^2 r + 6 axis neighbours) / 6, 8 flops.
Field prolong_red_green(const Field& v_coarse, const Field& r, double p_g, double h, FlopCount* flops = nullptr);

}  // namespace dmg::stencil3d
