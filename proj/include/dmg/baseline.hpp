#pragma once

#include "dmg/field.hpp"

/// The conventional multigrid used for comparison: factor-two coarsening,
/// full-weighting restriction, (bi/tri)linear interpolation followed by one
/// red-black Jacobi sweep on each finer level.
namespace dmg::baseline {

/// 9-point full weighting onto the axis level of twice the stride, 11 flops per
/// coarse node.
Field conv_restrict_2d(const Field& r, const GridLevel& target, FlopCount* flops = nullptr);

/// Bilinear interpolation (2 flops on edge nodes, 4 on cell centres) followed
/// by one sweep of (-p s^2 h^2 r + 4 axis neighbours) / 4, 6 flops per node.
Field conv_prolong_2d(const Field& v_coarse, const Field& r, double p, double h, FlopCount* flops = nullptr);

/// 27-point full weighting (1/8, 1/16, 1/32, 1/64), 30 flops per coarse node.
Field conv_restrict_3d(const Field& r, const GridLevel& target, FlopCount* flops = nullptr);

/// Trilinear interpolation (2, 4 or 8 flops by node type) followed by one
/// 7-point sweep with parameter p_g, 8 flops per node.
Field conv_prolong_3d(const Field& v_coarse, const Field& r, double p_g, double h, FlopCount* flops = nullptr);

}  // namespace dmg::baseline
