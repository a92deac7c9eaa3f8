#pragma once

#include "dmg/field.hpp"

/// 2D kernels on the diagonal hierarchy. All kernels are pure: inputs are read
/// only and the result is a fresh Field. Passing a FlopCount pointer adds the
/// cost-model flops (per processed node) to it.
namespace dmg::stencil2d {

/// r = f - (5-point Laplacian of u), 7 flops per node.
Field residual2(const Field& u, const Field& f, double h, FlopCount* flops = nullptr);

/// The right-hand-side combination (8 f + sum of 4 axis neighbours) / 12 of the
/// compact fourth-order scheme. Computed once per solve.
Field mehrstellen_rhs(const Field& f, FlopCount* flops = nullptr);

/// Fourth-order residual with a precomputed `mehrstellen_rhs`, 12 flops per node.
Field residual4_cached(const Field& u, const Field& rhs_avg, double h, FlopCount* flops = nullptr);

/// Fourth-order residual from f directly.
Field residual4(const Field& u, const Field& f, double h, FlopCount* flops = nullptr);

/// Axis level (stride s) to the Diagonal level of the same stride:
/// (4 r + axis neighbours) / 8.
Field restrict_axis_to_diag(const Field& r, const GridLevel& target, FlopCount* flops = nullptr);

/// Diagonal level (stride s) to the Axis level of stride 2s:
/// (4 r + diagonal neighbours) / 8.
Field restrict_diag_to_axis(const Field& r, const GridLevel& target, FlopCount* flops = nullptr);

/// Two-colour Jacobi prolongation from the next coarser level onto r's level.
///
/// The nodes new to the fine level are computed from the coarse values, then
/// the coarse-coincident nodes are recomputed from those. Each update is
/// (-p c h^2 r + sum of the four level neighbours) / 4 with c the target
/// level's spacing coefficient (2 s^2 on a diagonal level, s^2 on an axis one).
Field prolong_jacobi2(const Field& v_coarse, const Field& r, double p, double h, FlopCount* flops = nullptr);

}  // namespace dmg::stencil2d
