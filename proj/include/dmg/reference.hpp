#pragma once

#include "dmg/field.hpp"
#include "dmg/mesh.hpp"

/// Serial reference kernels. Each one scans the whole fine index space, asks
/// node_mask which nodes it owns, and spells the stencil out coordinate by
/// coordinate. They are slow and exist to check the parallel kernels; their
/// signatures mirror the parallel ones minus flop counting.
namespace dmg::reference {

Field residual2_2d(const Field& u, const Field& f, double h);
Field residual4_2d(const Field& u, const Field& f, double h);
Field restrict_axis_to_diag(const Field& r, const GridLevel& target);
Field restrict_diag_to_axis(const Field& r, const GridLevel& target);
Field prolong_jacobi2(const Field& v_coarse, const Field& r, double p, double h);

Field residual2_3d(const Field& u, const Field& f, double h);
Field residual4_3d(const Field& u, const Field& f, double h);
Field restrict_green_red(const Field& r, const GridLevel& target);
Field restrict_red_magenta(const Field& r, const GridLevel& target);
Field restrict_magenta_blue(const Field& r, const GridLevel& target);
Field prolong_blue_magenta(const Field& v_coarse, const Field& r, double p_m, double h);
Field prolong_magenta_red(const Field& v_coarse, const Field& r, double p_r1, double p_r2, double h);
Field prolong_red_green(const Field& v_coarse, const Field& r, double p_g, double h);

Field conv_restrict(const Field& r, const GridLevel& target);
Field conv_prolong(const Field& v_coarse, const Field& r, double p, double h);

}  // namespace dmg::reference
