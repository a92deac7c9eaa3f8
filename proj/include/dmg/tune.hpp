#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dmg/cycle.hpp"

namespace dmg {

struct NelderMeadOptions {
  int max_evals = 400;
  /// Stop when every vertex lies within x_tol (max-norm) of the best one.
  double x_tol = 1e-4;
  /// Stop when every objective value lies within f_tol of the best one.
  double f_tol = 1e-8;
};

struct NelderMeadResult {
  std::vector<double> x;
  double f = 0.0;
  int evals = 0;
};

/// Derivative-free simplex minimisation (reflection 1, expansion 2,
/// contraction 1/2, shrink 1/2). The initial simplex perturbs each coordinate
/// of x0 by 5% (0.00025 for zero coordinates). Non-finite objective values
/// count as +inf. The returned point is the best one evaluated.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                             const std::vector<double>& x0, const NelderMeadOptions& opts = {});

struct TuneResult {
  CycleParams params;
  double rho = 0.0;
  /// Objective at the starting parameters.
  double rho_start = 0.0;
  int evals = 0;
};

struct TuneOptions {
  int rate_iters = 40;
  std::uint64_t seed = 1;
  NelderMeadOptions simplex{200, 1e-3, 1e-5};
};

/// Minimises the estimated convergence factor over the configuration's
/// relaxation parameters, starting from x0 (all entries strictly positive).
/// Parameters outside (0, 3] score +inf.
TuneResult tune_params(const CycleParams& base, const Hierarchy& hierarchy, const std::vector<double>& x0,
                       const TuneOptions& opts = {});

/// Convenience form on the deepest hierarchy for n.
TuneResult tune_params(Scheme scheme, int dim, int order, int n, const std::vector<double>& x0,
                       const TuneOptions& opts = {});

/// Tunes on successively finer grids (n = 5, 9, 17, ... up to the target),
/// warm-starting each search from the previous optimum.
TuneResult tune_params_warm(const CycleParams& base, int n, const std::vector<double>& x0,
                            const TuneOptions& opts = {});

}  // namespace dmg
