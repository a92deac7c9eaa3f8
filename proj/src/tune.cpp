#include "dmg/tune.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "dmg/analysis.hpp"

namespace dmg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Point = std::vector<double>;

Point affine(const Point& base, const Point& toward, double t) {
  Point out(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) out[i] = base[i] + t * (toward[i] - base[i]);
  return out;
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                             const std::vector<double>& x0, const NelderMeadOptions& opts) {
  const std::size_t dim = x0.size();
  if (dim == 0) throw std::invalid_argument("nelder_mead needs at least one coordinate");

  NelderMeadResult best{x0, kInf, 0};
  const auto eval = [&](const Point& x) {
    double f = objective(x);
    if (!std::isfinite(f)) f = kInf;
    ++best.evals;
    if (f < best.f) {
      best.f = f;
      best.x = x;
    }
    return f;
  };

  const double f0 = eval(x0);
  if (!std::isfinite(f0)) throw std::invalid_argument("nelder_mead: objective is not finite at the start point");

  std::vector<Point> simplex{x0};
  std::vector<double> values{f0};
  for (std::size_t i = 0; i < dim; ++i) {
    Point x = x0;
    x[i] = x[i] != 0.0 ? 1.05 * x[i] : 0.00025;
    simplex.push_back(x);
    values.push_back(eval(x));
  }

  std::vector<std::size_t> order(dim + 1);
  while (best.evals < opts.max_evals) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    {
      std::vector<Point> s2;
      std::vector<double> v2;
      for (std::size_t i : order) {
        s2.push_back(simplex[i]);
        v2.push_back(values[i]);
      }
      simplex = std::move(s2);
      values = std::move(v2);
    }

    double diameter = 0.0;
    double spread = 0.0;
    for (std::size_t i = 1; i <= dim; ++i) {
      for (std::size_t k = 0; k < dim; ++k) diameter = std::max(diameter, std::abs(simplex[i][k] - simplex[0][k]));
      spread = std::max(spread, std::abs(values[i] - values[0]));
    }
    if (diameter <= opts.x_tol || (std::isfinite(spread) && spread <= opts.f_tol)) break;

    Point centroid(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t k = 0; k < dim; ++k) centroid[k] += simplex[i][k] / static_cast<double>(dim);
    }
    const Point& worst = simplex[dim];
    const Point reflected = affine(centroid, worst, -1.0);
    const double fr = eval(reflected);

    if (fr < values[0]) {
      const Point expanded = affine(centroid, worst, -2.0);
      const double fe = eval(expanded);
      if (fe < fr) {
        simplex[dim] = expanded;
        values[dim] = fe;
      } else {
        simplex[dim] = reflected;
        values[dim] = fr;
      }
      continue;
    }
    if (fr < values[dim - 1]) {
      simplex[dim] = reflected;
      values[dim] = fr;
      continue;
    }

    bool shrink = false;
    if (fr < values[dim]) {
      const Point outside = affine(centroid, worst, -0.5);
      const double fc = eval(outside);
      if (fc <= fr) {
        simplex[dim] = outside;
        values[dim] = fc;
      } else {
        shrink = true;
      }
    } else {
      const Point inside = affine(centroid, worst, 0.5);
      const double fcc = eval(inside);
      if (fcc < values[dim]) {
        simplex[dim] = inside;
        values[dim] = fcc;
      } else {
        shrink = true;
      }
    }
    if (shrink) {
      for (std::size_t i = 1; i <= dim && best.evals < opts.max_evals; ++i) {
        simplex[i] = affine(simplex[0], simplex[i], 0.5);
        values[i] = eval(simplex[i]);
      }
    }
  }
  return best;
}

TuneResult tune_params(const CycleParams& base, const Hierarchy& hierarchy, const std::vector<double>& x0,
                       const TuneOptions& opts) {
  if (x0.size() != base.relax_count()) {
    throw std::invalid_argument("tune_params: expected " + std::to_string(base.relax_count()) + " start values");
  }
  for (double x : x0) {
    if (!(x > 0.0)) throw std::invalid_argument("tune_params: start values must be strictly positive");
  }
  const auto objective = [&](const std::vector<double>& x) {
    for (double v : x) {
      if (!(v > 0.0) || v > 3.0) return kInf;
    }
    const ConvergenceReport report = estimate_rate(base.with_relax(x), hierarchy, opts.rate_iters, opts.seed);
    return report.divergent ? kInf : report.rho;
  };
  TuneResult result;
  result.rho_start = objective(x0);
  const NelderMeadResult nm = nelder_mead(objective, x0, opts.simplex);
  result.params = base.with_relax(nm.x);
  result.rho = nm.f;
  result.evals = nm.evals;
  return result;
}

TuneResult tune_params(Scheme scheme, int dim, int order, int n, const std::vector<double>& x0,
                       const TuneOptions& opts) {
  CycleParams base;
  base.scheme = scheme;
  base.dim = dim;
  base.residual_order = order;
  return tune_params(base, build_hierarchy(dim, n, max_doublings(n), scheme), x0, opts);
}

TuneResult tune_params_warm(const CycleParams& base, int n, const std::vector<double>& x0, const TuneOptions& opts) {
  if (max_doublings(n) < 1) throw std::invalid_argument("tune_params_warm: bad grid size");
  std::vector<double> start = x0;
  TuneResult result;
  for (int m = 5; m <= n; m = 2 * m - 1) {
    result = tune_params(base, build_hierarchy(base.dim, m, max_doublings(m), base.scheme), start, opts);
    start = result.params.relax();
  }
  return result;
}

}  // namespace dmg
