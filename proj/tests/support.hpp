#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "dmg/field.hpp"
#include "dmg/mesh.hpp"

namespace testing {

using dmg::Field;
using dmg::GridLevel;
using dmg::Index;

inline std::vector<Index> box(int dim, int lo, int hi) {
  std::vector<Index> out;
  const int k0 = dim == 3 ? lo : 0;
  const int k1 = dim == 3 ? hi : 0;
  for (int k = k0; k <= k1; ++k)
    for (int j = lo; j <= hi; ++j)
      for (int i = lo; i <= hi; ++i) out.push_back({i, j, k});
  return out;
}

// Interior nodes of `level` whose distance to the boundary is at least `margin`.
inline std::vector<Index> inner_nodes(const GridLevel& level, int n, int margin = 1) {
  std::vector<Index> out;
  for (const Index& idx : box(level.dim, margin, n - 1 - margin)) {
    if (dmg::node_mask(level, idx)) out.push_back(idx);
  }
  return out;
}

inline Field random_field(const GridLevel& level, int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Field f(level, n);
  for (const Index& idx : inner_nodes(level, n)) f(idx) = dist(rng);
  return f;
}

inline Field constant_field(const GridLevel& level, int n, double c) {
  Field f(level, n);
  for (const Index& idx : inner_nodes(level, n)) f(idx) = c;
  return f;
}

inline Field delta(const GridLevel& level, int n, Index at) {
  Field f(level, n);
  f(at) = 1.0;
  return f;
}

inline Field combine(double a, const Field& x, double b, const Field& y) {
  Field out = x;
  for (std::size_t i = 0; i < out.size(); ++i) out.values()[i] = a * x.values()[i] + b * y.values()[i];
  return out;
}

inline double max_diff(const Field& a, const Field& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a.values()[i] - b.values()[i]));
  return d;
}

// Lattice symmetry: axis permutation followed by reflections x -> n-1-x.
struct Symmetry {
  std::array<int, 3> perm{0, 1, 2};
  std::array<bool, 3> flip{false, false, false};
};

inline std::vector<Symmetry> symmetry_group(int dim) {
  std::vector<Symmetry> out;
  std::array<int, 3> perm{0, 1, 2};
  do {
    if (dim == 2 && perm[2] != 2) continue;
    for (int mask = 0; mask < (1 << dim); ++mask) {
      Symmetry s;
      s.perm = perm;
      for (int a = 0; a < dim; ++a) s.flip[a] = (mask >> a) & 1;
      out.push_back(s);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

inline Index act(const Symmetry& s, const Index& idx, int n, int dim) {
  Index out{0, 0, 0};
  for (int a = 0; a < dim; ++a) {
    const int v = idx[s.perm[a]];
    out[a] = s.flip[a] ? n - 1 - v : v;
  }
  return out;
}

inline Field transform(const Symmetry& s, const Field& f) {
  Field out(f.level(), f.n());
  for (const Index& idx : box(f.dim(), 0, f.n() - 1)) out(act(s, idx, f.n(), f.dim())) = f(idx);
  return out;
}

// Dense matrix of the 5- or 7-point Laplacian (second
// order) or the compact fourth-order operator over interior unknowns, in
// lexicographic order, with the matching f-average in rhs_avg.
struct DenseSystem {
  Eigen::MatrixXd lap;
  Eigen::MatrixXd rhs_avg;
  std::vector<Index> nodes;
};

inline DenseSystem dense_system(int dim, int n, int order) {
  DenseSystem sys;
  sys.nodes = box(dim, 1, n - 2);
  const auto count = static_cast<Eigen::Index>(sys.nodes.size());
  const double h = 1.0 / (n - 1);
  sys.lap = Eigen::MatrixXd::Zero(count, count);
  sys.rhs_avg = Eigen::MatrixXd::Zero(count, count);
  const int m = n - 2;
  const auto id = [&](int i, int j, int k) -> Eigen::Index {
    if (i < 1 || j < 1 || i > m || j > m) return -1;
    if (dim == 3 && (k < 1 || k > m)) return -1;
    return dim == 2 ? (j - 1) * m + (i - 1) : ((k - 1) * m + (j - 1)) * m + (i - 1);
  };
  for (Eigen::Index row = 0; row < count; ++row) {
    const Index& c = sys.nodes[static_cast<std::size_t>(row)];
    const auto add = [&](Eigen::MatrixXd& mat, int di, int dj, int dk, double w) {
      const Eigen::Index col = id(c[0] + di, c[1] + dj, c[2] + dk);
      if (col >= 0) mat(row, col) += w;
    };
    const std::vector<Index> axis =
        dim == 2 ? std::vector<Index>{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}}
                 : std::vector<Index>{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    if (order == 2) {
      add(sys.lap, 0, 0, 0, -2.0 * dim / (h * h));
      for (const Index& o : axis) add(sys.lap, o[0], o[1], o[2], 1.0 / (h * h));
      add(sys.rhs_avg, 0, 0, 0, 1.0);
    } else if (dim == 2) {
      add(sys.lap, 0, 0, 0, -20.0 / (6 * h * h));
      for (const Index& o : axis) add(sys.lap, o[0], o[1], o[2], 4.0 / (6 * h * h));
      for (int a : {-1, 1})
        for (int b : {-1, 1}) add(sys.lap, a, b, 0, 1.0 / (6 * h * h));
      add(sys.rhs_avg, 0, 0, 0, 8.0 / 12);
      for (const Index& o : axis) add(sys.rhs_avg, o[0], o[1], o[2], 1.0 / 12);
    } else {
      add(sys.lap, 0, 0, 0, -24.0 / (6 * h * h));
      for (const Index& o : axis) add(sys.lap, o[0], o[1], o[2], 2.0 / (6 * h * h));
      for (int a : {-1, 1})
        for (int b : {-1, 1}) {
          add(sys.lap, a, b, 0, 1.0 / (6 * h * h));
          add(sys.lap, a, 0, b, 1.0 / (6 * h * h));
          add(sys.lap, 0, a, b, 1.0 / (6 * h * h));
        }
      add(sys.rhs_avg, 0, 0, 0, 6.0 / 12);
      for (const Index& o : axis) add(sys.rhs_avg, o[0], o[1], o[2], 1.0 / 12);
    }
  }
  return sys;
}

// Solves the discrete problem for f given on the finest level of a grid.
inline Field dense_solve(const Field& f, int order) {
  const DenseSystem sys = dense_system(f.dim(), f.n(), order);
  Eigen::VectorXd b(static_cast<Eigen::Index>(sys.nodes.size()));
  for (std::size_t i = 0; i < sys.nodes.size(); ++i) b(static_cast<Eigen::Index>(i)) = f(sys.nodes[i]);
  const Eigen::VectorXd x = sys.lap.partialPivLu().solve(sys.rhs_avg * b);
  Field u(f.level(), f.n());
  for (std::size_t i = 0; i < sys.nodes.size(); ++i) u(sys.nodes[i]) = x(static_cast<Eigen::Index>(i));
  return u;
}

}  // namespace testing

namespace testing {

// Solves sum_taps v(x + t) - diag * v(x) = rhs(x) over the interior nodes of
// `level` (neighbours outside the interior are zero).
inline Field dense_level_solve(const dmg::GridLevel& level, int n, const std::vector<Index>& taps, double diag,
                               const Field& rhs) {
  const auto nodes = inner_nodes(level, n);
  std::vector<long> id(static_cast<std::size_t>(n * n * (level.dim == 3 ? n : 1)), -1);
  Field probe(level, n);
  for (std::size_t i = 0; i < nodes.size(); ++i) id[probe.index(nodes[i][0], nodes[i][1], nodes[i][2])] = long(i);
  const auto count = static_cast<Eigen::Index>(nodes.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(count, count);
  Eigen::VectorXd b(count);
  for (Eigen::Index row = 0; row < count; ++row) {
    const Index& c = nodes[static_cast<std::size_t>(row)];
    a(row, row) = -diag;
    b(row) = rhs(c);
    for (const Index& t : taps) {
      const Index q{c[0] + t[0], c[1] + t[1], c[2] + t[2]};
      bool inside = true;
      for (int d = 0; d < level.dim; ++d) inside = inside && q[d] > 0 && q[d] < n - 1;
      if (!inside) continue;
      const long col = id[probe.index(q[0], q[1], q[2])];
      if (col >= 0) a(row, col) += 1.0;
    }
  }
  const Eigen::VectorXd x = a.partialPivLu().solve(b);
  Field v(level, n);
  for (std::size_t i = 0; i < nodes.size(); ++i) v(nodes[i]) = x(static_cast<Eigen::Index>(i));
  return v;
}

inline std::vector<Index> scaled(std::vector<Index> taps, int s) {
  for (Index& t : taps)
    for (int& x : t) x *= s;
  return taps;
}

inline const std::vector<Index> kAxis2{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}};
inline const std::vector<Index> kDiag2{{1, 1, 0}, {1, -1, 0}, {-1, 1, 0}, {-1, -1, 0}};
inline const std::vector<Index> kAxis3{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
inline const std::vector<Index> kBody3{{1, 1, 1},   {1, 1, -1},  {1, -1, 1},  {1, -1, -1},
                                       {-1, 1, 1},  {-1, 1, -1}, {-1, -1, 1}, {-1, -1, -1}};

}  // namespace testing
