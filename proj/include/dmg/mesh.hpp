#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace dmg {

/// Which family of grids a hierarchy is built from.
enum class Scheme { Diagonal, Conventional };

/// Level classes. 2D uses Axis/Diagonal; 3D uses the simple-cubic (Green),
/// face-centred (Red), body-centred (Magenta) and coarse simple-cubic (Blue)
/// lattices.
enum class LevelClass { Axis, Diagonal, Green, Red, Magenta, Blue };

std::string to_string(Scheme scheme);
std::string to_string(LevelClass klass);

using Index = std::array<int, 3>;

/// One level of a grid hierarchy, described as a node-membership rule over the
/// finest grid's integer index space.
///
/// `stride` is the octave stride s. Axis/Green nodes are the multiples of s;
/// Diagonal and Red nodes are the multiples of s whose scaled coordinate sum is
/// even; Magenta nodes are the multiples of s whose scaled coordinates share a
/// parity; Blue nodes are the multiples of 2s.
struct GridLevel {
  int dim = 2;
  int level = 0;
  LevelClass klass = LevelClass::Axis;
  int stride = 1;
  /// Squared length scale of the level's Jacobi formula in units of h^2.
  double spacing_sq_coeff = 1.0;

  /// Spacing of the simple (square or cubic) lattice underlying the level.
  int lattice_stride() const { return klass == LevelClass::Blue ? 2 * stride : stride; }
  /// True for Axis, Green and Blue levels (plain square/cubic lattices).
  bool is_cubic() const {
    return klass == LevelClass::Axis || klass == LevelClass::Green || klass == LevelClass::Blue;
  }

  friend bool operator==(const GridLevel&, const GridLevel&) = default;
};

/// Membership predicate. Indices beyond `dim` are ignored.
bool node_mask(const GridLevel& level, const Index& index);

/// Ordered set of levels, coarsest first, on the unit square or cube with
/// homogeneous Dirichlet boundaries. `n` counts fine-grid points per side
/// including the boundary.
class Hierarchy {
 public:
  Hierarchy(int dim, int n, int doublings, Scheme scheme, std::vector<GridLevel> levels);

  int dim() const { return dim_; }
  int n() const { return n_; }
  int doublings() const { return doublings_; }
  Scheme scheme() const { return scheme_; }
  int depth() const { return static_cast<int>(levels_.size()); }
  double h() const { return 1.0 / (n_ - 1); }

  const std::vector<GridLevel>& levels() const { return levels_; }
  const GridLevel& level(int l) const { return levels_.at(static_cast<std::size_t>(l)); }
  const GridLevel& finest() const { return levels_.back(); }
  const GridLevel& coarsest() const { return levels_.front(); }

  /// Interior unknowns on the finest level, (n-2)^dim.
  std::int64_t unknowns() const;
  bool is_interior(const Index& index) const;

 private:
  int dim_;
  int n_;
  int doublings_;
  Scheme scheme_;
  std::vector<GridLevel> levels_;
};

/// Builds the diagonal hierarchy (2L+1 levels in 2D, 3L+1 in 3D) or the
/// conventional factor-two hierarchy (L+1 levels).
///
/// Requires n = 2^k + 1 with k >= 2 and 1 <= L <= k-1; throws
/// std::invalid_argument otherwise.
Hierarchy build_hierarchy(int dim, int n, int doublings, Scheme scheme = Scheme::Diagonal);

/// Largest admissible number of doublings for n.
int max_doublings(int n);

/// All nodes of `level` strictly inside the domain, in lexicographic order
/// (first index fastest).
std::vector<Index> interior_nodes(const GridLevel& level, const Hierarchy& hierarchy);

}  // namespace dmg
