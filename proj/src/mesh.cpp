#include "dmg/mesh.hpp"

#include <stdexcept>

namespace dmg {

std::string to_string(Scheme scheme) {
  return scheme == Scheme::Diagonal ? "diagonal" : "usual";
}

std::string to_string(LevelClass klass) {
  switch (klass) {
    case LevelClass::Axis: return "axis";
    case LevelClass::Diagonal: return "diagonal";
    case LevelClass::Green: return "green";
    case LevelClass::Red: return "red";
    case LevelClass::Magenta: return "magenta";
    case LevelClass::Blue: return "blue";
  }
  return "?";
}

namespace {

bool is_multiple(int value, int stride) { return value % stride == 0; }

bool even(int value) { return value % 2 == 0; }

}  // namespace

bool node_mask(const GridLevel& level, const Index& index) {
  const int s = level.stride;
  for (int d = 0; d < level.dim; ++d) {
    if (index[d] < 0 || !is_multiple(index[d], s)) return false;
  }
  const int a = index[0] / s;
  const int b = index[1] / s;
  const int c = level.dim == 3 ? index[2] / s : 0;
  switch (level.klass) {
    case LevelClass::Axis:
    case LevelClass::Green:
      return true;
    case LevelClass::Diagonal:
    case LevelClass::Red:
      return even(a + b + c);
    case LevelClass::Magenta:
      return even(a) == even(b) && even(b) == even(c);
    case LevelClass::Blue:
      return even(a) && even(b) && even(c);
  }
  return false;
}

Hierarchy::Hierarchy(int dim, int n, int doublings, Scheme scheme, std::vector<GridLevel> levels)
    : dim_(dim), n_(n), doublings_(doublings), scheme_(scheme), levels_(std::move(levels)) {}

std::int64_t Hierarchy::unknowns() const {
  std::int64_t count = 1;
  for (int d = 0; d < dim_; ++d) count *= n_ - 2;
  return count;
}

bool Hierarchy::is_interior(const Index& index) const {
  for (int d = 0; d < dim_; ++d) {
    if (index[d] <= 0 || index[d] >= n_ - 1) return false;
  }
  return true;
}

int max_doublings(int n) {
  if (n < 5) return -1;
  const int cells = n - 1;
  if ((cells & (cells - 1)) != 0) return -1;
  int k = 0;
  while ((1 << k) < cells) ++k;
  return k - 1;
}

Hierarchy build_hierarchy(int dim, int n, int doublings, Scheme scheme) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("dimension must be 2 or 3");
  const int max_l = max_doublings(n);
  if (max_l < 1) throw std::invalid_argument("grid size must be 2^k + 1 with k >= 2, got " + std::to_string(n));
  if (doublings < 1 || doublings > max_l) {
    throw std::invalid_argument("number of doublings must lie in [1, " + std::to_string(max_l) + "] for n = " +
                                std::to_string(n));
  }

  // Built finest-first, reversed at the end.
  std::vector<GridLevel> levels;
  const auto push = [&](LevelClass klass, int stride, double coeff) {
    levels.push_back(GridLevel{dim, 0, klass, stride, coeff});
  };

  if (scheme == Scheme::Conventional) {
    const LevelClass cubic = dim == 2 ? LevelClass::Axis : LevelClass::Green;
    for (int l = 0, s = 1; l <= doublings; ++l, s *= 2) push(cubic, s, double(s) * s);
  } else if (dim == 2) {
    int s = 1;
    push(LevelClass::Axis, s, 1.0);
    for (int l = 0; l < doublings; ++l) {
      push(LevelClass::Diagonal, s, 2.0 * s * s);
      s *= 2;
      push(LevelClass::Axis, s, double(s) * s);
    }
  } else {
    int s = 1;
    push(LevelClass::Green, s, 1.0);
    for (int l = 0; l < doublings; ++l) {
      push(LevelClass::Red, s, double(s) * s);
      push(LevelClass::Magenta, s, double(s) * s);
      push(LevelClass::Blue, s, 4.0 * s * s);
      s *= 2;
    }
  }

  std::vector<GridLevel> ordered(levels.rbegin(), levels.rend());
  for (std::size_t l = 0; l < ordered.size(); ++l) ordered[l].level = static_cast<int>(l);
  return Hierarchy(dim, n, doublings, scheme, std::move(ordered));
}

std::vector<Index> interior_nodes(const GridLevel& level, const Hierarchy& hierarchy) {
  std::vector<Index> nodes;
  const int n = hierarchy.n();
  const int kbegin = level.dim == 3 ? 1 : 0;
  const int kend = level.dim == 3 ? n - 1 : 1;
  for (int k = kbegin; k < kend; ++k) {
    for (int j = 1; j < n - 1; ++j) {
      for (int i = 1; i < n - 1; ++i) {
        const Index index{i, j, k};
        if (node_mask(level, index)) nodes.push_back(index);
      }
    }
  }
  return nodes;
}

}  // namespace dmg
