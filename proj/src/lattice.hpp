#pragma once

// Node iteration shared by the parallel kernels. Nodes are visited on the
// lattice of multiples of `stride`; the predicate sees scaled coordinates
// (index / stride). Within one call every visited node is written at most once
// and only reads values the call does not write, so the outer loop is safe to
// distribute across threads.

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "dmg/field.hpp"

namespace dmg::detail {

/// Below this many candidate nodes the loop stays serial.
inline constexpr std::int64_t kParallelThreshold = 1 << 14;

struct Offset {
  int di, dj, dk;
};

/// Linear offsets of `taps` scaled by `stride` on an n^dim array.
inline std::vector<std::ptrdiff_t> linear_offsets(int n, int stride, std::initializer_list<Offset> taps) {
  std::vector<std::ptrdiff_t> out;
  out.reserve(taps.size());
  for (const Offset& t : taps) {
    out.push_back(static_cast<std::ptrdiff_t>(stride) *
                  (t.di + static_cast<std::ptrdiff_t>(n) * (t.dj + static_cast<std::ptrdiff_t>(n) * t.dk)));
  }
  return out;
}

inline const std::initializer_list<Offset> kAxis2 = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}};
inline const std::initializer_list<Offset> kDiag2 = {{1, 1, 0}, {-1, 1, 0}, {1, -1, 0}, {-1, -1, 0}};
inline const std::initializer_list<Offset> kAxis3 = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0},
                                                     {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
inline const std::initializer_list<Offset> kFaceDiag3 = {
    {1, 1, 0}, {1, -1, 0}, {-1, 1, 0}, {-1, -1, 0}, {1, 0, 1}, {1, 0, -1},
    {-1, 0, 1}, {-1, 0, -1}, {0, 1, 1}, {0, 1, -1}, {0, -1, 1}, {0, -1, -1}};
inline const std::initializer_list<Offset> kBodyDiag3 = {{1, 1, 1},  {1, 1, -1},  {1, -1, 1},  {1, -1, -1},
                                                         {-1, 1, 1}, {-1, 1, -1}, {-1, -1, 1}, {-1, -1, -1}};

inline double tap_sum(const double* base, std::size_t centre, const std::vector<std::ptrdiff_t>& offsets) {
  double sum = 0.0;
  for (std::ptrdiff_t off : offsets) sum += base[static_cast<std::ptrdiff_t>(centre) + off];
  return sum;
}

/// Calls fn(linear_index, a, b, c) for every interior multiple of `stride`
/// whose scaled coordinates satisfy pred(a, b, c). Returns the number of
/// visited nodes.
template <class Pred, class Fn>
std::int64_t for_each_node(int dim, int n, int stride, Pred pred, Fn fn) {
  const int m = (n - 1) / stride;
  const std::size_t nn = static_cast<std::size_t>(n);
  std::int64_t visited = 0;
  if (dim == 2) {
    const std::int64_t candidates = std::int64_t(m - 1) * (m - 1);
#pragma omp parallel for reduction(+ : visited) schedule(static) if (candidates > kParallelThreshold)
    for (int b = 1; b < m; ++b) {
      for (int a = 1; a < m; ++a) {
        if (!pred(a, b, 0)) continue;
        fn(static_cast<std::size_t>(b) * stride * nn + static_cast<std::size_t>(a) * stride, a, b, 0);
        ++visited;
      }
    }
  } else {
    const std::int64_t candidates = std::int64_t(m - 1) * (m - 1) * (m - 1);
#pragma omp parallel for reduction(+ : visited) schedule(static) if (candidates > kParallelThreshold)
    for (int c = 1; c < m; ++c) {
      for (int b = 1; b < m; ++b) {
        for (int a = 1; a < m; ++a) {
          if (!pred(a, b, c)) continue;
          fn((static_cast<std::size_t>(c) * stride * nn + static_cast<std::size_t>(b) * stride) * nn +
                 static_cast<std::size_t>(a) * stride,
             a, b, c);
          ++visited;
        }
      }
    }
  }
  return visited;
}

inline bool is_even(int v) { return (v & 1) == 0; }

inline void add_flops(FlopCount* flops, std::int64_t nodes, int per_node) {
  if (flops != nullptr) *flops += nodes * per_node;
}

}  // namespace dmg::detail
