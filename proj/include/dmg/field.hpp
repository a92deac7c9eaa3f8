#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dmg/mesh.hpp"

namespace dmg {

/// Flop counter threaded through the kernels. Kernels add their cost-model
/// count when a counter is supplied.
using FlopCount = std::int64_t;

/// Scalar values addressed by fine-grid index and tagged with the level they
/// live on. Only interior nodes of that level carry values; every other entry
/// stays zero.
class Field {
 public:
  Field(const GridLevel& level, int n);

  const GridLevel& level() const { return level_; }
  int n() const { return n_; }
  int dim() const { return level_.dim; }
  std::size_t size() const { return values_.size(); }

  std::size_t index(int i, int j, int k = 0) const {
    return (static_cast<std::size_t>(k) * n_ + j) * n_ + i;
  }
  double operator()(int i, int j, int k = 0) const { return values_[index(i, j, k)]; }
  double& operator()(int i, int j, int k = 0) { return values_[index(i, j, k)]; }
  double operator()(const Index& idx) const { return (*this)(idx[0], idx[1], idx[2]); }
  double& operator()(const Index& idx) { return (*this)(idx[0], idx[1], idx[2]); }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }

  double max_abs() const;
  /// Same values relabelled as living on `level` (no masking is applied).
  Field relabel(const GridLevel& level) const;

 private:
  GridLevel level_;
  int n_;
  std::vector<double> values_;
};

/// Throws std::invalid_argument unless both fields share level and size.
void require_same_level(const Field& a, const Field& b, const char* what);

/// Fills every interior node of the field's level from `fn(i, j, k)`.
template <class Fn>
void fill_interior(Field& field, const Hierarchy& hierarchy, Fn fn) {
  for (const Index& idx : interior_nodes(field.level(), hierarchy)) field(idx) = fn(idx[0], idx[1], idx[2]);
}

}  // namespace dmg
