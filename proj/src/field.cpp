#include "dmg/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dmg {

Field::Field(const GridLevel& level, int n) : level_(level), n_(n) {
  if (n < 3) throw std::invalid_argument("field needs at least 3 points per side");
  std::size_t size = 1;
  for (int d = 0; d < level.dim; ++d) size *= static_cast<std::size_t>(n);
  values_.assign(size, 0.0);
}

double Field::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

Field Field::relabel(const GridLevel& level) const {
  Field out = *this;
  out.level_ = level;
  return out;
}

void require_same_level(const Field& a, const Field& b, const char* what) {
  if (a.level() != b.level() || a.n() != b.n()) {
    throw std::invalid_argument(std::string(what) + ": fields live on different levels");
  }
}

}  // namespace dmg
