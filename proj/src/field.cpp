#include "fowler/field.hpp"

#include <cmath>

namespace fowler {

bool Field::all_finite() const {
  for (double v : values)
    if (!std::isfinite(v)) return false;
  return true;
}

double Field::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::fabs(v));
  return m;
}

Field make_field(const GridSpec& grid, double fill) {
  Field f;
  f.grid = grid;
  f.values.assign(static_cast<std::size_t>(grid.n_cells), fill);
  return f;
}

}  // namespace fowler
