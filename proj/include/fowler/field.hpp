#pragma once

#include <vector>

#include "fowler/params.hpp"

namespace fowler {

enum class BoundaryKind { Causal, Periodic };

/// Grid function u_j, j = 0..n_cells-1, tagged with its mesh and time level.
struct Field {
  std::vector<double> values;
  GridSpec grid;
  double time = 0.0;

  std::size_t size() const { return values.size(); }
  bool all_finite() const;
  double max_abs() const;
};

Field make_field(const GridSpec& grid, double fill = 0.0);

}  // namespace fowler
