#include "fowler/coefficients.hpp"

#include <cmath>
#include <stdexcept>

namespace fowler {

std::string to_string(DiscretizationKind kind) {
  switch (kind) {
    case DiscretizationKind::I1: return "i1";
    case DiscretizationKind::I2: return "i2";
    case DiscretizationKind::I3: return "i3";
  }
  return "?";
}

DiscretizationKind parse_kind(const std::string& name) {
  if (name == "i1" || name == "I1") return DiscretizationKind::I1;
  if (name == "i2" || name == "I2") return DiscretizationKind::I2;
  if (name == "i3" || name == "I3") return DiscretizationKind::I3;
  throw std::invalid_argument("unknown discretization kind: '" + name + "'");
}

TruncationPolicy TruncationPolicy::of_length(double length) {
  TruncationPolicy p;
  p.memory_length = length;
  return p;
}

TruncationPolicy TruncationPolicy::of_count(std::int64_t count) {
  TruncationPolicy p;
  p.explicit_count = count;
  return p;
}

std::int64_t TruncationPolicy::count_for(double dx) const {
  std::int64_t a = explicit_count;
  if (a < 0) {
    if (!(memory_length > 0.0) || !(dx > 0.0))
      throw std::invalid_argument("TruncationPolicy: memory_length and dx must be > 0");
    a = static_cast<std::int64_t>(std::floor(memory_length / dx));
  }
  if (a < 1) throw std::invalid_argument("TruncationPolicy: truncation count must be >= 1");
  return a;
}

double CoefficientTable::row_sum() const {
  double s = up_coeff;
  for (double w : weights) s += w;
  return s;
}

namespace {

double inv_cbrt(std::int64_t l) { return 1.0 / std::cbrt(static_cast<double>(l)); }

// l^{-7/3} without pow: (l^{-1/3})^7
double inv_pow73(std::int64_t l) {
  const double c = inv_cbrt(l);
  const double c2 = c * c;
  const double c4 = c2 * c2;
  return c4 * c2 * c;
}

}  // namespace

CoefficientTable build_coefficients(DiscretizationKind kind, const TruncationPolicy& policy,
                                    const GridSpec& grid) {
  grid.validate();
  const std::int64_t a = policy.count_for(grid.dx);

  CoefficientTable t;
  t.kind = kind;
  t.truncation_count = a;
  t.dx_scale = std::pow(grid.dx, -4.0 / 3.0);

  switch (kind) {
    case DiscretizationKind::I1: {
      // sum_{l=1..A} l^{-1/3} (u_{j-l+1} - 2 u_{j-l} + u_{j-l-1})
      t.weights.assign(static_cast<std::size_t>(a) + 2, 0.0);
      for (std::int64_t l = 1; l <= a; ++l) {
        const double w = inv_cbrt(l);
        t.weights[static_cast<std::size_t>(l) - 1] += w;
        t.weights[static_cast<std::size_t>(l)] -= 2.0 * w;
        t.weights[static_cast<std::size_t>(l) + 1] += w;
      }
      break;
    }
    case DiscretizationKind::I2: {
      // (4/9) sum_{l=1..A} l^{-7/3} (u_{j-l} - u_j + l (u_{j+1}-u_{j-1})/2)
      t.weights.assign(static_cast<std::size_t>(a) + 1, 0.0);
      for (std::int64_t l = 1; l <= a; ++l) {
        const double w = (4.0 / 9.0) * inv_pow73(l);
        const double half_l = 0.5 * static_cast<double>(l);
        t.up_coeff += w * half_l;
        t.weights[1] -= w * half_l;
        t.weights[0] -= w;
        t.weights[static_cast<std::size_t>(l)] += w;
      }
      break;
    }
    case DiscretizationKind::I3: {
      // Gamma(2/3) sum_{l=0..A} (-1)^l C(4/3,l) u_{j-l}
      const double gamma23 = constants().gamma_two_thirds;
      t.weights.assign(static_cast<std::size_t>(a) + 1, 0.0);
      double w = 1.0;
      t.weights[0] = gamma23;
      for (std::int64_t l = 1; l <= a; ++l) {
        w *= (static_cast<double>(l) - 1.0 - 4.0 / 3.0) / static_cast<double>(l);
        t.weights[static_cast<std::size_t>(l)] = gamma23 * w;
      }
      break;
    }
  }
  return t;
}

CoefficientTable telescoped_coefficients_i1(std::int64_t count, double dx) {
  if (count < 1) throw std::invalid_argument("telescoped_coefficients_i1: count must be >= 1");
  CoefficientTable t;
  t.kind = DiscretizationKind::I1;
  t.truncation_count = count;
  t.dx_scale = std::pow(dx, -4.0 / 3.0);
  t.weights.assign(static_cast<std::size_t>(count) + 2, 0.0);
  const std::int64_t a = count;
  for (std::int64_t m = 0; m <= a + 1; ++m) {
    // coefficient of u_{j-m}: (m+1)^{-1/3} - 2 m^{-1/3} + (m-1)^{-1/3},
    // each piece present only while its source index l stays within 1..A
    double w = 0.0;
    if (m + 1 >= 1 && m + 1 <= a) w += inv_cbrt(m + 1);
    if (m >= 1 && m <= a) w -= 2.0 * inv_cbrt(m);
    if (m - 1 >= 1 && m - 1 <= a) w += inv_cbrt(m - 1);
    t.weights[static_cast<std::size_t>(m)] = w;
  }
  return t;
}

std::vector<double> step_row(const CoefficientTable& table, const DimensionlessGroups& groups) {
  if (table.weights.size() < 2)
    throw std::invalid_argument("step_row: table must cover shifts 0 and 1");
  std::vector<double> row(table.weights.size() + 1, 0.0);
  const double cr = groups.cr;
  const double half_df = 0.5 * groups.df;
  row[0] = half_df - groups.fo * table.up_coeff;
  for (std::size_t m = 0; m < table.weights.size(); ++m)
    row[m + 1] = -groups.fo * table.weights[m];
  row[1] += 1.0 - groups.df;
  row[2] += half_df;
  if (cr >= 0.0) {  // upwind
    row[1] -= cr;
    row[2] += cr;
  } else {  // downwind
    row[0] -= cr;
    row[1] += cr;
  }
  return row;
}

double grunwald_weight(std::int64_t l) {
  double w = 1.0;
  for (std::int64_t i = 1; i <= l; ++i)
    w *= (static_cast<double>(i) - 1.0 - 4.0 / 3.0) / static_cast<double>(i);
  return w;
}

double grunwald_partial_sum(std::int64_t count) {
  // sum_{l=0..A} (-1)^l C(4/3,l) = (-1)^A C(1/3,A) = prod_{i=1..A} (i-4/3)/i
  double w = 1.0;
  for (std::int64_t i = 1; i <= count; ++i)
    w *= (static_cast<double>(i) - 4.0 / 3.0) / static_cast<double>(i);
  return w;
}

}  // namespace fowler
