#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fowler/params.hpp"

namespace fowler {

/// The three discretizations of the nonlocal operator:
///   I1 - quadrature of the singular-kernel form (second differences, l^{-1/3} weights)
///   I2 - quadrature of the increment form (l^{-7/3} weights, centered first difference)
///   I3 - Gruenwald-Letnikov binomial weights of the order-4/3 derivative
enum class DiscretizationKind { I1, I2, I3 };

std::string to_string(DiscretizationKind kind);
DiscretizationKind parse_kind(const std::string& name);  // "i1" | "i2" | "i3"

/// Short-memory truncation: keep A_dx = floor(L/dx) terms of the convolution
/// tail, L the physical memory length. An explicit count overrides the
/// length-based rule (used by dimensionless spectral work).
struct TruncationPolicy {
  double memory_length = 0.0;
  std::int64_t explicit_count = -1;

  static TruncationPolicy of_length(double length);
  static TruncationPolicy of_count(std::int64_t count);
  std::int64_t count_for(double dx) const;  // throws if the count comes out < 1
};

/// Stencil weights of one discretization of the nonlocal operator.
///
///   I_dx[u]_j = dx_scale * ( up_coeff*u_{j+1} + sum_m weights[m]*u_{j-m} )
///
/// dx_scale = dx^{-4/3}; constant prefactors (4/9, Gamma(2/3)) are folded into
/// the weights, so the weight sequence is exactly what a dimensionless
/// amplification factor consumes (multiplied by Fo).
struct CoefficientTable {
  DiscretizationKind kind = DiscretizationKind::I1;
  double up_coeff = 0.0;
  std::vector<double> weights;  // weights[m] multiplies u_{j-m}, m = 0..max_shift
  double dx_scale = 1.0;
  std::int64_t truncation_count = 0;

  std::int64_t max_shift() const { return static_cast<std::int64_t>(weights.size()) - 1; }
  /// up_coeff + sum of weights; zero for an operator that annihilates constants.
  double row_sum() const;
};

/// Truncated-at-the-mesh table: realizes the finite quadrature/binomial sums
/// with A_dx retained terms, exactly as the time stepper applies them.
CoefficientTable build_coefficients(DiscretizationKind kind, const TruncationPolicy& policy,
                                    const GridSpec& grid);

/// Same table for I1 assembled from the telescoped closed-form entries
/// (c_l = (l+1)^{-1/3} - 2 l^{-1/3} + (l-1)^{-1/3}); numerically identical to
/// build_coefficients(I1, ...) up to re-association.
CoefficientTable telescoped_coefficients_i1(std::int64_t count, double dx);

/// Convolution row of one explicit Euler step of the linearized scheme,
/// assembled from a coefficient table and the dimensionless groups:
/// row[i] is the coefficient of u_{j-(i-1)} (index 0 holds the u_{j+1} slot).
/// Upwind advection for cr >= 0, downwind for cr < 0. Shared between the time
/// stepper and the amplification-factor oracle so the two stay bit-consistent.
std::vector<double> step_row(const CoefficientTable& table, const DimensionlessGroups& groups);

/// Gruenwald-Letnikov binomial weight w_l = (-1)^l C(4/3, l), via the
/// recurrence w_l = w_{l-1} * (l - 1 - 4/3) / l, w_0 = 1.
double grunwald_weight(std::int64_t l);

/// Signed partial sum  sum_{l=0..count} (-1)^l C(4/3,l)  =  (-1)^count C(1/3, count);
/// the residue by which a truncated I3 table fails to annihilate constants
/// (before the Gamma(2/3) prefactor).
double grunwald_partial_sum(std::int64_t count);

}  // namespace fowler
