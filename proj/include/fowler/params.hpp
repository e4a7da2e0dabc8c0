#pragma once

#include <cstdint>

namespace fowler {

/// Continuous model coefficients of the dune equation
///   u_t + (u^2/2)_x + eta*I[u] - epsilon*u_xx = 0.
/// epsilon > 0 is the local diffusion, eta > 0 the nonlocal anti-diffusion,
/// v the advection speed of the linearized problem (any sign).
struct PhysicalParams {
  double v = 0.0;
  double epsilon = 1.0;
  double eta = 1.0;

  void validate() const;  // throws std::invalid_argument
};

/// Uniform space/time mesh. domain_length is derived as dx*n_cells so the
/// product identity holds exactly.
struct GridSpec {
  double dx = 0.0;
  double dt = 0.0;
  std::int64_t n_cells = 0;
  double t_final = 0.0;

  double domain_length() const { return dx * static_cast<double>(n_cells); }
  void validate() const;  // throws std::invalid_argument
};

/// The three dimensionless groups the spectral analysis depends on:
///   cr = v*dt/dx, df = 2*eps*dt/dx^2, fo = eta*dt/dx^(4/3).
struct DimensionlessGroups {
  double cr = 0.0;
  double df = 0.0;
  double fo = 0.0;
};

DimensionlessGroups derive_groups(const PhysicalParams& params, const GridSpec& grid);

/// Mathematical constants used across the solver and the analyzer, computed
/// to near machine precision at first use (the 4-digit literature values are
/// regression anchors only).
struct Constants {
  double gamma_two_thirds;    // Gamma(2/3)
  double zeta_four_thirds;    // zeta(4/3)
  double zeta_seven_thirds;   // zeta(7/3)
  double a_i;                 // 2*pi^2*Gamma(2/3)
  double b_i;                 // 2*pi^2*sqrt(3)*Gamma(2/3)
};

Constants evaluate_constants();
const Constants& constants();  // cached

/// Riemann zeta for real s > 1 (Euler-Maclaurin with Bernoulli tail).
double riemann_zeta(double s);

}  // namespace fowler
