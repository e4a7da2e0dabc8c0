#pragma once

#include <string>
#include <vector>

#include "fowler/nonlocal.hpp"
#include "fowler/scheme.hpp"
#include "fowler/spectral.hpp"

namespace fowler {

/// One (group, theta) cell of a dampening/phase-error table.
struct TableRow {
  double cr = 0.0, df = 0.0, fo = 0.0;
  double theta = 0.0;
  double cfl1 = 0.0, cfl2 = 0.0;
  double delta1 = 0.0, delta2 = 0.0;
  double ratio1 = 0.0, ratio2 = 0.0;
  double abs_g1 = 0.0, abs_g2 = 0.0, abs_gcont = 0.0;
};

/// Recompute the dampening/phase-error reference table `table_id` in {1,2,3}:
///   1: Cr in {0.2, 0.5, 0.9}, Df = 0.2, Fo = 0.1, theta in {pi/6, pi/4, pi/2, 3pi/4}
///   2: Df in {0.2, 0.4, 0.8}, Cr = 0.1, Fo = 0.1, same thetas
///   3: Fo in {0.2, 0.5, 0.9}, Cr = 0.1, Df = 0.2, thetas plus pi
std::vector<TableRow> reproduce_table(int table_id);
void write_table_csv(const std::vector<TableRow>& rows, int table_id, const std::string& path);

/// Steps the complex mode e^{i theta_m j}, theta_m = 2 pi m / grid_size, n_steps
/// times through the periodic linear scheme (real and imaginary parts stepped
/// separately) and compares against g(theta_m)^n_steps; returns the max
/// pointwise deviation.
double mode_oracle(DiscretizationKind kind, const DimensionlessGroups& groups, int mode_index,
                   int n_steps, int grid_size, const TruncationPolicy& truncation);

struct ConvergenceConfig {
  DiscretizationKind kind = DiscretizationKind::I1;
  FluxKind flux = FluxKind::LinearUpwind;
  PhysicalParams params{1.0, 1.0, 1.5};
  std::vector<double> dx_list{0.1, 0.05, 0.025, 0.0125};
  double domain_length = 4.0;
  double t_final = 0.25;
  double dt_factor = 0.4;  // dt = dt_factor * dx^2 (fixed diffusion number)
  double bump_center = 1.5, bump_width = 0.75, bump_height = 1.0;
  bool use_fft = true;
};

struct ConvergenceResult {
  std::vector<double> dx_values;
  std::vector<double> e1_values;
  double fitted_slope = 0.0;
  bool valid = false;
  std::string message;
};

/// For each dx, runs the scheme at space steps dx/2 and dx/4 to time t_final
/// (dt proportional to the square of the step, adjusted to land on t_final)
/// and takes E1 = mean |u1_j - u2_{2j}| over the coincident nodes; fits the
/// log-log slope. Any blow-up invalidates the study.
ConvergenceResult convergence_study(const ConvergenceConfig& config);
void write_convergence_csv(const ConvergenceResult& result, const ConvergenceConfig& config,
                           const std::string& path);

struct TruncationStudyConfig {
  DiscretizationKind kind = DiscretizationKind::I1;
  SmoothFunction phi;        // spatial profile; the study adds an e^{-t} time factor
  PhysicalParams params{1.0, 1.0, 1.0};
  double x0 = 2.5;
  std::vector<double> dx_list{0.08, 0.04, 0.02, 0.01};
  double memory_length = 16.0;
  double dt_factor = 1.0;  // dt = dt_factor * dx^2
  double quad_tol = 1e-12;
};

struct TruncationStudyResult {
  std::vector<double> dx_values;
  std::vector<double> error_values;  // full local error per dx
  double fitted_order = 0.0;
  double exact_nonlocal = 0.0;  // continuous-operator oracle value at x0
};

/// Local error |P phi - P_h phi| at the fixed point x0, with the continuous
/// operator from the quadrature oracle; fits the observed order in dx at the
/// fixed memory length. Quadrature failure throws.
TruncationStudyResult truncation_order_study(const TruncationStudyConfig& config);

/// Local errors at fixed dx over a list of memory lengths (shrinking memory
/// exposes the truncation-tail term).
std::vector<double> truncation_memory_sweep(const TruncationStudyConfig& config, double dx,
                                            const std::vector<double>& memory_lengths);

void write_truncation_csv(const TruncationStudyResult& result,
                          const TruncationStudyConfig& config, const std::string& path);

/// The study's Gaussian profile exp(-((y-center)/width)^2) as a SmoothFunction.
SmoothFunction gaussian_profile(double center, double width);

/// Least-squares slope of log(y) against log(x).
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace fowler
