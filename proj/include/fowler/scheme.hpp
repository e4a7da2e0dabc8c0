#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fowler/coefficients.hpp"
#include "fowler/field.hpp"
#include "fowler/params.hpp"

namespace fowler {

enum class FluxKind { LinearUpwind, BurgersUpwind, LaxFriedrichs };

std::string to_string(FluxKind flux);
FluxKind parse_flux(const std::string& name);
std::string to_string(BoundaryKind boundary);
BoundaryKind parse_boundary(const std::string& name);

struct SchemeConfig {
  DiscretizationKind kind = DiscretizationKind::I1;
  FluxKind flux = FluxKind::LinearUpwind;
  PhysicalParams params;
  GridSpec grid;
  TruncationPolicy truncation;
  BoundaryKind boundary = BoundaryKind::Causal;
  double blowup_threshold = 1e6;
  bool use_fft = true;

  void validate() const;  // grid/truncation consistency; eps, eta >= 0
};

/// One explicit Euler step of the linearized scheme: upwind advection
/// (downwind for v < 0), centered Laplacian, and the configured nonlocal
/// discretization. Requires flux == LinearUpwind.
Field linear_step(const Field& u, const SchemeConfig& config);

/// One explicit step of the nonlinear scheme: monotone flux difference for
/// u^2/2 (Engquist-Osher upwind or Lax-Friedrichs), Laplacian and nonlocal
/// terms as in linear_step. Requires flux != LinearUpwind.
Field nonlinear_step(const Field& u, const SchemeConfig& config);

struct Trajectory {
  std::vector<std::pair<double, Field>> snapshots;  // strictly increasing times
  SchemeConfig config;
  std::optional<std::int64_t> blowup_step;  // first step whose output left the bound

  const Field& final_field() const { return snapshots.back().second; }
};

/// Repeated stepping over n_steps with snapshots every `snapshot_every` steps
/// (<= 0 keeps only the initial and final states). Stops early on blow-up
/// (|u| above config.blowup_threshold or non-finite) and reports the step.
Trajectory integrate_steps(const Field& u0, const SchemeConfig& config, std::int64_t n_steps,
                           std::int64_t snapshot_every);

/// integrate_steps with n_steps = round(t_final / dt).
Trajectory integrate(const Field& u0, const SchemeConfig& config, std::int64_t snapshot_every);

/// Compactly supported cos^2 bump, zero outside [center-width, center+width];
/// the support must lie inside the domain.
Field make_initial_bump(const GridSpec& grid, double center, double width, double height);

/// Reusable stepper bound to one configuration (precomputed stencil row and
/// convolution plans); integrate() uses this internally.
class Stepper {
 public:
  explicit Stepper(const SchemeConfig& config);
  ~Stepper();
  Stepper(Stepper&&) noexcept;
  Field step(const Field& u) const;
  const std::vector<double>& linear_row() const;  // row[i] multiplies u_{j-(i-1)}

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Trajectory export: one row per snapshot per cell, columns t, x, u.
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

}  // namespace fowler
