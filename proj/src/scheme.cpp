#include "fowler/scheme.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "fowler/csv.hpp"
#include "fowler/nonlocal.hpp"

namespace fowler {

std::string to_string(FluxKind flux) {
  switch (flux) {
    case FluxKind::LinearUpwind: return "linear_upwind";
    case FluxKind::BurgersUpwind: return "burgers_upwind";
    case FluxKind::LaxFriedrichs: return "lax_friedrichs";
  }
  return "?";
}

FluxKind parse_flux(const std::string& name) {
  if (name == "linear_upwind") return FluxKind::LinearUpwind;
  if (name == "burgers_upwind") return FluxKind::BurgersUpwind;
  if (name == "lax_friedrichs") return FluxKind::LaxFriedrichs;
  throw std::invalid_argument("unknown flux kind: '" + name + "'");
}

std::string to_string(BoundaryKind boundary) {
  return boundary == BoundaryKind::Causal ? "causal" : "periodic";
}

BoundaryKind parse_boundary(const std::string& name) {
  if (name == "causal") return BoundaryKind::Causal;
  if (name == "periodic") return BoundaryKind::Periodic;
  throw std::invalid_argument("unknown boundary kind: '" + name + "'");
}

void SchemeConfig::validate() const {
  grid.validate();
  if (!(params.epsilon >= 0.0) || !(params.eta >= 0.0) || !std::isfinite(params.v))
    throw std::invalid_argument("SchemeConfig: need epsilon >= 0, eta >= 0, finite v");
  truncation.count_for(grid.dx);  // throws when inconsistent
  if (!(blowup_threshold > 0.0))
    throw std::invalid_argument("SchemeConfig: blowup_threshold must be > 0");
}

// ---------------------------------------------------------------------------
// Stepper
// ---------------------------------------------------------------------------

struct Stepper::Impl {
  SchemeConfig cfg;
  DimensionlessGroups groups;
  std::vector<double> lin_row;        // full linear step (identity+advection+diffusion+nonlocal)
  std::vector<double> visc_row;       // linear step without advection (nonlinear scheme)
  std::unique_ptr<StencilConvolver> lin_conv;
  std::unique_ptr<StencilConvolver> visc_conv;
  bool fft = false;

  const std::vector<double>& row_for(FluxKind flux) const {
    return flux == FluxKind::LinearUpwind ? lin_row : visc_row;
  }

  void apply_row(const std::vector<double>& row, const StencilConvolver* conv,
                 const std::vector<double>& in, std::vector<double>& out) const {
    if (conv) {
      conv->apply(in, out);
      return;
    }
    const std::int64_t n = static_cast<std::int64_t>(in.size());
    out.assign(in.size(), 0.0);
    if (cfg.boundary == BoundaryKind::Causal) {
      for (std::int64_t j = 0; j < n; ++j) {
        double acc = 0.0;
        const std::int64_t mhi = std::min<std::int64_t>(static_cast<std::int64_t>(row.size()) - 1,
                                                        j + 1);
        for (std::int64_t i = 0; i <= mhi; ++i) {
          const std::int64_t src = j - (i - 1);
          if (src >= 0 && src < n) acc += row[static_cast<std::size_t>(i)] *
                                          in[static_cast<std::size_t>(src)];
        }
        out[static_cast<std::size_t>(j)] = acc;
      }
    } else {
      // fold row modulo n, then circular apply
      std::vector<double> folded(static_cast<std::size_t>(n), 0.0);
      for (std::size_t i = 0; i < row.size(); ++i) {
        std::int64_t shift = static_cast<std::int64_t>(i) - 1;
        std::int64_t r = ((shift % n) + n) % n;
        folded[static_cast<std::size_t>(r)] += row[i];
      }
      for (std::int64_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::int64_t m = 0; m < n; ++m) {
          std::int64_t idx = j - m;
          if (idx < 0) idx += n;
          acc += folded[static_cast<std::size_t>(m)] * in[static_cast<std::size_t>(idx)];
        }
        out[static_cast<std::size_t>(j)] = acc;
      }
    }
  }
};

Stepper::Stepper(const SchemeConfig& config) : impl_(std::make_unique<Impl>()) {
  config.validate();
  impl_->cfg = config;
  impl_->groups = derive_groups(config.params, config.grid);
  const CoefficientTable table = build_coefficients(config.kind, config.truncation, config.grid);
  impl_->lin_row = step_row(table, impl_->groups);
  DimensionlessGroups no_adv = impl_->groups;
  no_adv.cr = 0.0;
  impl_->visc_row = step_row(table, no_adv);

  const std::size_t n = static_cast<std::size_t>(config.grid.n_cells);
  const std::size_t work = n * impl_->lin_row.size();
  impl_->fft = config.use_fft && work > 16384;
  if (impl_->fft) {
    impl_->lin_conv = std::make_unique<StencilConvolver>(impl_->lin_row, -1, n, config.boundary);
    impl_->visc_conv = std::make_unique<StencilConvolver>(impl_->visc_row, -1, n, config.boundary);
  }
}

Stepper::~Stepper() = default;
Stepper::Stepper(Stepper&&) noexcept = default;

const std::vector<double>& Stepper::linear_row() const { return impl_->lin_row; }

namespace {

double eo_plus(double u) {
  const double p = std::max(u, 0.0);
  return 0.5 * p * p;
}
double eo_minus(double u) {
  const double m = std::min(u, 0.0);
  return 0.5 * m * m;
}

}  // namespace

Field Stepper::step(const Field& u) const {
  const SchemeConfig& cfg = impl_->cfg;
  if (u.size() != static_cast<std::size_t>(cfg.grid.n_cells))
    throw std::invalid_argument("Stepper: field size does not match the grid");
  Field out = u;
  out.time = u.time + cfg.grid.dt;

  if (cfg.flux == FluxKind::LinearUpwind) {
    impl_->apply_row(impl_->lin_row, impl_->lin_conv.get(), u.values, out.values);
    return out;
  }

  // nonlinear: linear part without advection, then the flux difference
  impl_->apply_row(impl_->visc_row, impl_->visc_conv.get(), u.values, out.values);

  const std::int64_t n = static_cast<std::int64_t>(u.size());
  const double dt_over_dx = cfg.grid.dt / cfg.grid.dx;
  const double alpha = cfg.grid.dx / cfg.grid.dt;  // Lax-Friedrichs dissipation
  auto at = [&](std::int64_t j) -> double {
    if (cfg.boundary == BoundaryKind::Periodic) {
      std::int64_t r = ((j % n) + n) % n;
      return u.values[static_cast<std::size_t>(r)];
    }
    if (j < 0 || j >= n) return 0.0;
    return u.values[static_cast<std::size_t>(j)];
  };
  auto flux_half = [&](std::int64_t j) -> double {  // F_{j+1/2}
    const double a = at(j), b = at(j + 1);
    if (cfg.flux == FluxKind::BurgersUpwind) return eo_plus(a) + eo_minus(b);
    return 0.5 * (0.5 * a * a + 0.5 * b * b) - 0.5 * alpha * (b - a);
  };
  for (std::int64_t j = 0; j < n; ++j) {
    const double dF = flux_half(j) - flux_half(j - 1);
    out.values[static_cast<std::size_t>(j)] -= dt_over_dx * dF;
  }
  return out;
}

Field linear_step(const Field& u, const SchemeConfig& config) {
  if (config.flux != FluxKind::LinearUpwind)
    throw std::invalid_argument("linear_step: config.flux must be LinearUpwind");
  return Stepper(config).step(u);
}

Field nonlinear_step(const Field& u, const SchemeConfig& config) {
  if (config.flux == FluxKind::LinearUpwind)
    throw std::invalid_argument("nonlinear_step: config.flux must be a nonlinear flux");
  return Stepper(config).step(u);
}

Trajectory integrate_steps(const Field& u0, const SchemeConfig& config, std::int64_t n_steps,
                           std::int64_t snapshot_every) {
  Trajectory traj;
  traj.config = config;
  traj.snapshots.emplace_back(u0.time, u0);
  if (n_steps <= 0) return traj;

  Stepper stepper(config);
  Field u = u0;
  for (std::int64_t s = 1; s <= n_steps; ++s) {
    u = stepper.step(u);
    const bool bad = !u.all_finite() || u.max_abs() > config.blowup_threshold;
    const bool want_snap = (snapshot_every > 0 && s % snapshot_every == 0) || s == n_steps || bad;
    if (want_snap) traj.snapshots.emplace_back(u.time, u);
    if (bad) {
      traj.blowup_step = s;
      break;
    }
  }
  return traj;
}

Trajectory integrate(const Field& u0, const SchemeConfig& config, std::int64_t snapshot_every) {
  config.validate();
  const double ratio = config.grid.t_final / config.grid.dt;
  const std::int64_t n_steps = static_cast<std::int64_t>(std::llround(ratio));
  return integrate_steps(u0, config, n_steps, snapshot_every);
}

Field make_initial_bump(const GridSpec& grid, double center, double width, double height) {
  grid.validate();
  if (!(width > 0.0)) throw std::invalid_argument("make_initial_bump: width must be > 0");
  if (center - width < 0.0 || center + width > grid.domain_length())
    throw std::invalid_argument("make_initial_bump: support exceeds the domain");
  Field f = make_field(grid);
  constexpr double pi = 3.14159265358979323846;
  for (std::int64_t j = 0; j < grid.n_cells; ++j) {
    const double x = static_cast<double>(j) * grid.dx;
    const double dxc = x - center;
    if (std::fabs(dxc) < width) {
      const double c = std::cos(0.5 * pi * dxc / width);
      f.values[static_cast<std::size_t>(j)] = height * c * c;
    }
  }
  return f;
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
  CsvWriter csv(path);
  const SchemeConfig& cfg = traj.config;
  csv.comment("kind", to_string(cfg.kind));
  csv.comment("flux", to_string(cfg.flux));
  csv.comment("boundary", to_string(cfg.boundary));
  csv.comment("v", cfg.params.v);
  csv.comment("epsilon", cfg.params.epsilon);
  csv.comment("eta", cfg.params.eta);
  csv.comment("dx", cfg.grid.dx);
  csv.comment("dt", cfg.grid.dt);
  csv.comment("n_cells", static_cast<double>(cfg.grid.n_cells));
  csv.comment("t_final", cfg.grid.t_final);
  csv.comment("truncation_count",
              static_cast<double>(cfg.truncation.count_for(cfg.grid.dx)));
  if (traj.blowup_step)
    csv.comment("blowup_step", static_cast<double>(*traj.blowup_step));
  csv.header({"t", "x", "u"});
  for (const auto& [t, field] : traj.snapshots)
    for (std::size_t j = 0; j < field.size(); ++j)
      csv.row({t, static_cast<double>(j) * cfg.grid.dx, field.values[j]});
}

}  // namespace fowler
