#include "fowler/experiments.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "fowler/csv.hpp"

namespace fowler {

namespace {

constexpr double kPi = 3.14159265358979323846;

// table theta values on the 24-point grid: pi/6, pi/4, pi/2, 3pi/4 (, pi)
constexpr int kThetaIdx[5] = {2, 3, 6, 9, 12};

}  // namespace

std::vector<TableRow> reproduce_table(int table_id) {
  if (table_id < 1 || table_id > 3)
    throw std::invalid_argument("reproduce_table: table_id must be 1, 2, or 3");

  const AmplificationGrid& g1 = amplification_grid(DiscretizationKind::I1, 24);
  const AmplificationGrid& g2 = amplification_grid(DiscretizationKind::I2, 24);

  std::vector<double> sweep;
  double cr = 0.1, df = 0.2, fo = 0.1;
  int n_theta = 4;
  switch (table_id) {
    case 1: sweep = {0.2, 0.5, 0.9}; df = 0.2; fo = 0.1; break;
    case 2: sweep = {0.2, 0.4, 0.8}; cr = 0.1; fo = 0.1; break;
    case 3: sweep = {0.2, 0.5, 0.9}; cr = 0.1; df = 0.2; n_theta = 5; break;
  }

  std::vector<TableRow> rows;
  for (double s : sweep) {
    DimensionlessGroups gr{cr, df, fo};
    if (table_id == 1) gr.cr = s;
    if (table_id == 2) gr.df = s;
    if (table_id == 3) gr.fo = s;
    for (int t = 0; t < n_theta; ++t) {
      const int m = kThetaIdx[t];
      TableRow r;
      r.cr = gr.cr;
      r.df = gr.df;
      r.fo = gr.fo;
      r.theta = g1.theta(m);
      r.cfl1 = cfl_mod(DiscretizationKind::I1, gr);
      r.cfl2 = cfl_mod(DiscretizationKind::I2, gr);
      const std::complex<double> a1 = g1.g(gr, m);
      const std::complex<double> a2 = g2.g(gr, m);
      r.delta1 = phase_delay_of(a1, gr, r.theta);
      r.delta2 = phase_delay_of(a2, gr, r.theta);
      r.ratio1 = dampening_ratio_of(a1, gr, r.theta);
      r.ratio2 = dampening_ratio_of(a2, gr, r.theta);
      r.abs_g1 = std::abs(a1);
      r.abs_g2 = std::abs(a2);
      r.abs_gcont = std::abs(continuous_amplification(gr, r.theta));
      rows.push_back(r);
    }
  }
  return rows;
}

void write_table_csv(const std::vector<TableRow>& rows, int table_id, const std::string& path) {
  CsvWriter csv(path);
  csv.comment("table", static_cast<double>(table_id));
  csv.comment("tail_cutoff_rule", "closed-form absolute tail below 1e-10");
  csv.comment("layout", "dampening and phase error per (Cr,Df,Fo,theta)");
  csv.header({"cr", "df", "fo", "theta", "cfl_mod_1", "cfl_mod_2", "delta_1", "delta_2", "g_1",
              "g_2", "abs_g1", "abs_g2", "abs_gcont"});
  for (const TableRow& r : rows)
    csv.row({r.cr, r.df, r.fo, r.theta, r.cfl1, r.cfl2, r.delta1, r.delta2, r.ratio1, r.ratio2,
             r.abs_g1, r.abs_g2, r.abs_gcont});
}

double mode_oracle(DiscretizationKind kind, const DimensionlessGroups& groups, int mode_index,
                   int n_steps, int grid_size, const TruncationPolicy& truncation) {
  if (grid_size < 2) throw std::invalid_argument("mode_oracle: grid_size must be >= 2");
  // realize the groups with dx = dt = 1
  SchemeConfig cfg;
  cfg.kind = kind;
  cfg.flux = FluxKind::LinearUpwind;
  cfg.params = {groups.cr, 0.5 * groups.df, groups.fo};
  cfg.grid = {1.0, 1.0, grid_size, std::max(1.0, static_cast<double>(n_steps))};
  cfg.truncation = truncation;
  cfg.boundary = BoundaryKind::Periodic;
  cfg.use_fft = false;
  cfg.blowup_threshold = 1e300;  // the oracle tracks unstable modes too

  const double theta = 2.0 * kPi * mode_index / grid_size;
  Field re = make_field(cfg.grid);
  Field im = make_field(cfg.grid);
  for (int j = 0; j < grid_size; ++j) {
    re.values[static_cast<std::size_t>(j)] = std::cos(theta * j);
    im.values[static_cast<std::size_t>(j)] = std::sin(theta * j);
  }
  Stepper stepper(cfg);
  for (int s = 0; s < n_steps; ++s) {
    re = stepper.step(re);
    im = stepper.step(im);
  }

  const CoefficientTable table = build_coefficients(kind, truncation, cfg.grid);
  const std::complex<double> g = discrete_amplification(table, groups, theta);
  std::complex<double> gn = 1.0;
  for (int s = 0; s < n_steps; ++s) gn *= g;

  double dev = 0.0;
  for (int j = 0; j < grid_size; ++j) {
    const std::complex<double> stepped(re.values[static_cast<std::size_t>(j)],
                                       im.values[static_cast<std::size_t>(j)]);
    const std::complex<double> expected = gn * std::polar(1.0, theta * j);
    dev = std::max(dev, std::abs(stepped - expected));
  }
  return dev;
}

// ---------------------------------------------------------------------------
// Convergence study
// ---------------------------------------------------------------------------

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_loglog_slope: need two matched samples at least");
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  return (n * sxy - sx * sy) / denom;
}

ConvergenceResult convergence_study(const ConvergenceConfig& config) {
  ConvergenceResult res;
  if (config.dx_list.size() < 3)
    throw std::invalid_argument("convergence_study: need at least 3 dx entries");
  for (std::size_t i = 1; i < config.dx_list.size(); ++i)
    if (!(config.dx_list[i] < config.dx_list[i - 1]))
      throw std::invalid_argument("convergence_study: dx_list must be strictly decreasing");

  // solve once per distinct space step (the dx/4 grid of one level is the dx/2
  // grid of the next)
  std::map<std::int64_t, Field> solutions;  // keyed by n_cells
  auto solve = [&](double h) -> const Field& {
    const std::int64_t n = std::llround(config.domain_length / h);
    auto it = solutions.find(n);
    if (it != solutions.end()) return it->second;
    const double dt0 = config.dt_factor * h * h;
    const std::int64_t steps = std::max<std::int64_t>(1, std::llround(config.t_final / dt0));
    GridSpec grid{h, config.t_final / static_cast<double>(steps), n, config.t_final};
    SchemeConfig sc;
    sc.kind = config.kind;
    sc.flux = config.flux;
    sc.params = config.params;
    sc.grid = grid;
    sc.truncation = TruncationPolicy::of_length(config.domain_length);  // full memory
    sc.boundary = BoundaryKind::Causal;
    sc.use_fft = config.use_fft;
    Field u0 = make_initial_bump(grid, config.bump_center, config.bump_width, config.bump_height);
    Trajectory traj = integrate_steps(u0, sc, steps, 0);
    if (traj.blowup_step)
      throw std::runtime_error("convergence_study: blow-up at step " +
                               std::to_string(*traj.blowup_step) + " for dx = " +
                               std::to_string(h));
    return solutions.emplace(n, traj.final_field()).first->second;
  };

  try {
    for (double dx : config.dx_list) {
      const Field& coarse = solve(dx / 2.0);
      const Field& fine = solve(dx / 4.0);
      if (fine.size() != 2 * coarse.size())
        throw std::runtime_error("convergence_study: grids do not nest; pick dx dividing the domain");
      double acc = 0.0;
      for (std::size_t j = 0; j < coarse.size(); ++j)
        acc += std::fabs(coarse.values[j] - fine.values[2 * j]);
      res.dx_values.push_back(dx);
      res.e1_values.push_back(acc / static_cast<double>(coarse.size()));
    }
  } catch (const std::runtime_error& e) {
    res.valid = false;
    res.message = e.what();
    return res;
  }

  bool all_zero = true;
  for (double e : res.e1_values) all_zero = all_zero && e == 0.0;
  if (all_zero) {
    res.fitted_slope = 0.0;
    res.message = "identical solutions at every refinement";
  } else {
    res.fitted_slope = fit_loglog_slope(res.dx_values, res.e1_values);
  }
  res.valid = true;
  return res;
}

void write_convergence_csv(const ConvergenceResult& result, const ConvergenceConfig& config,
                           const std::string& path) {
  CsvWriter csv(path);
  csv.comment("kind", to_string(config.kind));
  csv.comment("flux", to_string(config.flux));
  csv.comment("v", config.params.v);
  csv.comment("epsilon", config.params.epsilon);
  csv.comment("eta", config.params.eta);
  csv.comment("domain_length", config.domain_length);
  csv.comment("t_final", config.t_final);
  csv.comment("dt_factor", config.dt_factor);
  csv.comment("fitted_slope", result.fitted_slope);
  csv.comment("valid", result.valid ? "1" : "0");
  if (!result.message.empty()) csv.comment("message", result.message);
  csv.header({"dx", "e1"});
  for (std::size_t i = 0; i < result.dx_values.size(); ++i)
    csv.row({result.dx_values[i], result.e1_values[i]});
}

// ---------------------------------------------------------------------------
// Truncation-order study
// ---------------------------------------------------------------------------

SmoothFunction gaussian_profile(double center, double width) {
  SmoothFunction f;
  const double inv_w2 = 1.0 / (width * width);
  f.value = [=](double y) {
    const double d = y - center;
    return std::exp(-d * d * inv_w2);
  };
  f.slope = [=](double y) {
    const double d = y - center;
    return -2.0 * d * inv_w2 * std::exp(-d * d * inv_w2);
  };
  f.curvature = [=](double y) {
    const double d = y - center;
    return (4.0 * d * d * inv_w2 - 2.0) * inv_w2 * std::exp(-d * d * inv_w2);
  };
  f.tail = SmoothFunction::Tail::Decaying;
  f.tail_radius = std::fabs(center) + 14.0 * width;
  return f;
}

namespace {

// discrete operator of the linearized problem applied to e^{-t} phi(x) at t=0,
// evaluated pointwise at x0 on a virtual grid of step h
double discrete_operator_at(const TruncationStudyConfig& cfg, double h, double memory_length,
                            double x0) {
  const double dt = cfg.dt_factor * h * h;
  const auto& phi = cfg.phi;
  const double time_term = (std::exp(-dt) - 1.0) / dt * phi.value(x0);
  const double adv = cfg.params.v * (phi.value(x0) - phi.value(x0 - h)) / h;
  const double lap = cfg.params.epsilon *
                     (phi.value(x0 + h) - 2.0 * phi.value(x0) + phi.value(x0 - h)) / (h * h);
  const std::int64_t count = TruncationPolicy::of_length(memory_length).count_for(h);
  GridSpec grid{h, dt, std::max<std::int64_t>(count + 2, 2), std::max(dt, 1.0)};
  const CoefficientTable table = build_coefficients(cfg.kind, TruncationPolicy::of_count(count),
                                                    grid);
  double nl = table.up_coeff * phi.value(x0 + h);
  for (std::int64_t m = 0; m <= table.max_shift(); ++m)
    nl += table.weights[static_cast<std::size_t>(m)] * phi.value(x0 - static_cast<double>(m) * h);
  nl *= table.dx_scale;
  return time_term + adv - lap + cfg.params.eta * nl;
}

double exact_operator_at(const TruncationStudyConfig& cfg, double* nonlocal_out) {
  const auto& phi = cfg.phi;
  const QuadratureResult q =
      continuous_nonlocal_reference(phi, cfg.x0, cfg.quad_tol, NonlocalForm::SecondDerivative);
  if (!q.converged)
    throw std::runtime_error("truncation study: quadrature failure, achieved error " +
                             std::to_string(q.error));
  if (nonlocal_out) *nonlocal_out = q.value;
  return -phi.value(cfg.x0) + cfg.params.v * phi.slope(cfg.x0) -
         cfg.params.epsilon * phi.curvature(cfg.x0) + cfg.params.eta * q.value;
}

}  // namespace

TruncationStudyResult truncation_order_study(const TruncationStudyConfig& config) {
  if (config.dx_list.size() < 2)
    throw std::invalid_argument("truncation_order_study: need at least 2 dx entries");
  TruncationStudyResult res;
  const double exact = exact_operator_at(config, &res.exact_nonlocal);
  for (double h : config.dx_list) {
    res.dx_values.push_back(h);
    res.error_values.push_back(
        std::fabs(exact - discrete_operator_at(config, h, config.memory_length, config.x0)));
  }
  res.fitted_order = fit_loglog_slope(res.dx_values, res.error_values);
  return res;
}

std::vector<double> truncation_memory_sweep(const TruncationStudyConfig& config, double dx,
                                            const std::vector<double>& memory_lengths) {
  const double exact = exact_operator_at(config, nullptr);
  std::vector<double> errors;
  errors.reserve(memory_lengths.size());
  for (double mem : memory_lengths)
    errors.push_back(std::fabs(exact - discrete_operator_at(config, dx, mem, config.x0)));
  return errors;
}

void write_truncation_csv(const TruncationStudyResult& result,
                          const TruncationStudyConfig& config, const std::string& path) {
  CsvWriter csv(path);
  csv.comment("kind", to_string(config.kind));
  csv.comment("x0", config.x0);
  csv.comment("memory_length", config.memory_length);
  csv.comment("dt_factor", config.dt_factor);
  csv.comment("quad_tol", config.quad_tol);
  csv.comment("exact_nonlocal", result.exact_nonlocal);
  csv.comment("fitted_order", result.fitted_order);
  csv.header({"dx", "local_error"});
  for (std::size_t i = 0; i < result.dx_values.size(); ++i)
    csv.row({result.dx_values[i], result.error_values[i]});
}

}  // namespace fowler
