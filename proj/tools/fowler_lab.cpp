// fowler_lab: finite-difference laboratory for the Fowler dune equation.
// Subcommands: simulate, analyze, tables, converge, truncation.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "fowler/config.hpp"
#include "fowler/csv.hpp"
#include "fowler/experiments.hpp"
#include "fowler/scheme.hpp"
#include "fowler/spectral.hpp"

namespace {

using namespace fowler;

std::string join_path(const std::string& dir, const std::string& file) {
  if (dir.empty() || dir == ".") return file;
  return dir.back() == '/' ? dir + file : dir + "/" + file;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir) {
  RunConfig rc = RunConfig::load(config_path);
  SchemeConfig sc = rc.scheme_config();
  const DimensionlessGroups groups = derive_groups(sc.params, sc.grid);
  const double cfl = cfl_mod(sc.kind, groups);
  std::printf("CFL_mod(%s) = %.6g\n", to_string(sc.kind).c_str(), cfl);
  if (cfl > 1.0)
    std::printf("warning: modified CFL number exceeds 1; expect high-frequency instability\n");

  Field u0 = make_initial_bump(sc.grid, rc.bump_center, rc.bump_width, rc.bump_height);
  Trajectory traj = integrate(u0, sc, rc.snapshot_every);
  const std::string path = join_path(out_dir, rc.out_prefix + "_trajectory.csv");
  write_trajectory_csv(traj, path);
  std::printf("trajectory written to %s (%zu snapshots)\n", path.c_str(),
              traj.snapshots.size());
  if (traj.blowup_step) {
    std::printf("blow-up detected at step %lld; partial trajectory retained\n",
                static_cast<long long>(*traj.blowup_step));
    return 2;
  }
  return 0;
}

int cmd_analyze(const std::string& config_path, const std::string& out_dir, double theta0_opt,
                int samples_opt, const std::string& kind_opt) {
  RunConfig rc = RunConfig::load(config_path);
  if (!kind_opt.empty()) rc.kind = parse_kind(kind_opt);
  if (theta0_opt > 0.0) rc.theta0 = theta0_opt;
  if (samples_opt > 0) rc.samples = samples_opt;

  const DimensionlessGroups groups = derive_groups(rc.params, rc.grid);
  const StabilityReport rep =
      stability_verdict(rc.kind, groups, rc.params, rc.grid, rc.theta0, rc.samples);
  std::printf("scheme %s: Cr=%.6g Df=%.6g Fo=%.6g\n", to_string(rc.kind).c_str(), groups.cr,
              groups.df, groups.fo);
  std::printf("CFL_mod = %.6g (condition %s)\n", rep.cfl_mod, rep.cfl_ok ? "met" : "violated");
  std::printf("high-frequency condition at theta0=%.6g: %s (dx bound %.6g)\n", rep.theta0,
              rep.highfreq_ok ? "met" : "violated",
              high_freq_dx_bound(rc.kind, rc.params, rc.theta0));
  std::printf("verdict: %s (max |g| over (theta0, pi] = %.12g)\n",
              rep.verdict ? "stable" : "unstable", rep.max_high_freq_gain);

  const auto sweep = spectral_sweep(rc.kind, groups, rc.samples);
  const std::string path =
      join_path(out_dir, rc.out_prefix + "_sweep_" + to_string(rc.kind) + ".csv");
  CsvWriter csv(path);
  csv.comment("kind", to_string(rc.kind));
  csv.comment("cr", groups.cr);
  csv.comment("df", groups.df);
  csv.comment("fo", groups.fo);
  csv.comment("theta0", rep.theta0);
  csv.comment("samples", static_cast<double>(rc.samples));
  csv.comment("cfl_mod", rep.cfl_mod);
  csv.comment("verdict", rep.verdict ? "stable" : "unstable");
  csv.header({"theta", "re_g", "im_g", "abs_g", "abs_gcont", "delta", "ratio", "scheme_kind"});
  for (const SpectralSample& s : sweep) {
    csv.mixed_row({CsvWriter::format(s.theta), CsvWriter::format(s.g.real()),
                   CsvWriter::format(s.g.imag()), CsvWriter::format(std::abs(s.g)),
                   CsvWriter::format(std::abs(s.g_cont)), CsvWriter::format(s.delta),
                   CsvWriter::format(s.ratio), to_string(s.kind)});
  }
  std::printf("sweep written to %s\n", path.c_str());
  return rep.verdict ? 0 : 2;
}

int cmd_tables(const std::vector<int>& ids, const std::string& out_dir) {
  for (int id : ids) {
    const auto rows = reproduce_table(id);
    const std::string path = join_path(out_dir, "table" + std::to_string(id) + ".csv");
    write_table_csv(rows, id, path);
    std::printf("table %d written to %s (%zu rows)\n", id, path.c_str(), rows.size());
  }
  return 0;
}

int cmd_converge(const std::string& config_path, const std::string& out_dir,
                 const std::string& kind_opt) {
  RunConfig rc = RunConfig::load(config_path);
  ConvergenceConfig cc;
  cc.kind = kind_opt.empty() ? rc.kind : parse_kind(kind_opt);
  cc.flux = rc.flux;
  cc.params = rc.params;
  cc.dx_list = rc.converge_dx_list;
  cc.domain_length = rc.converge_domain;
  cc.t_final = rc.converge_t_final;
  cc.dt_factor = rc.converge_dt_factor;
  cc.use_fft = rc.use_fft;
  const ConvergenceResult res = convergence_study(cc);
  const std::string path =
      join_path(out_dir, rc.out_prefix + "_converge_" + to_string(cc.kind) + ".csv");
  write_convergence_csv(res, cc, path);
  if (!res.valid) {
    std::printf("convergence study failed: %s\n", res.message.c_str());
    return 2;
  }
  std::printf("fitted E1 slope = %.4f (results in %s)\n", res.fitted_slope, path.c_str());
  return 0;
}

int cmd_truncation(const std::string& config_path, const std::string& out_dir,
                   const std::string& kind_opt) {
  RunConfig rc = RunConfig::load(config_path);
  TruncationStudyConfig tc;
  tc.kind = kind_opt.empty() ? rc.kind : parse_kind(kind_opt);
  tc.phi = gaussian_profile(rc.study_gauss_center, rc.study_gauss_width);
  tc.params = rc.params;
  tc.x0 = rc.study_x0;
  tc.dx_list = rc.study_dx_list;
  tc.memory_length = rc.study_memory_length;
  const TruncationStudyResult res = truncation_order_study(tc);
  const std::string path =
      join_path(out_dir, rc.out_prefix + "_truncation_" + to_string(tc.kind) + ".csv");
  write_truncation_csv(res, tc, path);
  std::printf("fitted local-error order = %.4f (results in %s)\n", res.fitted_order,
              path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-difference laboratory for the Fowler dune equation"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", kind_opt;
  double theta0 = -1.0;
  int samples = -1;
  std::vector<int> table_ids{1, 2, 3};

  auto* simulate = app.add_subcommand("simulate", "run a time integration, write trajectory CSV");
  simulate->add_option("--config", config_path, "config file")->required();
  simulate->add_option("--out", out_dir, "output directory");

  auto* analyze = app.add_subcommand("analyze", "stability verdict and amplification sweep CSV");
  analyze->add_option("--config", config_path, "config file")->required();
  analyze->add_option("--out", out_dir, "output directory");
  analyze->add_option("--theta0", theta0, "stability threshold frequency");
  analyze->add_option("--samples", samples, "theta samples for the sweep/verdict");
  analyze->add_option("--kind", kind_opt, "override scheme kind (i1|i2|i3)");

  auto* tables = app.add_subcommand("tables", "reproduce the dampening/phase-error tables");
  tables->add_option("ids", table_ids, "table ids (default: 1 2 3)");
  tables->add_option("--out", out_dir, "output directory");

  auto* converge = app.add_subcommand("converge", "grid-refinement convergence study");
  converge->add_option("--config", config_path, "config file")->required();
  converge->add_option("--out", out_dir, "output directory");
  converge->add_option("--kind", kind_opt, "override scheme kind");

  auto* truncation = app.add_subcommand("truncation", "local truncation-order study");
  truncation->add_option("--config", config_path, "config file")->required();
  truncation->add_option("--out", out_dir, "output directory");
  truncation->add_option("--kind", kind_opt, "override scheme kind");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return cmd_simulate(config_path, out_dir);
    if (analyze->parsed()) return cmd_analyze(config_path, out_dir, theta0, samples, kind_opt);
    if (tables->parsed()) return cmd_tables(table_ids, out_dir);
    if (converge->parsed()) return cmd_converge(config_path, out_dir, kind_opt);
    if (truncation->parsed()) return cmd_truncation(config_path, out_dir, kind_opt);
  } catch (const fowler::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 2;
  }
  return 0;
}
