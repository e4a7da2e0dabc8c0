#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "fowler/config.hpp"

using namespace fowler;

namespace {

const char* kStrongConfig =
    "# strong anti-diffusion configuration\n"
    "model.v = 1.0\n"
    "model.epsilon = 0.5\n"
    "model.eta = 8.0\n"
    "grid.dx = 0.05\n"
    "grid.dt = 0.001\n"
    "grid.n_cells = 200\n"
    "grid.t_final = 0.05\n"
    "scheme.kind = i1\n"
    "scheme.flux = burgers_upwind\n"
    "simulate.bump_center = 3.0\n"
    "simulate.bump_width = 1.0\n"
    "simulate.bump_height = 0.5\n"
    "simulate.snapshot_every = 25\n";

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = std::string("cli_") + name + ".cfg";
  std::ofstream out(path);
  out << text;
  return path;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(FOWLER_LAB_BIN) + " " + args + " > cli_stdout.txt 2>&1";
  const int raw = std::system(cmd.c_str());
  return WEXITSTATUS(raw);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("config parsing: values, defaults, diagnostics") {
  const auto kv = KeyValueConfig::parse_string(
      "model.v = 2.5\n"
      "grid.dx=0.1   # trailing comment\n"
      "list.a = 1, 2.5, -3\n");
  CHECK(kv.get_double("model.v") == 2.5);
  CHECK(kv.get_double("grid.dx") == 0.1);
  CHECK(kv.get_double_list("list.a") == std::vector<double>{1.0, 2.5, -3.0});
  CHECK(kv.get_double("missing.key", 7.0) == 7.0);
  CHECK_THROWS_AS(kv.get_double("missing.key"), ConfigError);

  CHECK_THROWS_AS(KeyValueConfig::parse_string("not a key value line\n"), ConfigError);
  CHECK_THROWS_AS(KeyValueConfig::parse_string("a.b = 1\na.b = 2\n"), ConfigError);

  try {
    KeyValueConfig::parse_string("x = 1\n\ny = oops\n").get_double("y");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line == 3);
    CHECK(e.field == "y");
  }
}

TEST_CASE("run config validation") {
  auto base = KeyValueConfig::parse_string(kStrongConfig);
  const RunConfig rc = RunConfig::from_kv(base);
  CHECK(rc.params.eta == 8.0);
  CHECK(rc.grid.n_cells == 200);
  CHECK(to_string(rc.flux) == "burgers_upwind");
  // full-memory default
  CHECK(rc.truncation.count_for(rc.grid.dx) == 200);

  CHECK_THROWS_AS(
      RunConfig::from_kv(KeyValueConfig::parse_string("model.v = 1\nmodel.oops = 2\n")),
      ConfigError);
  // zero cells must be rejected before any computation
  std::string bad = kStrongConfig;
  bad.replace(bad.find("grid.n_cells = 200"), 18, "grid.n_cells = 0  ");
  CHECK_THROWS_AS(RunConfig::from_kv(KeyValueConfig::parse_string(bad)), ConfigError);
}

TEST_CASE("cli simulate: strong anti-diffusion run exits clean without warning") {
  const std::string cfg = write_temp("fig4", kStrongConfig);
  const int rc = run_cli("simulate --config " + cfg);
  const std::string out = read_file("cli_stdout.txt");
  CHECK(rc == 0);
  CHECK(out.find("CFL_mod(i1) = 0.94") != std::string::npos);
  CHECK(out.find("warning") == std::string::npos);
  // trajectory CSV exists with the expected header
  const std::string csv = read_file("fowler_trajectory.csv");
  CHECK(csv.find("t,x,u") != std::string::npos);
  CHECK(csv.find("# eta = 8") != std::string::npos);
}

TEST_CASE("cli simulate: doubled dt warns about the CFL number") {
  std::string text = kStrongConfig;
  text.replace(text.find("grid.dt = 0.001"), 15, "grid.dt = 0.002");
  const std::string cfg = write_temp("fig4x2", text);
  run_cli("simulate --config " + cfg);
  const std::string out = read_file("cli_stdout.txt");
  CHECK(out.find("warning") != std::string::npos);
}

TEST_CASE("cli simulate: invalid config exits 1 with a diagnostic") {
  std::string text = kStrongConfig;
  text.replace(text.find("grid.n_cells = 200"), 18, "grid.n_cells = 0  ");
  const std::string cfg = write_temp("empty", text);
  const int rc = run_cli("simulate --config " + cfg);
  CHECK(rc == 1);
  const std::string out = read_file("cli_stdout.txt");
  CHECK(out.find("n_cells") != std::string::npos);
}

TEST_CASE("cli analyze: coarse-mesh config is stable despite the dx bound") {
  const std::string cfg = write_temp("fig5",
                                     "model.v = 1.0\n"
                                     "model.epsilon = 0.1\n"
                                     "model.eta = 1.0\n"
                                     "grid.dx = 0.5\n"
                                     "grid.dt = 0.01\n"
                                     "grid.n_cells = 64\n"
                                     "grid.t_final = 1.0\n"
                                     "analyze.samples = 256\n");
  const int rc = run_cli("analyze --config " + cfg);
  const std::string out = read_file("cli_stdout.txt");
  CHECK(rc == 0);
  CHECK(out.find("verdict: stable") != std::string::npos);
  CHECK(out.find("high-frequency condition at theta0=1.5708: violated") != std::string::npos);
  const std::string csv = read_file("fowler_sweep_i1.csv");
  CHECK(csv.find("theta,re_g,im_g,abs_g,abs_gcont,delta,ratio,scheme_kind") != std::string::npos);
}

TEST_CASE("cli analyze: diffusion-heavy groups are flagged unstable") {
  const std::string cfg = write_temp("unstable",
                                     "model.v = 0.1\n"
                                     "model.epsilon = 0.4\n"
                                     "model.eta = 0.1\n"
                                     "grid.dx = 1.0\n"
                                     "grid.dt = 1.0\n"
                                     "grid.n_cells = 64\n"
                                     "grid.t_final = 2.0\n"
                                     "analyze.samples = 256\n");
  const int rc = run_cli("analyze --config " + cfg);
  CHECK(rc == 2);
  const std::string out = read_file("cli_stdout.txt");
  CHECK(out.find("verdict: unstable") != std::string::npos);
}

TEST_CASE("cli tables writes the three reference tables") {
  const int rc = run_cli("tables 1 2 3");
  CHECK(rc == 0);
  for (int id : {1, 2, 3}) {
    const std::string csv = read_file("table" + std::to_string(id) + ".csv");
    CHECK(csv.find("cr,df,fo,theta") != std::string::npos);
  }
}

TEST_CASE("cli output is byte-stable across runs") {
  const std::string cfg = write_temp("repeat", kStrongConfig);
  run_cli("simulate --config " + cfg);
  const std::string first = read_file("fowler_trajectory.csv");
  run_cli("simulate --config " + cfg);
  const std::string second = read_file("fowler_trajectory.csv");
  CHECK(first == second);
  CHECK(!first.empty());
}
