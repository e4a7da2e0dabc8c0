#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fowler/scheme.hpp"

namespace fowler {

/// Parse/validation failure with the offending line and field attached.
struct ConfigError : std::runtime_error {
  ConfigError(const std::string& message, int line_number = 0, std::string field_name = {})
      : std::runtime_error(message), line(line_number), field(std::move(field_name)) {}
  int line;
  std::string field;
};

/// Flat key=value text with '#' comments; keys use sectioned dotted names
/// (model.v, grid.dx, scheme.kind, ...).
class KeyValueConfig {
 public:
  static KeyValueConfig parse_file(const std::string& path);
  static KeyValueConfig parse_string(const std::string& text);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key) const;
  long long get_int(const std::string& key, long long fallback) const;
  std::vector<double> get_double_list(const std::string& key) const;
  std::vector<double> get_double_list(const std::string& key,
                                      const std::vector<double>& fallback) const;

  /// Keys present in the file but not in `known` -> ConfigError (typo guard).
  void require_known(const std::set<std::string>& known) const;
  int line_of(const std::string& key) const;

 private:
  std::map<std::string, std::string> values_;
  std::map<std::string, int> lines_;
};

/// Fully validated run configuration for the CLI front end.
struct RunConfig {
  PhysicalParams params;
  GridSpec grid;
  DiscretizationKind kind = DiscretizationKind::I1;
  FluxKind flux = FluxKind::LinearUpwind;
  BoundaryKind boundary = BoundaryKind::Causal;
  TruncationPolicy truncation;  // defaults to full memory (domain length)
  bool use_fft = true;

  // simulate
  std::int64_t snapshot_every = 0;
  double bump_center = 0.0, bump_width = 0.0, bump_height = 1.0;  // 0 width -> derived default

  // analyze
  double theta0 = 1.5707963267948966;
  int samples = 4096;

  // converge
  std::vector<double> converge_dx_list{0.1, 0.05, 0.025, 0.0125};
  double converge_t_final = 0.25;
  double converge_dt_factor = 0.4;
  double converge_domain = 4.0;

  // truncation study
  double study_x0 = 2.5;
  std::vector<double> study_dx_list{0.08, 0.04, 0.02, 0.01};
  double study_memory_length = 16.0;
  double study_gauss_center = 2.0;
  double study_gauss_width = 1.0;

  std::string out_prefix = "fowler";

  SchemeConfig scheme_config() const;

  static RunConfig load(const std::string& path);
  static RunConfig from_kv(const KeyValueConfig& kv);
};

}  // namespace fowler
