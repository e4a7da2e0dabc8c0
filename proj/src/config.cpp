#include "fowler/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace fowler {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str());
}

KeyValueConfig KeyValueConfig::parse_string(const std::string& text) {
  KeyValueConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value", line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("line " + std::to_string(line_no) + ": empty key", line_no);
    if (cfg.values_.count(key))
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'",
                        line_no, key);
    cfg.values_[key] = value;
    cfg.lines_[key] = line_no;
  }
  return cfg;
}

bool KeyValueConfig::has(const std::string& key) const { return values_.count(key) > 0; }

int KeyValueConfig::line_of(const std::string& key) const {
  auto it = lines_.find(key);
  return it == lines_.end() ? 0 : it->second;
}

std::string KeyValueConfig::get_string(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("missing required field '" + key + "'", 0, key);
  return it->second;
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string& key) const {
  const std::string s = get_string(key);
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(line_of(key)) + ": field '" + key +
                          "' is not a number: '" + s + "'",
                      line_of(key), key);
  }
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

long long KeyValueConfig::get_int(const std::string& key) const {
  const std::string s = get_string(key);
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(line_of(key)) + ": field '" + key +
                          "' is not an integer: '" + s + "'",
                      line_of(key), key);
  }
}

long long KeyValueConfig::get_int(const std::string& key, long long fallback) const {
  return has(key) ? get_int(key) : fallback;
}

std::vector<double> KeyValueConfig::get_double_list(const std::string& key) const {
  const std::string s = get_string(key);
  std::vector<double> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("line " + std::to_string(line_of(key)) + ": field '" + key +
                            "' has a non-numeric entry: '" + item + "'",
                        line_of(key), key);
    }
  }
  if (out.empty())
    throw ConfigError("field '" + key + "' is an empty list", line_of(key), key);
  return out;
}

std::vector<double> KeyValueConfig::get_double_list(const std::string& key,
                                                    const std::vector<double>& fallback) const {
  return has(key) ? get_double_list(key) : fallback;
}

void KeyValueConfig::require_known(const std::set<std::string>& known) const {
  for (const auto& [key, value] : values_) {
    (void)value;
    if (!known.count(key))
      throw ConfigError("line " + std::to_string(line_of(key)) + ": unknown field '" + key + "'",
                        line_of(key), key);
  }
}

SchemeConfig RunConfig::scheme_config() const {
  SchemeConfig c;
  c.kind = kind;
  c.flux = flux;
  c.params = params;
  c.grid = grid;
  c.truncation = truncation;
  c.boundary = boundary;
  c.use_fft = use_fft;
  return c;
}

RunConfig RunConfig::load(const std::string& path) {
  return from_kv(KeyValueConfig::parse_file(path));
}

RunConfig RunConfig::from_kv(const KeyValueConfig& kv) {
  static const std::set<std::string> known = {
      "model.v", "model.epsilon", "model.eta",
      "grid.dx", "grid.dt", "grid.n_cells", "grid.t_final",
      "scheme.kind", "scheme.flux", "scheme.boundary", "scheme.use_fft",
      "truncation.memory_length",
      "simulate.snapshot_every", "simulate.bump_center", "simulate.bump_width",
      "simulate.bump_height",
      "analyze.theta0", "analyze.samples",
      "converge.dx_list", "converge.t_final", "converge.dt_factor", "converge.domain_length",
      "truncstudy.x0", "truncstudy.dx_list", "truncstudy.memory_length",
      "truncstudy.gauss_center", "truncstudy.gauss_width",
      "output.prefix"};
  kv.require_known(known);

  RunConfig rc;
  rc.params.v = kv.get_double("model.v");
  rc.params.epsilon = kv.get_double("model.epsilon");
  rc.params.eta = kv.get_double("model.eta");

  rc.grid.dx = kv.get_double("grid.dx");
  rc.grid.dt = kv.get_double("grid.dt");
  rc.grid.n_cells = kv.get_int("grid.n_cells");
  rc.grid.t_final = kv.get_double("grid.t_final");

  auto wrap = [&](const char* field, auto&& fn) {
    try {
      fn();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("field '") + field + "': " + e.what(), kv.line_of(field),
                        field);
    }
  };
  wrap("model.epsilon", [&] { rc.params.validate(); });
  wrap("grid.dx", [&] { rc.grid.validate(); });

  wrap("scheme.kind", [&] { rc.kind = parse_kind(kv.get_string("scheme.kind", "i1")); });
  wrap("scheme.flux", [&] { rc.flux = parse_flux(kv.get_string("scheme.flux", "linear_upwind")); });
  wrap("scheme.boundary",
       [&] { rc.boundary = parse_boundary(kv.get_string("scheme.boundary", "causal")); });
  rc.use_fft = kv.get_int("scheme.use_fft", 1) != 0;

  const double default_memory = rc.grid.domain_length();
  rc.truncation = TruncationPolicy::of_length(
      kv.get_double("truncation.memory_length", default_memory));
  wrap("truncation.memory_length", [&] { rc.truncation.count_for(rc.grid.dx); });

  rc.snapshot_every = kv.get_int("simulate.snapshot_every", 0);
  rc.bump_center = kv.get_double("simulate.bump_center", 0.5 * rc.grid.domain_length());
  rc.bump_width = kv.get_double("simulate.bump_width", 0.125 * rc.grid.domain_length());
  rc.bump_height = kv.get_double("simulate.bump_height", 1.0);

  rc.theta0 = kv.get_double("analyze.theta0", rc.theta0);
  rc.samples = static_cast<int>(kv.get_int("analyze.samples", rc.samples));
  if (!(rc.theta0 > 0.0) || !(rc.theta0 < 3.14159265358979))
    throw ConfigError("field 'analyze.theta0' must lie in (0, pi)", kv.line_of("analyze.theta0"),
                      "analyze.theta0");
  if (rc.samples < 2)
    throw ConfigError("field 'analyze.samples' must be >= 2", kv.line_of("analyze.samples"),
                      "analyze.samples");

  rc.converge_dx_list = kv.get_double_list("converge.dx_list", rc.converge_dx_list);
  rc.converge_t_final = kv.get_double("converge.t_final", rc.converge_t_final);
  rc.converge_dt_factor = kv.get_double("converge.dt_factor", rc.converge_dt_factor);
  rc.converge_domain = kv.get_double("converge.domain_length", rc.converge_domain);

  rc.study_x0 = kv.get_double("truncstudy.x0", rc.study_x0);
  rc.study_dx_list = kv.get_double_list("truncstudy.dx_list", rc.study_dx_list);
  rc.study_memory_length = kv.get_double("truncstudy.memory_length", rc.study_memory_length);
  rc.study_gauss_center = kv.get_double("truncstudy.gauss_center", rc.study_gauss_center);
  rc.study_gauss_width = kv.get_double("truncstudy.gauss_width", rc.study_gauss_width);

  rc.out_prefix = kv.get_string("output.prefix", rc.out_prefix);
  return rc;
}

}  // namespace fowler
