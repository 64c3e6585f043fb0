#include "scj/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace scj::cli {

namespace pt = boost::property_tree;

namespace {

enum class Unit { Plain, Count, Density, Length, Power, Angle, Gain, Rate, PowerDensity, Frequency };

struct KeySpec {
  const char* key;
  const char* field;  ///< SystemParams field reported by validate()
  Unit unit;
  double PointState::*direct = nullptr;
  double SystemParams::*param = nullptr;
  int SystemParams::*count = nullptr;
};

const std::vector<KeySpec>& param_keys() {
  using S = SystemParams;
  static const std::vector<KeySpec> keys = {
      {"density.lambda_T", "lambda_T", Unit::Density, nullptr, &S::lambda_T},
      {"density.lambda_P", "lambda_P", Unit::Density, nullptr, &S::lambda_P},
      {"density.lambda_E", "lambda_E", Unit::Density, nullptr, &S::lambda_E},
      {"jamming.rho", "rho", Unit::Plain, nullptr, &S::rho},
      {"jamming.varrho", "varrho", Unit::Plain, nullptr, &S::varrho},
      {"jamming.beta", "beta", Unit::Plain, nullptr, &S::beta},
      {"geometry.r0", "r0", Unit::Length, nullptr, &S::r0},
      {"geometry.D", "D", Unit::Length, nullptr, &S::D},
      {"geometry.p_L", "p_L", Unit::Plain, nullptr, &S::p_L},
      {"channel.alpha_L", "alpha_L", Unit::Plain, nullptr, &S::alpha_L},
      {"channel.alpha_N", "alpha_N", Unit::Plain, nullptr, &S::alpha_N},
      {"channel.N_L", "N_L", Unit::Count, nullptr, nullptr, &S::N_L},
      {"channel.N_N", "N_N", Unit::Count, nullptr, nullptr, &S::N_N},
      {"channel.power", "P", Unit::Power, nullptr, &S::P},
      {"channel.sigma2", "sigma2", Unit::Power, nullptr, &S::sigma2},
      {"antenna.theta_T", "theta_T", Unit::Angle, nullptr, &S::theta_T},
      {"antenna.theta_R", "theta_R", Unit::Angle, nullptr, &S::theta_R},
      {"antenna.theta_E", "theta_E", Unit::Angle, nullptr, &S::theta_E},
      {"antenna.G_T", "G_T", Unit::Gain, nullptr, &S::G_T},
      {"antenna.g_T", "g_T", Unit::Gain, nullptr, &S::g_T},
      {"antenna.G_R", "G_R", Unit::Gain, nullptr, &S::G_R},
      {"antenna.g_R", "g_R", Unit::Gain, nullptr, &S::g_R},
      {"antenna.G_E", "G_E", Unit::Gain, nullptr, &S::G_E},
      {"antenna.g_E", "g_E", Unit::Gain, nullptr, &S::g_E},
      {"rates.R_t", "R_t", Unit::Rate, nullptr, &S::R_t},
      {"rates.R_e", "R_e", Unit::Rate, nullptr, &S::R_e},
      {"optimize.epsilon", "epsilon", Unit::Density, &PointState::epsilon},
  };
  return keys;
}

const KeySpec* find_key(const std::string& key) {
  for (const auto& k : param_keys())
    if (key == k.key) return &k;
  return nullptr;
}

std::string dotted_for_field(const std::string& field) {
  for (const auto& k : param_keys())
    if (field == k.field) return k.key;
  return field;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double convert(const std::string& key, Unit unit, double x, const std::string& suffix) {
  auto bad = [&]() -> double {
    throw ConfigError(key, "unit '" + suffix + "' not accepted here");
  };
  switch (unit) {
    case Unit::Plain:
    case Unit::Count:
      return suffix.empty() ? x : bad();
    case Unit::Density:
      if (suffix.empty() || suffix == "/m2" || suffix == "/m^2") return x;
      if (suffix == "/km2" || suffix == "/km^2") return x * 1e-6;
      return bad();
    case Unit::Length:
      if (suffix.empty() || suffix == "m") return x;
      if (suffix == "km") return x * 1e3;
      return bad();
    case Unit::Power:
      if (suffix.empty() || suffix == "W") return x;
      if (suffix == "mW") return x * 1e-3;
      if (suffix == "dBm") return db_to_linear(x - 30.0);
      if (suffix == "dBW") return db_to_linear(x);
      return bad();
    case Unit::PowerDensity:
      if (suffix.empty() || suffix == "W/Hz") return x;
      if (suffix == "dBm/Hz") return db_to_linear(x - 30.0);
      if (suffix == "dBW/Hz") return db_to_linear(x);
      return bad();
    case Unit::Frequency:
      if (suffix.empty() || suffix == "Hz") return x;
      if (suffix == "kHz") return x * 1e3;
      if (suffix == "MHz") return x * 1e6;
      if (suffix == "GHz") return x * 1e9;
      return bad();
    case Unit::Angle:
      if (suffix.empty() || suffix == "rad") return x;
      if (suffix == "deg") return x * std::numbers::pi / 180.0;
      return bad();
    case Unit::Gain:
      if (suffix.empty()) return x;
      if (suffix == "dB" || suffix == "dBi") return db_to_linear(x);
      return bad();
    case Unit::Rate:
      if (suffix.empty() || suffix == "bps/Hz" || suffix == "bit/s/Hz") return x;
      return bad();
  }
  return bad();
}

double parse_number(const std::string& key, const std::string& text, std::string* suffix) {
  const std::string t = trim(text);
  double x = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (first != last && *first == '+') ++first;
  const auto r = std::from_chars(first, last, x);
  if (r.ec != std::errc() || !std::isfinite(x))
    throw ConfigError(key, "expected a number, got '" + t + "'");
  *suffix = trim(std::string(r.ptr, last));
  return x;
}

double parse_with_unit(const std::string& key, Unit unit, const std::string& text) {
  std::string suffix;
  const double x = parse_number(key, text, &suffix);
  const double v = convert(key, unit, x, suffix);
  if (unit == Unit::Count && (v != std::floor(v) || v < 1.0))
    throw ConfigError(key, "expected a positive integer, got '" + trim(text) + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& text, std::uint64_t min) {
  const std::string t = trim(text);
  std::uint64_t v = 0;
  const auto r = std::from_chars(t.data(), t.data() + t.size(), v);
  if (r.ec != std::errc() || r.ptr != t.data() + t.size())
    throw ConfigError(key, "expected a non-negative integer, got '" + t + "'");
  if (v < min) throw ConfigError(key, "must be >= " + std::to_string(min));
  return v;
}

int parse_int(const std::string& key, const std::string& text, int min) {
  const auto v = parse_u64(key, text, static_cast<std::uint64_t>(std::max(min, 0)));
  if (v > 1000000) throw ConfigError(key, "value too large");
  return static_cast<int>(v);
}

double parse_plain(const std::string& key, const std::string& text) {
  return parse_with_unit(key, Unit::Plain, text);
}

bool parse_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "yes" || t == "1" || t == "on") return true;
  if (t == "false" || t == "no" || t == "0" || t == "off") return false;
  throw ConfigError(key, "expected true or false, got '" + t + "'");
}

pt::ptree read_tree(const std::string& text, const std::string& origin) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("", origin + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  for (const auto& [name, sec] : tree)
    if (sec.empty() && !sec.data().empty())
      throw ConfigError(name, "keys must sit inside a [section]");
  return tree;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ConfigError("", "cannot open config file '" + p.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Child keys override the base key by key.
void merge(pt::ptree& base, const pt::ptree& child) {
  for (const auto& [sec_name, sec] : child) {
    auto it = base.find(sec_name);
    if (it == base.not_found()) {
      base.push_back({sec_name, sec});
      continue;
    }
    auto& dst = base.to_iterator(it)->second;
    for (const auto& [key, val] : sec) {
      auto kit = dst.find(key);
      if (kit == dst.not_found()) dst.push_back({key, val});
      else dst.to_iterator(kit)->second = val;
    }
  }
}

pt::ptree resolve(const std::string& text, const std::string& origin,
                  const std::filesystem::path& dir, int depth) {
  if (depth > 8) throw ConfigError("run.base", "base chain deeper than 8 files");
  pt::ptree tree = read_tree(text, origin);
  auto run = tree.find("run");
  if (run == tree.not_found()) return tree;
  auto& run_sec = tree.to_iterator(run)->second;
  auto b = run_sec.find("base");
  if (b == run_sec.not_found()) return tree;
  const std::filesystem::path base_path = dir / trim(b->second.data());
  run_sec.erase(run_sec.to_iterator(b));
  pt::ptree merged =
      resolve(read_file(base_path), base_path.string(), base_path.parent_path(), depth + 1);
  merge(merged, tree);
  return merged;
}

const std::set<std::string> kRunKeys = {"mode",      "scheme",    "scenario",
                                        "engine",    "seed",      "trials",
                                        "trials_ps", "window_radius", "tolerance"};

SweepAxis parse_axis(const std::string& name, const std::string& text) {
  SweepAxis axis;
  axis.keys = split(name, '|');
  for (const auto& k : axis.keys) {
    if (!find_key(k)) throw ConfigError("sweep." + name, "'" + k + "' is not a sweepable key");
  }
  std::set<std::string> uniq(axis.keys.begin(), axis.keys.end());
  if (uniq.size() != axis.keys.size()) throw ConfigError("sweep." + name, "repeated key");
  const std::string body = trim(text);
  if (body.empty()) return axis;  // zero-length axis: empty grid
  for (const auto& item : split(body, ',')) {
    const auto parts = split(item, '|');
    if (parts.size() != axis.keys.size())
      throw ConfigError("sweep." + name, "entry '" + item + "' needs " +
                                             std::to_string(axis.keys.size()) + " values");
    std::vector<double> v;
    for (std::size_t j = 0; j < parts.size(); ++j)
      v.push_back(parse_with_unit("sweep." + axis.keys[j], find_key(axis.keys[j])->unit, parts[j]));
    axis.values.push_back(std::move(v));
  }
  // Zipped entries are ordered lexicographically.
  for (std::size_t i = 1; i < axis.values.size(); ++i)
    if (!(axis.values[i] > axis.values[i - 1]))
      throw ConfigError("sweep." + name, "grid must be strictly increasing");
  return axis;
}

ExperimentConfig build(const pt::ptree& tree, const std::string& path) {
  ExperimentConfig cfg;
  cfg.path = path;
  std::set<std::string> given;
  std::map<std::string, std::string> noise;

  for (const auto& [sec_name, sec] : tree) {
    for (const auto& [key, node] : sec) {
      const std::string full = sec_name + "." + key;
      const std::string val = node.data();
      if (sec_name == "sweep") {
        cfg.axes.push_back(parse_axis(key, val));
        continue;
      }
      if (const KeySpec* k = find_key(full)) {
        set_value(cfg.base, full, parse_with_unit(full, k->unit, val));
        given.insert(full);
        continue;
      }
      if (full == "channel.noise_density" || full == "channel.bandwidth") {
        noise[full] = val;
        continue;
      }
      if (sec_name == "run" && kRunKeys.count(key)) {
        const std::string t = trim(val);
        try {
          if (key == "mode") cfg.mode = parse_mode(t);
          else if (key == "scheme") cfg.scheme = parse_scheme(t);
          else if (key == "scenario") cfg.scenario = parse_scenario(t);
          else if (key == "engine") cfg.engine = parse_engine(t);
          else if (key == "seed") cfg.seed = parse_u64(full, t, 0);
          else if (key == "trials") cfg.trials = parse_u64(full, t, 1);
          else if (key == "trials_ps") cfg.trials_ps = parse_u64(full, t, 1);
          else if (key == "window_radius") cfg.window_radius = parse_with_unit(full, Unit::Length, t);
          else if (key == "tolerance") cfg.tolerance = parse_plain(full, t);
        } catch (const InvalidParams& e) {
          throw ConfigError(full, e.what());
        }
        continue;
      }
      if (sec_name == "optimize") {
        auto& s = cfg.solver;
        if (key == "problems") {
          cfg.problems.clear();
          for (const auto& p : split(val, ',')) {
            if (p != "p1" && p != "p2" && p != "p3" && p != "p4")
              throw ConfigError(full, "unknown problem '" + p + "' (p1, p2, p3, p4)");
            cfg.problems.push_back(p);
          }
          if (cfg.problems.empty()) throw ConfigError(full, "empty problem list");
        } else if (key == "trace") cfg.trace = parse_bool(full, val);
        else if (key == "grid_points") s.grid_points = parse_int(full, val, 2);
        else if (key == "golden_tol") s.golden_tol = parse_plain(full, val);
        else if (key == "max_golden_iter") s.max_golden_iter = parse_int(full, val, 0);
        else if (key == "density_grid_points") s.density_grid_points = parse_int(full, val, 2);
        else if (key == "split_grid_points") s.split_grid_points = parse_int(full, val, 2);
        else if (key == "inner_grid_points") s.inner_grid_points = parse_int(full, val, 2);
        else if (key == "joint_tol") s.joint_tol = parse_plain(full, val);
        else throw ConfigError(full, "unknown key");
        continue;
      }
      if (sec_name == "quadrature") {
        auto& q = cfg.quadrature;
        if (key == "abs_tol") q.abs_tol = parse_plain(full, val);
        else if (key == "rel_tol") q.rel_tol = parse_plain(full, val);
        else if (key == "max_depth") q.max_depth = parse_int(full, val, 1);
        else if (key == "max_intervals") q.max_intervals = parse_int(full, val, 1);
        else if (key == "tail_cutoff_radius")
          q.tail_cutoff_radius = parse_with_unit(full, Unit::Length, val);
        else throw ConfigError(full, "unknown key");
        continue;
      }
      if (sec_name == "output") {
        const std::string t = trim(val);
        if (key == "path") cfg.out_path = t;
        else if (key == "format") {
          if (t == "csv") cfg.format = Format::Csv;
          else if (t == "json") cfg.format = Format::Json;
          else throw ConfigError(full, "expected csv or json, got '" + t + "'");
        } else throw ConfigError(full, "unknown key");
        continue;
      }
      throw ConfigError(full, "unknown key");
    }
  }

  std::set<std::string> swept;
  for (const auto& a : cfg.axes)
    for (const auto& k : a.keys) {
      if (!swept.insert(k).second) throw ConfigError("sweep." + k, "swept on two axes");
    }

  // Noise: sigma2 directly, or spectral density times bandwidth.
  const bool have_nd = noise.count("channel.noise_density") > 0;
  const bool have_bw = noise.count("channel.bandwidth") > 0;
  if (have_nd != have_bw)
    throw ConfigError(have_nd ? "channel.bandwidth" : "channel.noise_density",
                      "missing key (noise_density and bandwidth go together)");
  if (have_nd) {
    if (given.count("channel.sigma2"))
      throw ConfigError("channel.sigma2", "give either sigma2 or noise_density + bandwidth");
    const double n0 = parse_with_unit("channel.noise_density", Unit::PowerDensity,
                                      noise["channel.noise_density"]);
    const double bw =
        parse_with_unit("channel.bandwidth", Unit::Frequency, noise["channel.bandwidth"]);
    if (!(bw > 0.0)) throw ConfigError("channel.bandwidth", "must be > 0");
    cfg.base.params.sigma2 = n0 * bw;
    given.insert("channel.sigma2");
  }

  const bool joint = std::any_of(cfg.problems.begin(), cfg.problems.end(),
                                 [](const std::string& p) { return p == "p3" || p == "p4"; });
  for (const auto& k : param_keys()) {
    const std::string key = k.key;
    if (given.count(key) || swept.count(key)) continue;
    if (key == "optimize.epsilon" && !(joint && cfg.mode == Mode::Optimize)) continue;
    throw ConfigError(key, "missing key");
  }

  if (!(cfg.window_radius > cfg.base.params.D))
    throw ConfigError("run.window_radius", "must exceed geometry.D");
  if (!(cfg.tolerance >= 0.0)) throw ConfigError("run.tolerance", "must be >= 0");
  if (!(cfg.quadrature.tail_cutoff_radius > cfg.base.params.D))
    throw ConfigError("quadrature.tail_cutoff_radius", "must exceed geometry.D");

  for (std::size_t i = 0; i < cfg.grid_size(); ++i) {
    const PointState s = cfg.point(i);
    try {
      s.params.validate();
    } catch (const InvalidParams& e) {
      std::string why = e.what();
      why = why.substr(why.find(": ") + 2);
      throw ConfigError(dotted_for_field(e.key()), why);
    }
    if (!(s.epsilon >= 0.0)) throw ConfigError("optimize.epsilon", "must be >= 0");
    if (cfg.window_radius <= s.params.D)
      throw ConfigError("run.window_radius", "must exceed geometry.D");
  }
  if (cfg.grid_size() == 0) {
    try {
      cfg.base.params.validate();
    } catch (const InvalidParams& e) {
      std::string why = e.what();
      why = why.substr(why.find(": ") + 2);
      throw ConfigError(dotted_for_field(e.key()), why);
    }
  }

  for (const auto& k : param_keys()) {
    if (std::string(k.key) == "optimize.epsilon" && !given.count(k.key)) continue;
    const PointState& s = cfg.base;
    double v = k.direct ? s.*(k.direct) : k.param ? s.params.*(k.param) : s.params.*(k.count);
    cfg.emitted.emplace_back(k.key, v);
  }
  return cfg;
}

}  // namespace

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Validate: return "validate";
    case Mode::Sweep: return "sweep";
    case Mode::Optimize: return "optimize";
  }
  return "?";
}

std::string to_string(Engine e) {
  switch (e) {
    case Engine::Analytic: return "analytic";
    case Engine::MonteCarlo: return "mc";
    case Engine::Both: return "both";
  }
  return "?";
}

Mode parse_mode(const std::string& s) {
  if (s == "validate") return Mode::Validate;
  if (s == "sweep") return Mode::Sweep;
  if (s == "optimize") return Mode::Optimize;
  throw ConfigError("run.mode", "unknown mode '" + s + "'");
}

Engine parse_engine(const std::string& s) {
  if (s == "analytic") return Engine::Analytic;
  if (s == "mc" || s == "montecarlo") return Engine::MonteCarlo;
  if (s == "both") return Engine::Both;
  throw ConfigError("run.engine", "unknown engine '" + s + "' (analytic, mc, both)");
}

std::size_t ExperimentConfig::grid_size() const {
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.size();
  return n;
}

PointState ExperimentConfig::point(std::size_t i) const {
  PointState s = base;
  for (std::size_t a = axes.size(); a-- > 0;) {
    const auto& ax = axes[a];
    const std::size_t j = i % ax.size();
    i /= ax.size();
    for (std::size_t k = 0; k < ax.keys.size(); ++k) set_value(s, ax.keys[k], ax.values[j][k]);
  }
  return s;
}

std::vector<double> ExperimentConfig::point_values(std::size_t i) const {
  std::vector<std::vector<double>> per_axis(axes.size());
  for (std::size_t a = axes.size(); a-- > 0;) {
    const std::size_t j = i % axes[a].size();
    i /= axes[a].size();
    per_axis[a] = axes[a].values[j];
  }
  std::vector<double> out;
  for (const auto& v : per_axis) out.insert(out.end(), v.begin(), v.end());
  return out;
}

std::vector<std::string> ExperimentConfig::axis_columns() const {
  std::vector<std::string> out;
  for (const auto& a : axes) out.insert(out.end(), a.keys.begin(), a.keys.end());
  return out;
}

bool is_sweepable(const std::string& key) { return find_key(key) != nullptr; }

void set_value(PointState& s, const std::string& key, double v) {
  const KeySpec* k = find_key(key);
  if (!k) throw ConfigError(key, "unknown key");
  if (k->direct) s.*(k->direct) = v;
  else if (k->param) s.params.*(k->param) = v;
  else s.params.*(k->count) = static_cast<int>(v);
}

double parse_quantity(const std::string& key, const std::string& text) {
  if (key == "channel.noise_density") return parse_with_unit(key, Unit::PowerDensity, text);
  if (key == "channel.bandwidth") return parse_with_unit(key, Unit::Frequency, text);
  const KeySpec* k = find_key(key);
  if (!k) throw ConfigError(key, "unknown key");
  return parse_with_unit(key, k->unit, text);
}

ExperimentConfig parse_config(const std::string& text, const std::string& origin) {
  return build(resolve(text, origin, std::filesystem::current_path(), 0), origin);
}

ExperimentConfig load_config(const std::string& path) {
  const std::filesystem::path p(path);
  if (!std::filesystem::exists(p)) throw ConfigError("", "config file '" + path + "' not found");
  return build(resolve(read_file(p), path, p.parent_path(), 0), path);
}

}  // namespace scj::cli
