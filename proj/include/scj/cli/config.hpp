#pragma once

// Experiment configuration: INI-style sections with dotted keys.
//
//   [run]      mode, scheme, scenario, engine, seed, trials, trials_ps,
//              window_radius, tolerance, base (file merged underneath)
//   [density]  lambda_T, lambda_P, lambda_E
//   [jamming]  rho, varrho, beta
//   [geometry] r0, D, p_L
//   [channel]  alpha_L, alpha_N, N_L, N_N, power, sigma2 | noise_density + bandwidth
//   [antenna]  theta_T/R/E, G_T/R/E, g_T/R/E
//   [rates]    R_t, R_e
//   [sweep]    <section.key> = v1, v2, ...   or   <a>|<b> = a1|b1, a2|b2
//   [optimize] problems, epsilon, solver knobs
//   [quadrature], [output]

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "scj/analytic/quadrature.hpp"
#include "scj/core/params.hpp"
#include "scj/opt/optimizer.hpp"

namespace scj::cli {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kAnalyticEngineVersion = 1;
inline constexpr int kMonteCarloEngineVersion = 1;

/// Configuration problem, tagged with the dotted key that caused it.
class ConfigError : public std::runtime_error {
public:
  ConfigError(const std::string& key, const std::string& why)
      : std::runtime_error(key.empty() ? why : key + ": " + why), key_(key) {}
  const std::string& key() const noexcept { return key_; }

private:
  std::string key_;
};

enum class Mode { Validate, Sweep, Optimize };
enum class Engine { Analytic, MonteCarlo, Both };
enum class Format { Csv, Json };

std::string to_string(Mode m);
std::string to_string(Engine e);
Mode parse_mode(const std::string& s);
Engine parse_engine(const std::string& s);

/// Values that a sweep axis may vary.
struct PointState {
  SystemParams params;
  double epsilon = 0.0;
};

/// One axis; several keys when zipped. values[i][j] is key j at step i.
struct SweepAxis {
  std::vector<std::string> keys;
  std::vector<std::vector<double>> values;
  std::size_t size() const { return values.size(); }
};

struct ExperimentConfig {
  std::string path;
  std::optional<Mode> mode;
  PointState base;
  Scheme scheme = Scheme::SCJ;
  Scenario scenario = Scenario::General;
  Engine engine = Engine::Analytic;
  std::uint64_t seed = 42;
  std::uint64_t trials = 10000;     ///< connection trials
  std::uint64_t trials_ps = 100000; ///< secrecy trials
  double window_radius = 500.0;
  double tolerance = 0.05;
  std::vector<SweepAxis> axes;
  std::vector<std::string> problems{"p1"};
  bool trace = true;
  SolverConfig solver;
  QuadratureConfig quadrature;
  std::string out_path;
  Format format = Format::Csv;
  /// Normalized parameter values in key order, for the metadata block.
  std::vector<std::pair<std::string, double>> emitted;

  std::size_t grid_size() const;
  /// Parameters at grid point i (first axis varies slowest).
  PointState point(std::size_t i) const;
  /// Axis values at grid point i, flattened over zipped keys.
  std::vector<double> point_values(std::size_t i) const;
  std::vector<std::string> axis_columns() const;
};

/// Reads, merges `run.base`, normalizes units and validates.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& text, const std::string& origin = "<string>");

/// Numeric value with an optional unit suffix, converted to the unit
/// class of `key` (W, m, rad, linear gain, ...).
double parse_quantity(const std::string& key, const std::string& text);

/// Sets a sweepable key on the state; throws ConfigError on unknown keys.
void set_value(PointState& s, const std::string& key, double v);
bool is_sweepable(const std::string& key);

}  // namespace scj::cli
