#pragma once

#include <numbers>
#include <stdexcept>
#include <string>

namespace scj {

/// Thrown when a parameter set violates a model invariant.
class InvalidParams : public std::invalid_argument {
public:
  InvalidParams(const std::string& key, const std::string& why)
      : std::invalid_argument(key + ": " + why), key_(key) {}
  const std::string& key() const noexcept { return key_; }

private:
  std::string key_;
};

enum class Scheme { SCJ, PJ, SCJQ, None };
enum class Scenario { Simplified, General };

std::string to_string(Scheme s);
std::string to_string(Scenario s);
Scheme parse_scheme(const std::string& s);
Scenario parse_scenario(const std::string& s);

/// All scalars shared by the analytic and Monte Carlo engines.
/// Densities in nodes/m^2, distances in m, powers in W, angles in rad,
/// gains linear. The receiver density equals lambda_T.
struct SystemParams {
  double lambda_T = 7e-5;
  double lambda_P = 1e-3;
  double lambda_E = 1e-4;
  double rho = 0.5;
  double varrho = 0.5;

  double r0 = 100.0;
  double D = 200.0;
  double p_L = 0.2;
  double alpha_L = 2.0;
  double alpha_N = 4.0;
  int N_L = 3;
  int N_N = 2;

  double P = 1.0;
  double sigma2 = 3.981071705534972e-12;

  double theta_T = std::numbers::pi / 6;
  double theta_R = std::numbers::pi / 6;
  double theta_E = std::numbers::pi / 6;
  double G_T = 10.0, g_T = 0.1;
  double G_R = 10.0, g_R = 0.1;
  double G_E = 10.0, g_E = 0.1;

  double R_t = 8.0;
  double R_e = 4.0;
  double beta = 0.8;

  /// Reference parameter set (-174 dBm/Hz over 1 GHz, 30 dBm).
  static SystemParams table1() { return {}; }

  /// Throws InvalidParams naming the first offending field.
  void validate() const;

  double p_N() const { return 1.0 - p_L; }
  double lambda_R() const { return lambda_T; }
  /// Density of in-ball active jammers, rho p_N lambda_P.
  double lambda_J() const { return rho * p_N() * lambda_P; }
  /// Density of the hole process of jammers, (1 - rho p_N) lambda_P.
  double lambda_J_bar() const { return (1.0 - rho * p_N()) * lambda_P; }
  double noise_to_power() const { return sigma2 / P; }
};

/// Fields other than densities, activation probabilities and beta.
/// Two parameter sets with equal structure share precomputed kernels.
bool same_structure(const SystemParams& a, const SystemParams& b);

double sinr_threshold_connection(const SystemParams& p);
double sinr_threshold_secrecy(const SystemParams& p);

/// tau_N = N (N!)^{-1/N}.
double alzer_tau(int N);

}  // namespace scj
