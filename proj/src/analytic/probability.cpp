#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "scj/analytic/analytic.hpp"
#include "scj/analytic/model.hpp"

namespace scj {

namespace {

constexpr double kPi = std::numbers::pi;

double binom(int n, int k) {
  double c = 1.0;
  for (int j = 1; j <= k; ++j) c = c * (n - k + j) / j;
  return c;
}

double sign(int k) { return k % 2 == 1 ? 1.0 : -1.0; }

double connection_direct(const SystemParams& p, Scheme scheme, Scenario scenario,
                         const QuadratureConfig& cfg) {
  const bool general = scenario == Scenario::General;
  const double mu = alzer_tau(p.N_L) * std::pow(p.r0, p.alpha_L) * sinr_threshold_connection(p) /
                    (p.G_T * p.G_R);
  std::vector<double> terms;
  for (int k = 1; k <= p.N_L; ++k) {
    const double s = k * mu;
    double L = 1.0;
    switch (scheme) {
      case Scheme::SCJ:
        L = (general ? lt_jam_rx_general(s, p, cfg) : lt_jam_rx_simplified(s, p, cfg)).value *
            lt_php_rx_simplified(s, p, cfg).value;
        if (general) L *= lt_tx_rx(p.lambda_T, s, p, cfg).value;
        break;
      case Scheme::SCJQ:
        L = (general ? lt_jam_rx_general(s, p, cfg) : lt_jam_rx_simplified(s, p, cfg)).value;
        if (general) L *= lt_tx_rx(p.lambda_T, s, p, cfg).value;
        break;
      case Scheme::PJ:
        L = lt_tx_rx((general ? p.lambda_T : 0.0) + p.varrho * p.lambda_P, s, p, cfg).value;
        break;
      case Scheme::None:
        L = general ? lt_tx_rx(p.lambda_T, s, p, cfg).value : 1.0;
        break;
    }
    terms.push_back(binom(p.N_L, k) * sign(k) * std::exp(-s * p.noise_to_power()) * L);
  }
  return std::clamp(ordered_sum(terms.data(), static_cast<int>(terms.size())), 0.0, 1.0);
}

// Adaptive evaluation of the secrecy exponent. The hole-process factor is
// the single-hole transform, so this covers every case except SCJ in the
// general scenario.
double secrecy_direct(const SystemParams& p, Scheme scheme, Scenario scenario,
                      const QuadratureConfig& cfg) {
  if (p.lambda_E <= 0.0) return 1.0;
  const double theta = sinr_threshold_secrecy(p);
  if (theta <= 0.0) return 0.0;
  const DensityPlan plan = eavesdropper_plan(p, scheme, scenario);
  const auto gains = eavesdropper_gain_distribution(p);
  const double D = p.D, r0 = p.r0;
  auto integrand = [&](int k, double nu, double alpha, double r) {
    const double s = k * nu * std::pow(r, alpha);
    double v = std::exp(-s * p.noise_to_power()) *
               lt_ppp_eve(plan.phi, s, p, GainSet::Eavesdropper, cfg).value;
    if (plan.has_psi && v > 0.0) v *= lt_php_eve_simplified(s, r, p, cfg).value;
    return v * r;
  };
  std::vector<double> in_breaks{0.0};
  for (double b : {D - r0, r0})
    if (b > 0.0 && b < D) in_breaks.push_back(b);
  in_breaks.push_back(D);
  std::sort(in_breaks.begin(), in_breaks.end());

  std::vector<double> terms;
  for (const auto& g : gains.entries) {
    if (g.prob <= 0.0) continue;
    for (LinkState b : {LinkState::LoS, LinkState::NLoS}) {
      const int N = nakagami_shape(b, p);
      const double alpha = pathloss_exponent(b, p);
      const double nu = alzer_tau(N) * theta / g.gain;
      const double pb = b == LinkState::LoS ? p.p_L : p.p_N();
      for (int k = 1; k <= N; ++k) {
        const double I = integrate_pieces([&](double r) { return integrand(k, nu, alpha, r); },
                                          in_breaks, cfg)
                             .value;
        terms.push_back(pb * g.prob * binom(N, k) * sign(k) * I);
      }
    }
    const double nu = alzer_tau(p.N_N) * theta / g.gain;
    for (int k = 1; k <= p.N_N; ++k) {
      const double I =
          integrate_to_infinity([&](double r) { return integrand(k, nu, p.alpha_N, r); }, D, cfg)
              .value;
      terms.push_back(g.prob * binom(p.N_N, k) * sign(k) * I);
    }
  }
  const double S = ordered_sum(terms.data(), static_cast<int>(terms.size()));
  return std::clamp(std::exp(-2.0 * kPi * p.lambda_E * S), 0.0, 1.0);
}

}  // namespace

double connection_prob_simplified(const SystemParams& p, const QuadratureConfig& cfg) {
  return connection_direct(p, Scheme::SCJ, Scenario::Simplified, cfg);
}

double secrecy_prob_simplified(const SystemParams& p, const QuadratureConfig& cfg) {
  return secrecy_direct(p, Scheme::SCJ, Scenario::Simplified, cfg);
}

double connection_prob_general(const SystemParams& p, const QuadratureConfig& cfg) {
  return connection_direct(p, Scheme::SCJ, Scenario::General, cfg);
}

double secrecy_prob_general(const SystemParams& p, const QuadratureConfig& cfg) {
  if (p.lambda_E <= 0.0) return 1.0;
  return SecrecyModel(p, cfg, 0).evaluate(p, Scheme::SCJ, Scenario::General);
}

double connection_prob_pj(const SystemParams& p, const QuadratureConfig& cfg) {
  return connection_direct(p, Scheme::PJ, Scenario::General, cfg);
}

double secrecy_prob_pj(const SystemParams& p, const QuadratureConfig& cfg) {
  return secrecy_direct(p, Scheme::PJ, Scenario::General, cfg);
}

double connection_prob(const SystemParams& p, Scheme scheme, Scenario scenario,
                       const QuadratureConfig& cfg) {
  return connection_direct(p, scheme, scenario, cfg);
}

double secrecy_prob(const SystemParams& p, Scheme scheme, Scenario scenario,
                    const QuadratureConfig& cfg) {
  if (scheme == Scheme::SCJ && scenario == Scenario::General) return secrecy_prob_general(p, cfg);
  return secrecy_direct(p, scheme, scenario, cfg);
}

}  // namespace scj
