#include "scj/core/gain.hpp"

#include <numbers>

namespace scj {

namespace {

GainDistribution make(double theta_tx, double G_tx, double g_tx, double theta_rx,
                      double G_rx, double g_rx) {
  const double a = theta_tx / (2 * std::numbers::pi);
  const double b = theta_rx / (2 * std::numbers::pi);
  return GainDistribution{{{{G_tx * G_rx, a * b},
                            {G_tx * g_rx, a * (1 - b)},
                            {g_tx * G_rx, (1 - a) * b},
                            {g_tx * g_rx, (1 - a) * (1 - b)}}}};
}

}  // namespace

double GainDistribution::mean() const {
  double m = 0.0;
  for (const auto& e : entries) m += e.gain * e.prob;
  return m;
}

double GainDistribution::draw(double u) const {
  double acc = 0.0;
  for (const auto& e : entries) {
    acc += e.prob;
    if (u < acc) return e.gain;
  }
  // u landed in the rounding gap above the last cumulative sum.
  for (auto it = entries.rbegin(); it != entries.rend(); ++it)
    if (it->prob > 0) return it->gain;
  return entries.back().gain;
}

GainDistribution receiver_gain_distribution(const SystemParams& p) {
  return make(p.theta_T, p.G_T, p.g_T, p.theta_R, p.G_R, p.g_R);
}

GainDistribution eavesdropper_gain_distribution(const SystemParams& p) {
  return make(p.theta_T, p.G_T, p.g_T, p.theta_E, p.G_E, p.g_E);
}

}  // namespace scj
