#pragma once

#include <array>

#include "scj/core/params.hpp"

namespace scj {

struct GainEntry {
  double gain;
  double prob;
};

/// Discrete effective antenna gain: main/back lobe of the transmitter
/// times main/back lobe of the receiving node.
struct GainDistribution {
  std::array<GainEntry, 4> entries;

  double mean() const;
  /// Inverse-CDF draw from a uniform u in [0,1).
  double draw(double u) const;
};

GainDistribution receiver_gain_distribution(const SystemParams& p);
GainDistribution eavesdropper_gain_distribution(const SystemParams& p);

}  // namespace scj
