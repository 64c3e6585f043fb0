#pragma once

#include <cmath>

#include "scj/core/params.hpp"
#include "scj/core/random.hpp"

namespace scj {

enum class LinkState { LoS, NLoS };

/// LoS with probability p_L inside the ball, never outside.
inline LinkState link_state_from_uniform(double r, double p_L, double D, double u) {
  return (r <= D && u < p_L) ? LinkState::LoS : LinkState::NLoS;
}

template <class Rng>
LinkState sample_link_state(double r, double p_L, double D, Rng& rng) {
  KeyedStream s(rng());
  return link_state_from_uniform(r, p_L, D, s.uniform());
}

inline int nakagami_shape(LinkState s, const SystemParams& p) {
  return s == LinkState::LoS ? p.N_L : p.N_N;
}
inline double pathloss_exponent(LinkState s, const SystemParams& p) {
  return s == LinkState::LoS ? p.alpha_L : p.alpha_N;
}

/// Gamma(N_b, N_b) power gain.
template <class Rng>
double sample_fading(LinkState state, const SystemParams& p, Rng& rng) {
  KeyedStream s(rng());
  return s.gamma_unit_mean(nakagami_shape(state, p));
}

/// r^{-alpha}, with the common integer exponents done by multiplication.
inline double pathloss(double r, double alpha) {
  if (alpha == 2.0) return 1.0 / (r * r);
  if (alpha == 4.0) {
    const double r2 = r * r;
    return 1.0 / (r2 * r2);
  }
  return std::pow(r, -alpha);
}

}  // namespace scj
