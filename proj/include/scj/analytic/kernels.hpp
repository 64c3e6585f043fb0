#pragma once

// Interference-exponent integrals shared by every transform. All of them are
// per unit density: a transform equals exp(-density * kernel).

#include <algorithm>
#include <array>
#include <cmath>

#include "scj/analytic/quadrature.hpp"
#include "scj/core/channel.hpp"
#include "scj/core/gain.hpp"
#include "scj/core/params.hpp"

namespace scj {

/// 1 - (1 + y)^{-N} without cancellation for small y.
inline double one_minus_inverse_power(double y, int N) {
  if (y <= 0.0) return 0.0;
  if (y > 1e12) return -std::expm1(-N * std::log1p(y));
  // (1+y)^N - 1 = sum_{j>=1} C(N,j) y^j, all terms positive.
  double binom = N, poly = 0.0, yp = y;
  for (int j = 1; j <= N; ++j) {
    poly += binom * yp;
    yp *= y;
    binom = binom * (N - j) / (j + 1);
  }
  return poly / (1.0 + poly);
}

inline double integer_or_real_power(double r, double alpha) {
  if (alpha == 2.0) return r * r;
  if (alpha == 4.0) {
    const double r2 = r * r;
    return r2 * r2;
  }
  if (alpha == 3.0) return r * r * r;
  return std::pow(r, alpha);
}

/// F_b(x, r) = 1 - (1 + x / (N_b r^alpha_b))^{-N_b}. Tends to 1 as r -> 0.
double F(LinkState b, double x, double r, const SystemParams& p);

/// Clamped arccos of the hole-overlap argument (u^2 + r^2 - D^2) / (2 u r).
inline double overlap_arccos(double u, double r, double D) {
  if (u <= 0.0 || r <= 0.0) return std::acos(0.0);
  const double a = (u * u + r * r - D * D) / (2.0 * u * r);
  return std::acos(std::clamp(a, -1.0, 1.0));
}

/// Integration limits of the hole-corrected exponents.
inline double hole_C1(double u, double D) { return std::min(D, std::max(0.0, D - u)); }
inline double hole_C2(double u, double D) { return std::min(D, std::max(u - D, D - u)); }
inline double hole_C3(double u, double D) { return std::max(D, u - D); }

/// Angle of a circle of radius r around the victim that is kept (not inside
/// the hole) when the hole centre is at distance u. Limit form used by the
/// exponents: 2 pi 1[r >= C1] - 2 arccos(.) 1[r >= C2] inside the ball and
/// 2 pi - 2 arccos(.) 1[C3 <= r <= u + D] outside it.
double kept_angle_limits(double u, double r, double D);
/// Same quantity assembled case by case from the three ranges of u.
double kept_angle_piecewise(double u, double r, double D);

/// Mixtures of F over gain entries (and link classes inside the ball).
class InterferenceKernels {
public:
  InterferenceKernels(const SystemParams& p, const GainDistribution& gains);

  /// sum_g q_g F_N(s g, r)
  double mix_nlos(double s, double r) const {
    const double c = s / (p_.N_N * integer_or_real_power(r, p_.alpha_N));
    double acc = 0.0;
    for (const auto& e : gains_.entries)
      if (e.prob > 0) acc += e.prob * one_minus_inverse_power(c * e.gain, p_.N_N);
    return acc;
  }
  /// sum_g q_g F_L(s g, r)
  double mix_los(double s, double r) const {
    const double c = s / (p_.N_L * integer_or_real_power(r, p_.alpha_L));
    double acc = 0.0;
    for (const auto& e : gains_.entries)
      if (e.prob > 0) acc += e.prob * one_minus_inverse_power(c * e.gain, p_.N_L);
    return acc;
  }
  /// sum_b p_b sum_g q_g F_b(s g, r), for r inside the ball.
  double mix_ball(double s, double r) const {
    return p_.p_L * mix_los(s, r) + (1.0 - p_.p_L) * mix_nlos(s, r);
  }

  /// 2 pi int_0^inf mix_nlos r dr
  QuadResult nlos_full(double s, const QuadratureConfig& cfg) const;
  /// 2 pi int_D^inf mix_nlos r dr
  QuadResult nlos_out(double s, const QuadratureConfig& cfg) const;
  /// 2 pi int_0^D mix_ball r dr
  QuadResult ball_in(double s, const QuadratureConfig& cfg) const;

  /// Part of ball_in + nlos_out that lies inside a hole of radius D centred
  /// at distance u from the victim.
  QuadResult hole(double s, double u, const QuadratureConfig& cfg) const;

  const SystemParams& params() const { return p_; }
  const GainDistribution& gains() const { return gains_; }

private:
  SystemParams p_;
  GainDistribution gains_;
};

}  // namespace scj
