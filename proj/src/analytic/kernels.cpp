#include "scj/analytic/kernels.hpp"

#include <numbers>

namespace scj {

namespace {
constexpr double kTwoPi = 2 * std::numbers::pi;
}

double F(LinkState b, double x, double r, const SystemParams& p) {
  if (x <= 0.0) return 0.0;
  if (r <= 0.0) return 1.0;
  const int N = nakagami_shape(b, p);
  const double alpha = pathloss_exponent(b, p);
  return one_minus_inverse_power(x / (N * integer_or_real_power(r, alpha)), N);
}

double kept_angle_limits(double u, double r, double D) {
  const double a = overlap_arccos(u, r, D);
  if (r <= D) {
    double w = r >= hole_C1(u, D) ? kTwoPi : 0.0;
    if (r >= hole_C2(u, D)) w -= 2.0 * a;
    return w;
  }
  double w = kTwoPi;
  if (r >= hole_C3(u, D) && r <= u + D) w -= 2.0 * a;
  return w;
}

double kept_angle_piecewise(double u, double r, double D) {
  const double a = overlap_arccos(u, r, D);
  if (u < D) {
    if (r <= D) return r >= D - u ? 2.0 * (std::numbers::pi - a) : 0.0;
    return r <= u + D ? kTwoPi - 2.0 * a : kTwoPi;
  }
  if (u < 2 * D) {
    if (r <= D) return r >= u - D ? kTwoPi - 2.0 * a : kTwoPi;
    return r <= u + D ? kTwoPi - 2.0 * a : kTwoPi;
  }
  if (r <= D) return kTwoPi;
  return (r >= u - D && r <= u + D) ? kTwoPi - 2.0 * a : kTwoPi;
}

InterferenceKernels::InterferenceKernels(const SystemParams& p, const GainDistribution& gains)
    : p_(p), gains_(gains) {}

QuadResult InterferenceKernels::nlos_full(double s, const QuadratureConfig& cfg) const {
  if (s <= 0.0) return {};
  auto in = integrate([&](double r) { return mix_nlos(s, r) * r; }, 0.0, p_.D, cfg);
  auto out = nlos_out(s, cfg);
  return {kTwoPi * in.value + out.value, kTwoPi * in.error + out.error};
}

QuadResult InterferenceKernels::nlos_out(double s, const QuadratureConfig& cfg) const {
  if (s <= 0.0) return {};
  auto r = integrate_to_infinity([&](double x) { return mix_nlos(s, x) * x; }, p_.D, cfg);
  return {kTwoPi * r.value, kTwoPi * r.error};
}

QuadResult InterferenceKernels::ball_in(double s, const QuadratureConfig& cfg) const {
  if (s <= 0.0) return {};
  auto r = integrate([&](double x) { return mix_ball(s, x) * x; }, 0.0, p_.D, cfg);
  return {kTwoPi * r.value, kTwoPi * r.error};
}

QuadResult InterferenceKernels::hole(double s, double u, const QuadratureConfig& cfg) const {
  if (s <= 0.0) return {};
  const double D = p_.D;
  QuadResult out;
  const double c1 = hole_C1(u, D), c2 = hole_C2(u, D), c3 = hole_C3(u, D);
  if (c1 > 0.0) {
    auto r = integrate([&](double x) { return mix_ball(s, x) * x; }, 0.0, c1, cfg);
    out.value += kTwoPi * r.value;
    out.error += kTwoPi * r.error;
  }
  if (c2 < D) {
    auto r = integrate_cos_mapped(
        [&](double x) { return mix_ball(s, x) * overlap_arccos(u, x, D) * x; }, c2, D, cfg);
    out.value += 2.0 * r.value;
    out.error += 2.0 * r.error;
  }
  if (c3 < u + D) {
    auto r = integrate_cos_mapped(
        [&](double x) { return mix_nlos(s, x) * overlap_arccos(u, x, D) * x; }, c3, u + D, cfg);
    out.value += 2.0 * r.value;
    out.error += 2.0 * r.error;
  }
  return out;
}

}  // namespace scj
