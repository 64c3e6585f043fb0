#include <algorithm>
#include <cmath>
#include <numbers>

#include "scj/analytic/analytic.hpp"
#include "scj/analytic/hole_nodes.hpp"

namespace scj {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2 * std::numbers::pi;

LaplaceValue exp_of(double density, const QuadResult& k) {
  if (density <= 0.0) return {};
  const double v = std::exp(-density * k.value);
  return {v, v * density * k.error};
}

}  // namespace

GainDistribution gain_set(const SystemParams& p, GainSet g) {
  return g == GainSet::Receiver ? receiver_gain_distribution(p) : eavesdropper_gain_distribution(p);
}

LaplaceValue lt_jam_rx_simplified(double s, const SystemParams& p, const QuadratureConfig& cfg) {
  const double lambda = p.lambda_J();
  if (s <= 0.0 || lambda <= 0.0) return {};
  const InterferenceKernels k(p, receiver_gain_distribution(p));
  return exp_of(lambda, k.nlos_full(s, cfg));
}

LaplaceValue lt_php_rx_simplified(double s, const SystemParams& p, const QuadratureConfig& cfg) {
  const double lambda = p.lambda_J_bar();
  if (s <= 0.0 || lambda <= 0.0) return {};
  const InterferenceKernels k(p, receiver_gain_distribution(p));
  return exp_of(lambda, k.nlos_out(s, cfg));
}

LaplaceValue lt_ppp_eve(double lambda, double s, const SystemParams& p, GainSet gains,
                        const QuadratureConfig& cfg) {
  if (s <= 0.0 || lambda <= 0.0) return {};
  const InterferenceKernels k(p, gain_set(p, gains));
  const auto in = k.ball_in(s, cfg);
  const auto out = k.nlos_out(s, cfg);
  return exp_of(lambda, {in.value + out.value, in.error + out.error});
}

LaplaceValue lt_tx_rx(double lambda_T, double s, const SystemParams& p, const QuadratureConfig& cfg) {
  return lt_ppp_eve(lambda_T, s, p, GainSet::Receiver, cfg);
}

double T1(double s, double u, double gain, LinkState b, const SystemParams& p,
          const QuadratureConfig& cfg) {
  const double D = p.D;
  const double x = s * gain;
  auto f = [&](double r) { return F(b, x, r, p); };
  double out = 0.0;
  const double c1 = hole_C1(u, D), c2 = hole_C2(u, D);
  if (c1 < D) out += kTwoPi * integrate([&](double r) { return f(r) * r; }, c1, D, cfg).value;
  if (c2 < D)
    out -= 2.0 * integrate_cos_mapped([&](double r) { return f(r) * overlap_arccos(u, r, D) * r; },
                                      c2, D, cfg)
                     .value;
  return out;
}

double T2(double s, double u, double gain, const SystemParams& p, const QuadratureConfig& cfg) {
  const double D = p.D;
  const double x = s * gain;
  auto f = [&](double r) { return F(LinkState::NLoS, x, r, p); };
  double out = kTwoPi * integrate_to_infinity([&](double r) { return f(r) * r; }, D, cfg).value;
  const double c3 = hole_C3(u, D);
  if (c3 < u + D)
    out -= 2.0 * integrate_cos_mapped([&](double r) { return f(r) * overlap_arccos(u, r, D) * r; },
                                      c3, u + D, cfg)
                     .value;
  return out;
}

double pair_distance_pdf(double u, double r_e, double r0) {
  if (!(u > std::abs(r_e - r0) && u < r_e + r0)) return 0.0;
  const double a = r0 * r0 + r_e * r_e - u * u;
  const double rad = 4.0 * r0 * r0 * r_e * r_e - a * a;
  if (rad <= 0.0) return 0.0;
  return 2.0 * u / (kPi * std::sqrt(rad));
}

LaplaceValue lt_php_eve_simplified(double s, double r_e, const SystemParams& p,
                                   const QuadratureConfig& cfg) {
  const double lambda = p.lambda_J_bar();
  if (s <= 0.0 || lambda <= 0.0) return {};
  const InterferenceKernels k(p, eavesdropper_gain_distribution(p));
  const double base = k.ball_in(s, cfg).value + k.nlos_out(s, cfg).value;
  auto g = [&](double phi) {
    const double u = hole_distance(phi, r_e, p.r0);
    return std::exp(-lambda * (base - k.hole(s, u, cfg).value));
  };
  const auto r = integrate_pieces(g, phi_breaks(r_e, p.r0, p.D), cfg);
  return {r.value / kPi, r.error / kPi};
}

double hole_area(double r, double D) {
  if (r >= 2.0 * D) return 0.0;
  r = std::max(r, 0.0);
  const double h = std::max(0.0, D * D - 0.25 * r * r);
  return D * D * std::acos(std::clamp(r / (2.0 * D), -1.0, 1.0)) - 0.5 * r * std::sqrt(h);
}

double hole_area_moment(double v2, double D, const QuadratureConfig& cfg) {
  if (v2 >= 2.0 * D) return 0.0;
  return integrate_cos_mapped([&](double r) { return hole_area(r, D) * r; }, std::max(v2, 0.0),
                              2.0 * D, cfg)
      .value;
}

double partial_fraction(double v2, const SystemParams& p, const QuadratureConfig& cfg) {
  const double D = p.D;
  if (v2 >= 2.0 * D || p.lambda_R() <= 0.0) return 0.0;
  const double denom = D * D - 0.25 * v2 * v2;
  return std::min(2.0 * p.lambda_R() * hole_area_moment(v2, D, cfg) / denom, 1.0);
}

double Q1(double s, double v1, double gain, const SystemParams& p, const QuadratureConfig& cfg) {
  const double lo = std::min(0.5 * v1, p.D);
  if (lo >= p.D || s <= 0.0) return 0.0;
  const double x = s * gain;
  return integrate_cos_mapped(
             [&](double r) {
               const double d = F(LinkState::LoS, x, r, p) - F(LinkState::NLoS, x, r, p);
               return d * std::acos(std::clamp(v1 / (2.0 * r), -1.0, 1.0)) * r;
             },
             lo, p.D, cfg)
      .value;
}

double Q2(double s, double v1, double v2, double gain, const SystemParams& p,
          const QuadratureConfig& cfg) {
  const double lo = std::min(0.5 * v2, p.D);
  if (lo >= p.D || s <= 0.0) return 0.0;
  const double x = s * gain;
  return integrate_cos_mapped(
             [&](double r) {
               const double d = F(LinkState::LoS, x, r, p) - F(LinkState::NLoS, x, r, p);
               return d * (kPi - std::acos(std::clamp(v1 / (2.0 * r), -1.0, 1.0))) * r;
             },
             lo, p.D, cfg)
      .value;
}

double nn_pdf(double v, double lambda_R) {
  if (v <= 0.0 || lambda_R <= 0.0) return 0.0;
  return kTwoPi * lambda_R * v * std::exp(-lambda_R * kPi * v * v);
}

double nn2_pdf(double v1, double v2, double lambda_R) {
  if (!(v1 > 0.0 && v1 < v2) || lambda_R <= 0.0) return 0.0;
  const double a = kTwoPi * lambda_R;
  return a * a * v1 * v2 * std::exp(-lambda_R * kPi * v2 * v2);
}

LaplaceValue lt_jam_rx_general(double s, const SystemParams& p, const QuadratureConfig& cfg) {
  const double lj = p.lambda_J();
  if (s <= 0.0 || lj <= 0.0) return {};
  const InterferenceKernels k(p, receiver_gain_distribution(p));
  const LaplaceValue base = exp_of(lj, k.nlos_full(s, cfg));
  const double lr = p.lambda_R();
  if (lr <= 0.0) return base;

  const double D = p.D;
  const double c = 2.0 * p.p_L * lj;
  const double tail = std::exp(-4.0 * lr * kPi * D * D);
  const double knee = partial_fraction_knee(p, cfg);
  const CorrectionMixtures q(k);

  auto outer = [&](double v1) {
    auto inner = [&](double v2) {
      const double xi = partial_fraction(v2, p, cfg);
      return std::exp(-c * xi * q.q2(s, v1, v2, cfg)) * nn2_pdf(v1, v2, lr);
    };
    std::vector<double> br{v1};
    if (knee > v1 && knee < 2.0 * D) br.push_back(knee);
    br.push_back(2.0 * D);
    const double in = integrate_pieces(inner, br, cfg).value;
    return std::exp(-c * q.q1(s, v1, cfg)) * (in + kTwoPi * lr * v1 * tail);
  };
  std::vector<double> br{0.0};
  if (knee > 0.0 && knee < 2.0 * D) br.push_back(knee);
  br.push_back(2.0 * D);
  const auto e = integrate_pieces(outer, br, cfg);
  const double expectation = e.value + tail;
  return {base.value * expectation, base.est_error * expectation + base.value * e.error};
}

double blended_php_density(const SystemParams& p) {
  const double w = p.beta * std::exp(-p.lambda_R() * kPi * p.D * p.D) + (1.0 - p.beta);
  return w * p.lambda_J_bar();
}

LaplaceValue lt_php_eve_general(double s, double r_e, const SystemParams& p,
                                const QuadratureConfig& cfg) {
  const double lambda = blended_php_density(p);
  if (s <= 0.0 || lambda <= 0.0) return {};
  const double lr = p.lambda_R();
  const double D = p.D;
  const InterferenceKernels k(p, eavesdropper_gain_distribution(p));
  const double base = k.ball_in(s, cfg).value + k.nlos_out(s, cfg).value;
  auto g = [&](double w) { return std::exp(-lambda * (base - k.hole(s, w, cfg).value)); };

  // E[g(min(U, V))] = E_U[ g(U) P(V > U) + int_0^U g(v) f(v) dv ]
  auto outer = [&](double phi) {
    const double u = hole_distance(phi, r_e, p.r0);
    double val = g(u) * std::exp(-lr * kPi * u * u);
    if (lr > 0.0 && u > 0.0) {
      std::vector<double> br{0.0};
      for (double b : {D, 2.0 * D})
        if (b < u) br.push_back(b);
      br.push_back(u);
      val += integrate_pieces([&](double v) { return g(v) * nn_pdf(v, lr); }, br, cfg).value;
    }
    return val;
  };
  const auto r = integrate_pieces(outer, phi_breaks(r_e, p.r0, D), cfg);
  return {r.value / kPi, r.error / kPi};
}

double stc(double p_c, double p_s, const SystemParams& p) {
  return p_c * p_s * (p.R_t - p.R_e) * p.lambda_T;
}

double radiated_power_density(const SystemParams& p, Scheme scheme) {
  double density = p.lambda_T;
  switch (scheme) {
    case Scheme::SCJ:
      density += p.lambda_J() + std::exp(-p.lambda_R() * kPi * p.D * p.D) * p.lambda_J_bar();
      break;
    case Scheme::SCJQ: density += p.lambda_J(); break;
    case Scheme::PJ: density += p.varrho * p.lambda_P; break;
    case Scheme::None: break;
  }
  return density * p.P;
}

double nsee(double stc_value, const SystemParams& p, Scheme scheme) {
  const double w = radiated_power_density(p, scheme);
  if (stc_value == 0.0 || w <= 0.0) return 0.0;
  return stc_value / w;
}

double ordered_sum(double* terms, int n) {
  std::sort(terms, terms + n, [](double a, double b) { return std::abs(a) > std::abs(b); });
  long double acc = 0.0L;
  for (int i = 0; i < n; ++i) acc += terms[i];
  return static_cast<double>(acc);
}

}  // namespace scj
