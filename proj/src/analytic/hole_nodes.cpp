#include "scj/analytic/hole_nodes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace scj {

namespace {
constexpr double kPi = std::numbers::pi;
}

double hole_distance(double phi, double r_e, double r0) {
  const double d2 = r0 * r0 + r_e * r_e - 2.0 * r0 * r_e * std::cos(phi);
  return std::sqrt(std::max(0.0, d2));
}

std::vector<double> phi_breaks(double r_e, double r0, double D) {
  std::vector<double> br{0.0};
  for (double w : {D, 2.0 * D}) {
    const double c = (r0 * r0 + r_e * r_e - w * w) / (2.0 * r0 * r_e);
    if (c > -1.0 && c < 1.0) br.push_back(std::acos(c));
  }
  br.push_back(kPi);
  std::sort(br.begin(), br.end());
  return br;
}

double partial_fraction_knee(const SystemParams& p, const QuadratureConfig& cfg) {
  const double lr = p.lambda_R();
  const double D = p.D;
  if (lr <= 0.0) return 0.0;
  auto ratio = [&](double v2) {
    return 2.0 * lr * integrate_cos_mapped([&](double r) {
             const double h = std::max(0.0, D * D - 0.25 * r * r);
             return (D * D * std::acos(std::clamp(r / (2.0 * D), -1.0, 1.0)) -
                     0.5 * r * std::sqrt(h)) * r;
           }, v2, 2.0 * D, cfg).value /
           (D * D - 0.25 * v2 * v2);
  };
  // The ratio decreases from lambda_R pi D^2 / 2 at 0 to 0 at 2D.
  if (ratio(0.0) <= 1.0) return 0.0;
  double lo = 0.0, hi = 2.0 * D;
  for (int i = 0; i < 80 && hi - lo > 1e-12 * D; ++i) {
    const double mid = 0.5 * (lo + hi);
    (ratio(mid) > 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double CorrectionMixtures::q1(double s, double v1, const QuadratureConfig& cfg) const {
  const double D = k_.params().D;
  const double lo = std::min(0.5 * v1, D);
  if (lo >= D || s <= 0.0) return 0.0;
  return integrate_cos_mapped(
             [&](double r) {
               return (k_.mix_los(s, r) - k_.mix_nlos(s, r)) *
                      std::acos(std::clamp(v1 / (2.0 * r), -1.0, 1.0)) * r;
             },
             lo, D, cfg)
      .value;
}

double CorrectionMixtures::q2(double s, double v1, double v2, const QuadratureConfig& cfg) const {
  const double D = k_.params().D;
  const double lo = std::min(0.5 * v2, D);
  if (lo >= D || s <= 0.0) return 0.0;
  return integrate_cos_mapped(
             [&](double r) {
               return (k_.mix_los(s, r) - k_.mix_nlos(s, r)) *
                      (kPi - std::acos(std::clamp(v1 / (2.0 * r), -1.0, 1.0))) * r;
             },
             lo, D, cfg)
      .value;
}

HoleNodes make_hole_nodes(double r_e, double r0, double D, int order) {
  HoleNodes n;
  std::vector<double> phi, w;
  const auto br = phi_breaks(r_e, r0, D);
  for (std::size_t i = 0; i + 1 < br.size(); ++i) append_gauss(br[i], br[i + 1], order, phi, w);
  for (std::size_t j = 0; j < phi.size(); ++j) {
    const double u = hole_distance(phi[j], r_e, r0);
    n.u.push_back(u);
    n.wu.push_back(w[j] / kPi);
    // dv = r0 r_e sin(phi) / u dphi and P(U > u(phi)) = 1 - phi / pi.
    const double jac = u > 0.0 ? r0 * r_e * std::sin(phi[j]) / u : 0.0;
    n.du.push_back(w[j] * (1.0 - phi[j] / kPi) * jac);
  }

  const double a = std::abs(r_e - r0);
  if (a > 0.0) {
    std::vector<double> edges{0.0, a};
    for (double e = 1.0; e < a; e *= 2.0) edges.push_back(e);
    for (double e : {D, 2.0 * D})
      if (e < a) edges.push_back(e);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
      append_gauss(edges[i], edges[i + 1], order, n.v, n.wv);
  }
  return n;
}

}  // namespace scj
