#include "scj/analytic/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "scj/analytic/hole_nodes.hpp"
#include "scj/core/gain.hpp"
#include "scj/core/parallel.hpp"

namespace scj {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kOrder = 10;

double binom(int n, int k) {
  double c = 1.0;
  for (int j = 1; j <= k; ++j) c = c * (n - k + j) / j;
  return c;
}

double sign(int k) { return k % 2 == 1 ? 1.0 : -1.0; }

std::vector<double> panel_edges(double lo, double hi, std::vector<double> edges,
                                const std::vector<double>& extra) {
  for (double e : extra)
    if (e > lo && e < hi) edges.push_back(e);
  edges.push_back(lo);
  edges.push_back(hi);
  std::erase_if(edges, [&](double e) { return e < lo || e > hi; });
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [&](double a, double b) { return b - a <= 1e-9 * (hi - lo); }),
              edges.end());
  return edges;
}

// Gain entries with equal gain merged, so repeated entries cost one table.
std::vector<GainEntry> merged(const GainDistribution& g) {
  std::map<double, double> m;
  for (const auto& e : g.entries)
    if (e.prob > 0.0) m[e.gain] += e.prob;
  std::vector<GainEntry> out;
  for (auto [gain, prob] : m) out.push_back({gain, prob});
  return out;
}

}  // namespace

DensityPlan eavesdropper_plan(const SystemParams& p, Scheme scheme, Scenario scenario) {
  DensityPlan d;
  d.general = scenario == Scenario::General;
  const double base = d.general ? p.lambda_T : 0.0;
  switch (scheme) {
    case Scheme::SCJ:
      d.phi = base + p.lambda_J();
      d.has_psi = true;
      d.psi = d.general ? blended_php_density(p) : p.lambda_J_bar();
      break;
    case Scheme::SCJQ: d.phi = base + p.lambda_J(); break;
    case Scheme::PJ: d.phi = base + p.varrho * p.lambda_P; break;
    case Scheme::None: d.phi = base; break;
  }
  return d;
}

// ---- connection ------------------------------------------------------------

ConnectionModel::ConnectionModel(const SystemParams& structure, const QuadratureConfig& cfg,
                                 unsigned threads)
    : p_(structure) {
  const auto& p = p_;
  const InterferenceKernels k(p, receiver_gain_distribution(p));
  const double mu = alzer_tau(p.N_L) * std::pow(p.r0, p.alpha_L) * sinr_threshold_connection(p) /
                    (p.G_T * p.G_R);
  const double D = p.D;

  std::vector<double> geo;
  for (int j = 1; j <= 12; ++j) geo.push_back(2.0 * D * std::ldexp(1.0, -j));
  const auto e1 = panel_edges(0.0, 2.0 * D, geo, {});
  for (std::size_t i = 0; i + 1 < e1.size(); ++i) append_gauss(e1[i], e1[i + 1], kOrder, v1_, w1_);
  v2_.resize(v1_.size());
  w2_.resize(v1_.size());
  moment_.resize(v1_.size());
  for (std::size_t i = 0; i < v1_.size(); ++i) {
    const auto e2 = panel_edges(v1_[i], 2.0 * D, geo, {});
    for (std::size_t j = 0; j + 1 < e2.size(); ++j)
      append_gauss(e2[j], e2[j + 1], kOrder, v2_[i], w2_[i]);
  }

  terms_.resize(p.N_L);
  for (int n = 1; n <= p.N_L; ++n) {
    Term& t = terms_[n - 1];
    t.s = n * mu;
    t.noise = std::exp(-t.s * p.noise_to_power());
    t.nlos_full = k.nlos_full(t.s, cfg).value;
    t.nlos_out = k.nlos_out(t.s, cfg).value;
    t.ball = k.ball_in(t.s, cfg).value + t.nlos_out;
    t.q1.assign(v1_.size(), 0.0);
    t.q2.resize(v1_.size());
  }

  const CorrectionMixtures q(k);
  parallel_chunks(v1_.size(), threads, [&](std::size_t i) {
    moment_[i].resize(v2_[i].size());
    for (std::size_t j = 0; j < v2_[i].size(); ++j)
      moment_[i][j] = hole_area_moment(v2_[i][j], D, cfg);
    for (auto& t : terms_) {
      t.q1[i] = q.q1(t.s, v1_[i], cfg);
      t.q2[i].resize(v2_[i].size());
      for (std::size_t j = 0; j < v2_[i].size(); ++j) t.q2[i][j] = q.q2(t.s, v1_[i], v2_[i][j], cfg);
    }
  });
}

double ConnectionModel::jam_correction(int k, double lambda_J, double lambda_R) const {
  if (lambda_J <= 0.0 || lambda_R <= 0.0) return 1.0;
  const Term& t = terms_[k - 1];
  const double D = p_.D;
  const double c = 2.0 * p_.p_L * lambda_J;
  const double tail = std::exp(-4.0 * lambda_R * kPi * D * D);
  long double acc = tail;
  for (std::size_t i = 0; i < v1_.size(); ++i) {
    const double v1 = v1_[i];
    long double inner = 2.0 * kPi * lambda_R * v1 * tail;
    for (std::size_t j = 0; j < v2_[i].size(); ++j) {
      const double v2 = v2_[i][j];
      const double xi =
          std::min(2.0 * lambda_R * moment_[i][j] / (D * D - 0.25 * v2 * v2), 1.0);
      inner += w2_[i][j] * std::exp(-c * xi * t.q2[i][j]) * nn2_pdf(v1, v2, lambda_R);
    }
    acc += w1_[i] * std::exp(-c * t.q1[i]) * inner;
  }
  return static_cast<double>(acc);
}

double ConnectionModel::evaluate(const SystemParams& p, Scheme scheme, Scenario scenario) const {
  const bool general = scenario == Scenario::General;
  std::vector<double> terms;
  for (int n = 1; n <= p_.N_L; ++n) {
    const Term& t = terms_[n - 1];
    double exponent = general ? p.lambda_T * t.ball : 0.0;
    double corr = 1.0;
    switch (scheme) {
      case Scheme::SCJ:
        exponent += p.lambda_J() * t.nlos_full + p.lambda_J_bar() * t.nlos_out;
        if (general) corr = jam_correction(n, p.lambda_J(), p.lambda_R());
        break;
      case Scheme::SCJQ:
        exponent += p.lambda_J() * t.nlos_full;
        if (general) corr = jam_correction(n, p.lambda_J(), p.lambda_R());
        break;
      case Scheme::PJ: exponent += p.varrho * p.lambda_P * t.ball; break;
      case Scheme::None: break;
    }
    terms.push_back(binom(p_.N_L, n) * sign(n) * t.noise * std::exp(-exponent) * corr);
  }
  return std::clamp(ordered_sum(terms.data(), static_cast<int>(terms.size())), 0.0, 1.0);
}

// ---- secrecy ---------------------------------------------------------------

SecrecyModel::SecrecyModel(const SystemParams& structure, const QuadratureConfig& cfg,
                           unsigned threads)
    : p_(structure) {
  const auto& p = p_;
  const double theta = sinr_threshold_secrecy(p);
  if (theta <= 0.0) {
    degenerate_ = true;
    return;
  }
  const InterferenceKernels k(p, eavesdropper_gain_distribution(p));
  const auto gains = merged(eavesdropper_gain_distribution(p));
  const double D = p.D, r0 = p.r0;
  const double tauL = alzer_tau(p.N_L), tauN = alzer_tau(p.N_N);

  struct Spec {
    int term;
    int k;
    double nu, alpha;
  };
  std::vector<Spec> inside, outside;
  for (const auto& g : gains) {
    for (int n = 1; n <= p.N_L; ++n) {
      inside.push_back({static_cast<int>(coef_.size()), n, tauL * theta / g.gain, p.alpha_L});
      coef_.push_back(p.p_L * g.prob * binom(p.N_L, n) * sign(n));
    }
    for (int n = 1; n <= p.N_N; ++n) {
      inside.push_back({static_cast<int>(coef_.size()), n, tauN * theta / g.gain, p.alpha_N});
      coef_.push_back(p.p_N() * g.prob * binom(p.N_N, n) * sign(n));
    }
    for (int n = 1; n <= p.N_N; ++n) {
      outside.push_back({static_cast<int>(coef_.size()), n, tauN * theta / g.gain, p.alpha_N});
      coef_.push_back(g.prob * binom(p.N_N, n) * sign(n));
    }
  }

  const std::vector<double> kinks{r0, D - r0, r0 - D, 2 * D - r0, r0 + D, r0 + 2 * D, r0 - 2 * D};
  std::vector<double> geo;
  for (int j = 0; j <= 10; ++j) geo.push_back(D * std::ldexp(1.0, -j));
  std::vector<double> rin, win;
  const auto ein = panel_edges(0.0, D, geo, kinks);
  for (std::size_t i = 0; i + 1 < ein.size(); ++i) append_gauss(ein[i], ein[i + 1], kOrder, rin, win);

  // Beyond r_max the noise factor of every combination is below e^-40.
  const double gmax = gains.back().gain;
  const double nu_min = tauN * theta / gmax;
  double r_max = cfg.tail_cutoff_radius;
  if (p.noise_to_power() > 0.0)
    r_max = std::min(r_max, std::pow(40.0 / (nu_min * p.noise_to_power()), 1.0 / p.alpha_N));
  std::vector<double> rout, wout;
  if (r_max > D) {
    std::vector<double> ratio;
    for (double e = D * std::numbers::sqrt2; e < r_max; e *= std::numbers::sqrt2) ratio.push_back(e);
    const auto eout = panel_edges(D, r_max, ratio, kinks);
    for (std::size_t i = 0; i + 1 < eout.size(); ++i)
      append_gauss(eout[i], eout[i + 1], kOrder, rout, wout);
  }

  for (std::size_t i = 0; i < rin.size(); ++i) nodes_.push_back(Node{.r = rin[i], .w = win[i] * rin[i]});
  const std::size_t n_in = nodes_.size();
  for (std::size_t i = 0; i < rout.size(); ++i) nodes_.push_back(Node{.r = rout[i], .w = wout[i] * rout[i]});

  parallel_chunks(nodes_.size(), threads, [&](std::size_t i) {
    Node& node = nodes_[i];
    auto hn = make_hole_nodes(node.r, r0, D, 12);
    node.u = std::move(hn.u);
    node.wu = std::move(hn.wu);
    node.du = std::move(hn.du);
    node.v = std::move(hn.v);
    node.wv = std::move(hn.wv);
    for (const Spec& sp : i < n_in ? inside : outside) {
      Combo c;
      c.term = sp.term;
      c.s = sp.k * sp.nu * std::pow(node.r, sp.alpha);
      c.noise = std::exp(-c.s * p.noise_to_power());
      c.base = k.ball_in(c.s, cfg).value + k.nlos_out(c.s, cfg).value;
      for (double u : node.u) c.xu.push_back(std::max(0.0, c.base - k.hole(c.s, u, cfg).value));
      for (double v : node.v) c.xv.push_back(std::max(0.0, c.base - k.hole(c.s, v, cfg).value));
      node.combos.push_back(std::move(c));
    }
  });
}

namespace {

// Weights of the general hole transform that do not depend on the combination.
struct PsiWeights {
  std::vector<double> a, b;
  std::size_t nv = 0;
};

}  // namespace

double SecrecyModel::psi_transform(std::size_t node, std::size_t combo, const DensityPlan& plan,
                                   double lambda_R) const {
  if (!plan.has_psi || plan.psi <= 0.0) return 1.0;
  const Node& n = nodes_[node];
  const Combo& c = n.combos[combo];
  const double lambda = plan.psi;
  long double acc = 0.0L;
  if (!plan.general || lambda_R <= 0.0) {
    for (std::size_t j = 0; j < n.u.size(); ++j) acc += n.wu[j] * std::exp(-lambda * c.xu[j]);
    return static_cast<double>(acc);
  }
  for (std::size_t j = 0; j < n.u.size(); ++j) {
    const double u = n.u[j];
    const double a = n.wu[j] * std::exp(-lambda_R * kPi * u * u) + n.du[j] * nn_pdf(u, lambda_R);
    acc += a * std::exp(-lambda * c.xu[j]);
  }
  for (std::size_t j = 0; j < n.v.size(); ++j)
    acc += n.wv[j] * nn_pdf(n.v[j], lambda_R) * std::exp(-lambda * c.xv[j]);
  return static_cast<double>(acc);
}

double SecrecyModel::evaluate(const SystemParams& p, Scheme scheme, Scenario scenario) const {
  if (p.lambda_E <= 0.0) return 1.0;
  if (degenerate_) return 0.0;
  const DensityPlan plan = eavesdropper_plan(p, scheme, scenario);
  const double lr = p.lambda_R();
  const bool hole_general = plan.has_psi && plan.psi > 0.0 && plan.general && lr > 0.0;
  // Nearest-receiver weights beyond lambda_R pi v^2 = 60 are below e^-60.
  const double v_cut = lr > 0.0 ? std::sqrt(60.0 / (lr * kPi)) : 0.0;

  std::vector<long double> acc(coef_.size(), 0.0L);
  PsiWeights pw;
  for (const Node& n : nodes_) {
    if (hole_general) {
      pw.a.resize(n.u.size());
      for (std::size_t j = 0; j < n.u.size(); ++j) {
        const double u = n.u[j];
        pw.a[j] = n.wu[j] * std::exp(-lr * kPi * u * u) + n.du[j] * nn_pdf(u, lr);
      }
      pw.nv = 0;
      while (pw.nv < n.v.size() && n.v[pw.nv] <= v_cut) ++pw.nv;
      pw.b.resize(pw.nv);
      for (std::size_t j = 0; j < pw.nv; ++j) pw.b[j] = n.wv[j] * nn_pdf(n.v[j], lr);
    }
    for (const Combo& c : n.combos) {
      double val = c.noise * std::exp(-plan.phi * c.base);
      if (plan.has_psi && plan.psi > 0.0 && val > 0.0) {
        long double psi = 0.0L;
        if (hole_general) {
          for (std::size_t j = 0; j < n.u.size(); ++j) psi += pw.a[j] * std::exp(-plan.psi * c.xu[j]);
          for (std::size_t j = 0; j < pw.nv; ++j) psi += pw.b[j] * std::exp(-plan.psi * c.xv[j]);
        } else {
          for (std::size_t j = 0; j < n.u.size(); ++j) psi += n.wu[j] * std::exp(-plan.psi * c.xu[j]);
        }
        val *= static_cast<double>(psi);
      }
      acc[c.term] += n.w * val;
    }
  }
  std::vector<double> terms(coef_.size());
  for (std::size_t t = 0; t < coef_.size(); ++t) terms[t] = coef_[t] * static_cast<double>(acc[t]);
  const double S = ordered_sum(terms.data(), static_cast<int>(terms.size()));
  return std::clamp(std::exp(-2.0 * kPi * p.lambda_E * S), 0.0, 1.0);
}

// ---- both ------------------------------------------------------------------

AnalyticModel::AnalyticModel(const SystemParams& structure, const QuadratureConfig& cfg,
                             unsigned threads)
    : p_(structure), conn_(structure, cfg, threads), sec_(structure, cfg, threads) {}

double AnalyticModel::connection(const SystemParams& p, Scheme scheme, Scenario scenario) const {
  return conn_.evaluate(p, scheme, scenario);
}

double AnalyticModel::secrecy(const SystemParams& p, Scheme scheme, Scenario scenario) const {
  return sec_.evaluate(p, scheme, scenario);
}

double AnalyticModel::stc(const SystemParams& p, Scheme scheme, Scenario scenario) const {
  return scj::stc(connection(p, scheme, scenario), secrecy(p, scheme, scenario), p);
}

}  // namespace scj
