#include "scj/mc/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "scj/core/parallel.hpp"

namespace scj {

namespace {

constexpr std::uint64_t kChunk = 64;
constexpr double kInterfererCell = 50.0;

double received_power(const LinkDraw& d, double r, const SystemParams& p) {
  return d.gain * d.fading * pathloss(r, pathloss_exponent(d.state, p));
}

std::vector<NodeRef> interferer_refs(const NetworkRealization& net, NodeRef source) {
  std::vector<NodeRef> refs;
  for (std::uint32_t i = 0; i < net.transmitters.size(); ++i) {
    const NodeRef t{NodeKind::Transmitter, i};
    if (!(source.kind == t.kind && source.index == i)) refs.push_back(t);
  }
  for (std::uint32_t j = 0; j < net.jammer_flags.size(); ++j) {
    const NodeRef r{NodeKind::Jammer, j};
    if (net.jammer_flags[j] && !(source.kind == r.kind && source.index == j)) refs.push_back(r);
  }
  return refs;
}

bool connected(const NetworkRealization& net, const std::vector<NodeRef>& interferers,
               const SystemParams& p) {
  const double theta = sinr_threshold_connection(p);
  if (theta == 0.0) return true;
  const NodeRef x0{NodeKind::Transmitter, 0}, y0{NodeKind::Receiver, 0};
  const double s = received_power(net.link(x0, y0, Role::Receiver, p), p.r0, p);
  // SINR >= theta  <=>  I <= s/theta - sigma2/P
  const double budget = s / theta - p.noise_to_power();
  if (budget < 0.0) return false;
  const Point at = net.receivers[0];
  double total = 0.0;
  for (const auto& ref : interferers) {
    const double r = distance(net.node(ref), at);
    total += received_power(net.link(ref, y0, Role::Receiver, p), r, p);
    if (total > budget) return false;
  }
  return true;
}

bool secret(const NetworkRealization& net, const std::vector<NodeRef>& interferers,
            const SystemParams& p) {
  if (net.eavesdroppers.empty()) return true;
  const double theta = sinr_threshold_secrecy(p);
  const NodeRef x0{NodeKind::Transmitter, 0};
  const Point xp = net.transmitters[0];
  const double noise = p.noise_to_power();

  std::vector<Point> pos;
  pos.reserve(interferers.size());
  for (const auto& ref : interferers) pos.push_back(net.node(ref));
  const PointGrid grid(pos, kInterfererCell, net.window_radius);

  for (std::uint32_t e = 0; e < net.eavesdroppers.size(); ++e) {
    const NodeRef z{NodeKind::Eavesdropper, e};
    const Point zp = net.eavesdroppers[e];
    const double s = received_power(net.link(x0, z, Role::Eavesdropper, p), distance(xp, zp), p);
    if (theta == 0.0) return false;
    // Decodes iff SINR > theta  <=>  I < s/theta - sigma2/P.
    const double budget = s / theta - noise;
    if (budget <= 0.0) continue;
    double total = 0.0;
    bool decodes = true;
    grid.visit_by_ring(zp, [&](std::size_t k) {
      total += received_power(net.link(interferers[k], z, Role::Eavesdropper, p),
                              distance(pos[k], zp), p);
      if (total >= budget) {
        decodes = false;
        return false;
      }
      return true;
    });
    if (decodes) return false;
  }
  return true;
}

}  // namespace

Estimate Estimate::from_counts(std::uint64_t successes, std::uint64_t trials) {
  Estimate e;
  e.trials = trials;
  e.successes = successes;
  if (trials == 0) return e;
  e.mean = static_cast<double>(successes) / static_cast<double>(trials);
  // Wilson score interval, widened to be centred on the mean. Unlike the
  // normal approximation it does not collapse at 0 or n successes.
  const double n = static_cast<double>(trials), z = 1.96, z2 = z * z;
  const double centre = (e.mean + z2 / (2 * n)) / (1 + z2 / n);
  const double half =
      z / (1 + z2 / n) * std::sqrt(e.mean * (1 - e.mean) / n + z2 / (4 * n * n));
  e.half_width_95 = std::max(centre + half - e.mean, e.mean - (centre - half));
  return e;
}

double sinr_at(NodeRef victim, Role role, NodeRef source, const NetworkRealization& net,
               const SystemParams& p) {
  const Point v = net.node(victim);
  const Point sp = net.node(source);
  const double rs = distance(v, sp);
  if (rs == 0.0) throw InvalidRealization("victim coincides with the signal source");
  const double signal = received_power(net.link(source, victim, role, p), rs, p);
  double interference = 0.0;
  for (const auto& ref : interferer_refs(net, source)) {
    const double r = distance(net.node(ref), v);
    if (r == 0.0) throw InvalidRealization("victim coincides with an interferer");
    interference += received_power(net.link(ref, victim, role, p), r, p);
  }
  return signal / (interference + p.noise_to_power());
}

TrialOutcome run_trial(const SystemParams& p, const McSetup& setup, std::uint64_t trial,
                       bool connection, bool secrecy) {
  const auto net = sample_network(p, setup.scheme, setup.scenario, setup.window_radius,
                                  trial_key(setup.seed, trial), secrecy);
  const auto refs = interferer_refs(net, NodeRef{NodeKind::Transmitter, 0});
  TrialOutcome out;
  if (connection) out.connected = connected(net, refs, p);
  if (secrecy) out.secret = secret(net, refs, p);
  return out;
}

StcEstimate estimate_stc(const SystemParams& p, const McSetup& setup, std::uint64_t trials_pc,
                         std::uint64_t trials_ps) {
  const std::uint64_t n = std::max(trials_pc, trials_ps);
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<std::uint64_t> pc_counts(chunks, 0), ps_counts(chunks, 0);
  parallel_chunks(chunks, setup.threads, [&](std::size_t c) {
    const std::uint64_t lo = c * kChunk, hi = std::min(n, lo + kChunk);
    for (std::uint64_t t = lo; t < hi; ++t) {
      const auto o = run_trial(p, setup, t, t < trials_pc, t < trials_ps);
      pc_counts[c] += o.connected;
      ps_counts[c] += o.secret;
    }
  });
  std::uint64_t pc = 0, ps = 0;
  for (std::size_t c = 0; c < chunks; ++c) {
    pc += pc_counts[c];
    ps += ps_counts[c];
  }
  StcEstimate r;
  r.pc = Estimate::from_counts(pc, trials_pc);
  r.ps = Estimate::from_counts(ps, trials_ps);
  r.stc = r.pc.mean * r.ps.mean * (p.R_t - p.R_e) * p.lambda_T;
  return r;
}

Estimate estimate_pc(const SystemParams& p, const McSetup& setup, std::uint64_t trials) {
  return estimate_stc(p, setup, trials, 0).pc;
}

Estimate estimate_ps(const SystemParams& p, const McSetup& setup, std::uint64_t trials) {
  return estimate_stc(p, setup, 0, trials).ps;
}

// ---- Laplace-transform oracle --------------------------------------------

namespace {

NodeRef victim_ref(Role role) {
  return role == Role::Receiver ? NodeRef{NodeKind::Receiver, 0}
                                : NodeRef{NodeKind::Eavesdropper, 0};
}

double oracle_interference(const InterfererConfig& cfg, std::uint64_t key) {
  SystemParams p = cfg.params;
  const double W = cfg.window_radius;
  NetworkRealization net;
  net.key = key;
  net.window_radius = W;
  const Point origin{0.0, 0.0};
  // The victim sits at the origin in both roles.
  net.receivers.push_back(origin);
  net.eavesdroppers.push_back(origin);
  const NodeRef victim = victim_ref(cfg.role);

  if (cfg.model == InterfererModel::AssociatedJammers) {
    if (p.lambda_T > 0) {
      KeyedStream rs(combine_key(key, stream::kTransmitters));
      for (const auto& q : sample_ppp(p.lambda_T, W + p.D, rs)) net.receivers.push_back(q);
    }
    KeyedStream js(combine_key(key, stream::kJammers));
    net.potential_jammers = sample_ppp(p.lambda_P, W, js);
    const auto flags = scjq_select(net, p);
    double total = 0.0;
    for (std::uint32_t j = 0; j < flags.size(); ++j) {
      if (!flags[j]) continue;
      const NodeRef src{NodeKind::Jammer, j};
      total += received_power(net.link(src, victim, cfg.role, p), norm(net.potential_jammers[j]), p);
    }
    return total;
  }

  if (cfg.model == InterfererModel::NlosDisk || cfg.model == InterfererModel::NlosAnnulus)
    p.p_L = 0.0;

  KeyedStream js(combine_key(key, stream::kJammers));
  auto pts = sample_ppp(cfg.density, W, js);

  std::vector<Point> holes;
  const bool many_holes =
      cfg.model == InterfererModel::AllHoles || cfg.model == InterfererModel::NearestHole;
  if (cfg.model == InterfererModel::SingleHole || many_holes) {
    KeyedStream gs(combine_key(key, stream::kTypicalPair));
    const double a = 2 * std::numbers::pi * gs.uniform();
    const double b = 2 * std::numbers::pi * gs.uniform();
    const Point x0{cfg.r_e * std::cos(a), cfg.r_e * std::sin(a)};
    holes.push_back({x0.x + p.r0 * std::cos(b), x0.y + p.r0 * std::sin(b)});
    if (many_holes && p.lambda_T > 0) {
      KeyedStream rs(combine_key(key, stream::kTransmitters));
      for (const auto& q : sample_ppp(p.lambda_T, W + p.D, rs)) holes.push_back(q);
    }
    if (cfg.model == InterfererModel::NearestHole) {
      const auto it = std::min_element(holes.begin(), holes.end(),
                                       [](Point a, Point b) { return norm(a) < norm(b); });
      holes = {*it};
    }
  }
  std::optional<ReceiverIndex> hole_index;
  if (!holes.empty()) hole_index.emplace(holes, p.D, W + p.D);

  net.potential_jammers = std::move(pts);
  double total = 0.0;
  for (std::uint32_t j = 0; j < net.potential_jammers.size(); ++j) {
    const Point q = net.potential_jammers[j];
    const double r = norm(q);
    if (cfg.model == InterfererModel::NlosAnnulus && r <= p.D) continue;
    if (hole_index && hole_index->nearest(q).distance <= p.D) continue;
    total += received_power(net.link(NodeRef{NodeKind::Jammer, j}, victim, cfg.role, p), r, p);
  }
  return total;
}

}  // namespace

std::vector<LaplaceEstimate> empirical_laplace(const InterfererConfig& cfg,
                                               std::span<const double> s, std::uint64_t trials,
                                               std::uint64_t seed, unsigned threads) {
  const std::size_t ns = s.size();
  const std::size_t chunks = (trials + kChunk - 1) / kChunk;
  std::vector<double> sum(chunks * ns, 0.0), sum2(chunks * ns, 0.0);
  parallel_chunks(chunks, threads, [&](std::size_t c) {
    const std::uint64_t lo = c * kChunk, hi = std::min<std::uint64_t>(trials, lo + kChunk);
    for (std::uint64_t t = lo; t < hi; ++t) {
      const double I = oracle_interference(cfg, trial_key(seed, t));
      for (std::size_t k = 0; k < ns; ++k) {
        const double v = s[k] == 0.0 ? 1.0 : std::exp(-s[k] * I);
        sum[c * ns + k] += v;
        sum2[c * ns + k] += v * v;
      }
    }
  });
  std::vector<LaplaceEstimate> out(ns);
  if (trials == 0) return out;
  const double n = static_cast<double>(trials);
  for (std::size_t k = 0; k < ns; ++k) {
    double a = 0.0, b = 0.0;
    for (std::size_t c = 0; c < chunks; ++c) {
      a += sum[c * ns + k];
      b += sum2[c * ns + k];
    }
    const double mean = a / n;
    const double var = std::max(0.0, b / n - mean * mean);
    out[k].mean = mean;
    out[k].std_error = trials > 1 ? std::sqrt(var * n / (n - 1.0) / n) : 0.0;
  }
  return out;
}

double empirical_laplace(const InterfererConfig& cfg, double s, std::uint64_t trials,
                         std::uint64_t seed, unsigned threads) {
  const double one[] = {s};
  return empirical_laplace(cfg, one, trials, seed, threads)[0].mean;
}

}  // namespace scj
