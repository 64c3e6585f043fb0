#include "scj/pp/point_process.hpp"

#include <cmath>
#include <numbers>
#include <optional>

namespace scj {

std::vector<Point> sample_ppp(double density, double window_radius, KeyedStream& rng) {
  const double mean = density * std::numbers::pi * window_radius * window_radius;
  const auto n = poisson_quantile(mean, rng.uniform());
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double r = window_radius * std::sqrt(rng.uniform());
    const double t = 2 * std::numbers::pi * rng.uniform();
    pts.push_back({r * std::cos(t), r * std::sin(t)});
  }
  return pts;
}

Point NetworkRealization::node(NodeRef n) const {
  switch (n.kind) {
    case NodeKind::Transmitter: return transmitters[n.index];
    case NodeKind::Receiver: return receivers[n.index];
    case NodeKind::Jammer: return potential_jammers[n.index];
    case NodeKind::Eavesdropper: return eavesdroppers[n.index];
  }
  return {};
}

namespace {

KeyedStream link_stream(std::uint64_t key, NodeRef src, NodeRef dst) {
  return KeyedStream(combine_key(combine_key(key, stream::kLinks),
                                 combine_key(src.code(), dst.code())));
}

bool intended_pair(NodeRef src, NodeRef dst) {
  return src.kind == NodeKind::Transmitter && dst.kind == NodeKind::Receiver &&
         src.index == dst.index;
}

}  // namespace

LinkState NetworkRealization::link_state(NodeRef src, NodeRef dst, const SystemParams& p) const {
  if (intended_pair(src, dst)) return LinkState::LoS;
  auto s = link_stream(key, src, dst);
  return link_state_from_uniform(distance(node(src), node(dst)), p.p_L, p.D, s.uniform());
}

LinkDraw NetworkRealization::link(NodeRef src, NodeRef dst, Role role, const SystemParams& p) const {
  auto s = link_stream(key, src, dst);
  const double u_state = s.uniform();
  const double u_gain = s.uniform();
  LinkDraw d;
  if (intended_pair(src, dst)) {
    d.state = LinkState::LoS;
    d.gain = p.G_T * p.G_R;
  } else {
    d.state = link_state_from_uniform(distance(node(src), node(dst)), p.p_L, p.D, u_state);
    d.gain = role == Role::Receiver ? receiver_gain_distribution(p).draw(u_gain)
                                    : eavesdropper_gain_distribution(p).draw(u_gain);
  }
  d.fading = s.gamma_unit_mean(nakagami_shape(d.state, p));
  return d;
}

double NetworkRealization::activation_coin(std::size_t jammer) const {
  KeyedStream s(combine_key(combine_key(key, stream::kCoins), jammer));
  return s.uniform();
}

std::pair<Point, Point> place_typical_pair(NetworkRealization& net, const SystemParams& p) {
  KeyedStream s(combine_key(net.key, stream::kTypicalPair));
  const double t = 2 * std::numbers::pi * s.uniform();
  const Point y0{0.0, 0.0};
  const Point x0{p.r0 * std::cos(t), p.r0 * std::sin(t)};
  if (net.transmitters.empty()) net.transmitters.push_back(x0);
  else net.transmitters[0] = x0;
  if (net.receivers.empty()) net.receivers.push_back(y0);
  else net.receivers[0] = y0;
  return {x0, y0};
}

NearestResult nearest_receiver(Point p, std::span<const Point> receivers) {
  return nearest_linear(p, receivers);
}

namespace {

// 0 = silent, 1 = active; `quiet_outside` silences jammers with no
// receiver within D.
std::vector<std::uint8_t> sight_rule(const NetworkRealization& net, const SystemParams& p,
                                     const ReceiverIndex* index, bool quiet_outside) {
  std::vector<std::uint8_t> flags(net.potential_jammers.size(), 0);
  if (flags.empty()) return flags;
  std::optional<ReceiverIndex> own;
  if (!index) index = &own.emplace(net.receivers, p.D, net.window_radius);
  for (std::size_t j = 0; j < flags.size(); ++j) {
    const auto nr = index->nearest(net.potential_jammers[j]);
    if (nr.distance > p.D) {
      flags[j] = quiet_outside ? 0 : 1;
      continue;
    }
    const NodeRef src{NodeKind::Jammer, static_cast<std::uint32_t>(j)};
    const NodeRef dst{NodeKind::Receiver, static_cast<std::uint32_t>(nr.index)};
    if (net.link_state(src, dst, p) == LinkState::NLoS && net.activation_coin(j) < p.rho)
      flags[j] = 1;
  }
  return flags;
}

}  // namespace

std::vector<std::uint8_t> scj_select(const NetworkRealization& net, const SystemParams& p,
                                     const ReceiverIndex* index) {
  return sight_rule(net, p, index, false);
}

std::vector<std::uint8_t> scjq_select(const NetworkRealization& net, const SystemParams& p,
                                      const ReceiverIndex* index) {
  return sight_rule(net, p, index, true);
}

std::vector<std::uint8_t> pj_select(const NetworkRealization& net, double varrho) {
  std::vector<std::uint8_t> flags(net.potential_jammers.size(), 0);
  for (std::size_t j = 0; j < flags.size(); ++j) flags[j] = net.activation_coin(j) < varrho;
  return flags;
}

NetworkRealization sample_network(const SystemParams& p, Scheme scheme, Scenario scenario,
                                  double window_radius, std::uint64_t key,
                                  bool with_eavesdroppers) {
  NetworkRealization net;
  net.window_radius = window_radius;
  net.key = key;
  place_typical_pair(net, p);

  if (scenario == Scenario::General && p.lambda_T > 0) {
    KeyedStream ts(combine_key(key, stream::kTransmitters));
    KeyedStream os(combine_key(key, stream::kPairOrientation));
    for (const auto& x : sample_ppp(p.lambda_T, window_radius, ts)) {
      const double t = 2 * std::numbers::pi * os.uniform();
      net.transmitters.push_back(x);
      net.receivers.push_back({x.x + p.r0 * std::cos(t), x.y + p.r0 * std::sin(t)});
    }
  }

  if (scheme != Scheme::None && p.lambda_P > 0) {
    KeyedStream js(combine_key(key, stream::kJammers));
    net.potential_jammers = sample_ppp(p.lambda_P, window_radius, js);
  }
  switch (scheme) {
    case Scheme::SCJ: net.jammer_flags = scj_select(net, p); break;
    case Scheme::SCJQ: net.jammer_flags = scjq_select(net, p); break;
    case Scheme::PJ: net.jammer_flags = pj_select(net, p.varrho); break;
    case Scheme::None: net.jammer_flags.assign(net.potential_jammers.size(), 0); break;
  }

  if (with_eavesdroppers && p.lambda_E > 0) {
    KeyedStream es(combine_key(key, stream::kEavesdroppers));
    net.eavesdroppers = sample_ppp(p.lambda_E, window_radius, es);
  }
  return net;
}

}  // namespace scj
