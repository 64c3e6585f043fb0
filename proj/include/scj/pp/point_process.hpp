#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "scj/core/channel.hpp"
#include "scj/core/gain.hpp"
#include "scj/core/geometry.hpp"
#include "scj/core/params.hpp"
#include "scj/core/random.hpp"
#include "scj/pp/spatial_grid.hpp"

namespace scj {

enum class NodeKind : std::uint8_t { Transmitter, Receiver, Jammer, Eavesdropper };

struct NodeRef {
  NodeKind kind;
  std::uint32_t index;
  std::uint64_t code() const {
    return (static_cast<std::uint64_t>(kind) << 32) | index;
  }
};

/// Antenna pattern of the node on the receiving end of a link.
enum class Role { Receiver, Eavesdropper };

struct LinkDraw {
  LinkState state;
  double gain;
  double fading;
};

/// Uniform points in a disk of the given radius centred at the origin.
/// The count is a Poisson quantile of the stream's first uniform, so a
/// larger density yields a superset of the same points.
std::vector<Point> sample_ppp(double density, double window_radius, KeyedStream& rng);

/// One spatial configuration. Index 0 of transmitters/receivers is the
/// typical pair with the receiver at the origin.
///
/// Link blockage, gain and fading are functions of (key, ordered node pair)
/// alone: the same pair always yields the same draw, which is what a
/// per-realization memo table would provide.
struct NetworkRealization {
  double window_radius = 500.0;
  std::uint64_t key = 0;
  std::vector<Point> transmitters;
  std::vector<Point> receivers;
  std::vector<Point> potential_jammers;
  std::vector<Point> eavesdroppers;
  std::vector<std::uint8_t> jammer_flags;

  Point node(NodeRef n) const;

  LinkState link_state(NodeRef src, NodeRef dst, const SystemParams& p) const;
  /// Full draw; `role` picks the receiving antenna pattern. The intended pair
  /// (transmitter i to receiver i) is LoS with aligned main lobes.
  LinkDraw link(NodeRef src, NodeRef dst, Role role, const SystemParams& p) const;

  /// Uniform coin for jammer activation, keyed per potential jammer.
  double activation_coin(std::size_t jammer) const;
};

/// Fills transmitters[0] at distance r0 (uniform angle) and receivers[0] at
/// the origin; returns (x0, y0).
std::pair<Point, Point> place_typical_pair(NetworkRealization& net, const SystemParams& p);

/// Activation flags under the sight-based rule. Coins come from the
/// realization key. `index` may be supplied to reuse a receiver index.
std::vector<std::uint8_t> scj_select(const NetworkRealization& net, const SystemParams& p,
                                     const ReceiverIndex* index = nullptr);
std::vector<std::uint8_t> pj_select(const NetworkRealization& net, double varrho);
std::vector<std::uint8_t> scjq_select(const NetworkRealization& net, const SystemParams& p,
                                      const ReceiverIndex* index = nullptr);

NearestResult nearest_receiver(Point p, std::span<const Point> receivers);

/// Stream tags for the independent pieces of one trial.
namespace stream {
inline constexpr std::uint64_t kTypicalPair = 1;
inline constexpr std::uint64_t kTransmitters = 2;
inline constexpr std::uint64_t kPairOrientation = 3;
inline constexpr std::uint64_t kJammers = 4;
inline constexpr std::uint64_t kEavesdroppers = 5;
inline constexpr std::uint64_t kCoins = 6;
inline constexpr std::uint64_t kLinks = 7;
inline constexpr std::uint64_t kExtra = 8;
}  // namespace stream

inline std::uint64_t trial_key(std::uint64_t seed, std::uint64_t trial) {
  return combine_key(mix64(seed), trial);
}

/// Builds a full realization: typical pair, the other pairs (general
/// scenario only), potential jammers, eavesdroppers and jammer flags.
NetworkRealization sample_network(const SystemParams& p, Scheme scheme, Scenario scenario,
                                  double window_radius, std::uint64_t key,
                                  bool with_eavesdroppers = true);

}  // namespace scj
