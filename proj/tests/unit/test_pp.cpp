#include <doctest.h>

#include <cmath>
#include <numbers>

#include "scj/pp/point_process.hpp"
#include "scj/pp/spatial_grid.hpp"

using namespace scj;

TEST_CASE("distance") {
  CHECK(distance({0, 0}, {3, 4}) == 5.0);
  const std::vector<Point> rx{{0, 0}};
  CHECK(nearest_linear({3, 4}, rx).distance == 5.0);
  CHECK_THROWS_AS(nearest_linear({0, 0}, std::vector<Point>{}), InvalidRealization);
}

TEST_CASE("grid nearest agrees with brute force") {
  KeyedStream s(2024);
  int mismatches = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    const double lambda = 1e-5 * (1 + rep % 20);
    auto pts = sample_ppp(lambda, 500.0, s);
    if (pts.empty()) continue;
    if (rep % 7 == 0) pts.push_back(pts.front());  // exact tie
    const PointGrid grid(pts, 200.0, 500.0);
    const ReceiverIndex index(pts, 200.0, 500.0);
    for (int q = 0; q < 5; ++q) {
      const Point x{(s.uniform() - 0.5) * 1400, (s.uniform() - 0.5) * 1400};
      const auto a = nearest_linear(x, pts);
      const auto b = grid.nearest(x);
      const auto c = index.nearest(x);
      if (a.index != b.index || a.distance != b.distance || a.index != c.index) ++mismatches;
    }
  }
  CHECK(mismatches == 0);
}

TEST_CASE("ring visit covers every point once") {
  KeyedStream s(5);
  const auto pts = sample_ppp(1e-4, 500.0, s);
  const PointGrid grid(pts, 100.0);
  std::vector<int> seen(pts.size(), 0);
  grid.visit_by_ring({12, -40}, [&](std::size_t i) {
    ++seen[i];
    return true;
  });
  for (int c : seen) CHECK(c == 1);
}

TEST_CASE("PPP counts and positions") {
  const double lambda = 1e-4, R = 500.0;
  const double mean = lambda * std::numbers::pi * R * R;
  double acc = 0, acc2 = 0, rad = 0;
  std::size_t npts = 0;
  const int reps = 2000;
  for (int i = 0; i < reps; ++i) {
    KeyedStream s(combine_key(77, i));
    const auto pts = sample_ppp(lambda, R, s);
    acc += pts.size();
    acc2 += double(pts.size()) * pts.size();
    for (const auto& p : pts) {
      CHECK(norm(p) <= R);
      rad += norm(p) * norm(p);
    }
    npts += pts.size();
  }
  const double m = acc / reps, var = acc2 / reps - m * m;
  CHECK(m == doctest::Approx(mean).epsilon(0.01));
  CHECK(var == doctest::Approx(mean).epsilon(0.1));
  // Uniform in the disk: E|x|^2 = R^2 / 2.
  CHECK(rad / npts == doctest::Approx(R * R / 2).epsilon(0.01));
}

TEST_CASE("larger density extends the same points") {
  KeyedStream a(9), b(9);
  const auto lo = sample_ppp(1e-4, 500.0, a);
  const auto hi = sample_ppp(3e-4, 500.0, b);
  REQUIRE(hi.size() >= lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) {
    CHECK(lo[i].x == hi[i].x);
    CHECK(lo[i].y == hi[i].y);
  }
}

TEST_CASE("sight rule selections") {
  SystemParams p;
  for (std::uint64_t key = 0; key < 30; ++key) {
    const auto net = sample_network(p, Scheme::SCJ, Scenario::General, 500.0, key, false);
    REQUIRE(net.jammer_flags.size() == net.potential_jammers.size());
    for (std::size_t j = 0; j < net.potential_jammers.size(); ++j) {
      const auto nr = nearest_linear(net.potential_jammers[j], net.receivers);
      if (!net.jammer_flags[j]) {
        CHECK(nr.distance <= p.D);
        continue;
      }
      if (nr.distance <= p.D) {
        const NodeRef src{NodeKind::Jammer, static_cast<std::uint32_t>(j)};
        const NodeRef dst{NodeKind::Receiver, static_cast<std::uint32_t>(nr.index)};
        CHECK(net.link_state(src, dst, p) == LinkState::NLoS);
        CHECK(net.activation_coin(j) < p.rho);
      }
    }
    const auto q = scjq_select(net, p);
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (q[j]) CHECK(net.jammer_flags[j]);
      if (q[j]) CHECK(nearest_linear(net.potential_jammers[j], net.receivers).distance <= p.D);
    }
  }
}

TEST_CASE("PJ activation fraction") {
  SystemParams p;
  p.varrho = 0.3;
  std::size_t on = 0, all = 0;
  for (std::uint64_t key = 0; key < 50; ++key) {
    const auto net = sample_network(p, Scheme::PJ, Scenario::Simplified, 500.0, key, false);
    for (auto f : net.jammer_flags) on += f;
    all += net.jammer_flags.size();
  }
  const double frac = double(on) / all;
  CHECK(std::abs(frac - 0.3) < 3 * std::sqrt(0.21 / all) + 1e-3);
}

TEST_CASE("link draws are memoized per pair") {
  SystemParams p;
  const auto net = sample_network(p, Scheme::SCJ, Scenario::General, 500.0, 123, true);
  REQUIRE(!net.potential_jammers.empty());
  const NodeRef j{NodeKind::Jammer, 0}, y{NodeKind::Receiver, 0};
  const auto a = net.link(j, y, Role::Receiver, p);
  const auto b = net.link(j, y, Role::Receiver, p);
  CHECK(a.fading == b.fading);
  CHECK(a.gain == b.gain);
  // The intended pair is LoS with aligned main lobes.
  const auto d = net.link({NodeKind::Transmitter, 0}, y, Role::Receiver, p);
  CHECK(d.state == LinkState::LoS);
  CHECK(d.gain == doctest::Approx(p.G_T * p.G_R));
}
