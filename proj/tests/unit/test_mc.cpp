#include <doctest.h>

#include <cmath>

#include "scj/analytic/analytic.hpp"
#include "scj/mc/montecarlo.hpp"

using namespace scj;

TEST_CASE("binomial estimate") {
  const auto e = Estimate::from_counts(50, 100);
  CHECK(e.mean == 0.5);
  // Wilson half-width: 1.96 / (1 + 1.96^2/100) * sqrt(0.0025 + 1.96^2/40000).
  CHECK(e.half_width_95 == doctest::Approx(0.0961702).epsilon(1e-5));
  // Zero successes: the upper Wilson limit z^2 / (n + z^2).
  CHECK(Estimate::from_counts(0, 10).half_width_95 == doctest::Approx(3.8416 / 13.8416));
  CHECK(Estimate::from_counts(10, 10).half_width_95 == doctest::Approx(3.8416 / 13.8416));
}

TEST_CASE("estimates do not depend on the thread count") {
  SystemParams p;
  McSetup a;
  a.threads = 1;
  McSetup b = a;
  b.threads = 3;
  const auto x = estimate_stc(p, a, 600, 600);
  const auto y = estimate_stc(p, b, 600, 600);
  CHECK(x.pc.successes == y.pc.successes);
  CHECK(x.ps.successes == y.ps.successes);
  McSetup c = a;
  c.seed = 43;
  const auto z = estimate_stc(p, c, 600, 600);
  CHECK((z.pc.successes != x.pc.successes || z.ps.successes != x.ps.successes));
}

TEST_CASE("common random numbers: more jammers never help the receiver") {
  SystemParams p;
  McSetup s;
  s.scenario = Scenario::Simplified;
  s.threads = 1;
  std::uint64_t prev = ~0ULL;
  for (double lp : {1e-4, 3e-4, 1e-3}) {
    p.lambda_P = lp;
    const auto e = estimate_pc(p, s, 800);
    CHECK(e.successes <= prev);
    prev = e.successes;
  }
}

TEST_CASE("no jammers, no other pairs: connection equals the fading tail") {
  SystemParams p;
  p.lambda_P = 0;
  McSetup s;
  s.scheme = Scheme::None;
  s.scenario = Scenario::Simplified;
  const auto e = estimate_pc(p, s, 20000);
  // Gamma(N_L, N_L) tail at N_L * SINR threshold * noise scale.
  const double x = 255.0 * p.sigma2 * p.r0 * p.r0 / (p.P * p.G_T * p.G_R);
  const double t = p.N_L * x;
  const double exact = std::exp(-t) * (1 + t + t * t / 2);
  CHECK(std::abs(e.mean - exact) <= 3 * e.half_width_95 / 1.96 + 1e-3);
}

TEST_CASE("empirical Laplace transform of a blockage-free PPP") {
  SystemParams p;
  InterfererConfig c;
  c.model = InterfererModel::NlosDisk;
  c.params = p;
  c.density = p.lambda_J();
  c.role = Role::Receiver;
  const double s = 4.2e4;
  const auto e = empirical_laplace(c, std::vector<double>{0.0, s}, 20000, 3, 1);
  CHECK(e[0].mean == 1.0);
  CHECK(std::abs(e[1].mean - lt_jam_rx_simplified(s, p).value) <= std::max(0.01, 3 * e[1].std_error));
}

TEST_CASE("empirical transform is non-increasing in s") {
  SystemParams p;
  InterfererConfig c;
  c.model = InterfererModel::SingleHole;
  c.params = p;
  c.density = p.lambda_J_bar();
  c.r_e = 150;
  const std::vector<double> s{1e2, 1e3, 1e4, 1e5};
  const auto e = empirical_laplace(c, s, 2000, 5, 1);
  for (std::size_t i = 1; i < s.size(); ++i) CHECK(e[i].mean <= e[i - 1].mean);
  for (const auto& x : e) CHECK((x.mean > 0.0 && x.mean <= 1.0));
}

TEST_CASE("all-receiver hole transform matches its nearest-hole process") {
  // The transform replaces the hole process by a homogeneous one at the
  // blended density with only the nearest receiver's ball removed; against
  // that process it is exact.
  const SystemParams p = SystemParams::table1();
  InterfererConfig c;
  c.model = InterfererModel::NearestHole;
  c.params = p;
  c.density = blended_php_density(p);
  c.window_radius = 1000;
  for (const double r_e : {80.0, 150.0, 300.0}) {
    double lo = 1.0, hi = 1e12;
    for (int it = 0; it < 80; ++it) {
      const double mid = std::sqrt(lo * hi);
      (lt_php_eve_general(mid, r_e, p).value > 0.5 ? lo : hi) = mid;
    }
    const double s = std::sqrt(lo * hi);
    c.r_e = r_e;
    const auto e = empirical_laplace(c, std::vector<double>{s}, 20000, 11, 0)[0];
    CAPTURE(r_e);
    CHECK(std::abs(e.mean - 0.5) <= std::max(0.01, 3 * e.std_error));
  }
}
