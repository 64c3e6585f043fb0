#include <doctest.h>

#include <cmath>

#include "scj/analytic/model.hpp"
#include "scj/opt/optimizer.hpp"

using namespace scj;

TEST_CASE("scalar search finds an interior maximum") {
  SolverConfig cfg;
  const auto r = maximize_scalar("x", [](double x) { return -(x - 0.3137) * (x - 0.3137); }, 0, 1, cfg);
  CHECK(r.argmax[0] == doctest::Approx(0.3137).epsilon(1e-4));
  for (const auto& t : r.trace) CHECK(t.value <= r.value);
}

TEST_CASE("ties go to the smaller argument") {
  const auto r = maximize_scalar("x", [](double) { return 1.0; }, 0, 1, {});
  CHECK(r.argmax[0] == 0.0);
}

TEST_CASE("objective failures carry the point") {
  try {
    maximize_scalar("x", [](double x) -> double {
      if (x > 0.5) throw std::runtime_error("boom");
      return x;
    }, 0, 1, {});
    FAIL("expected ObjectiveError");
  } catch (const ObjectiveError& e) {
    REQUIRE(e.at().size() == 1);
    CHECK(e.at()[0] > 0.5);
  }
}

TEST_CASE("optimizer edge cases on the analytic model") {
  SystemParams p;
  const AnalyticModel m(p);
  SUBCASE("no eavesdroppers: no jamming") {
    SystemParams q = p;
    q.lambda_E = 0;
    CHECK(solve_p1(m, q).argmax[0] == 0.0);
    CHECK(solve_p2(m, q).argmax[0] == 0.0);
  }
  SUBCASE("zero budget") {
    const auto r = solve_p3(m, p, 0.0);
    CHECK(r.value == 0.0);
    CHECK(r.names == std::vector<std::string>{"lambda_T", "lambda_P", "rho"});
  }
  SUBCASE("optimum beats the grid") {
    const auto r = solve_p1(m, p);
    for (double rho = 0; rho <= 1.0; rho += 0.05) {
      SystemParams q = p;
      q.rho = rho;
      CHECK(m.stc(q, Scheme::SCJ, Scenario::General) <= r.value * (1 + 1e-12));
    }
    CHECK(apply_argmax(p, r).rho == r.argmax[0]);
  }
  SUBCASE("joint budget respected") {
    const double eps = 2e-4;
    const auto r = solve_p4(m, p, eps);
    CHECK(r.argmax[0] + r.argmax[1] <= eps * (1 + 1e-12));
    CHECK(r.value > 0.0);
  }
}
