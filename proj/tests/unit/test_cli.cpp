#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "scj/cli/config.hpp"
#include "scj/cli/runner.hpp"

using namespace scj;
using namespace scj::cli;

namespace {
const std::string kBase = std::string("[run]\nbase = ") + SCJ_RECIPE_DIR + "/table1.ini\n";

std::string error_key(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "<none>";
}
}  // namespace

TEST_CASE("reference config loads with normalized units") {
  const auto c = load_config(std::string(SCJ_RECIPE_DIR) + "/table1.ini");
  const auto& p = c.base.params;
  CHECK(p.G_T == 10.0);
  CHECK(p.g_T == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(p.P == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p.sigma2 == doctest::Approx(3.981071705534972e-12).epsilon(1e-12));
  CHECK(p.theta_T == doctest::Approx(std::acos(-1.0) / 6));
  CHECK(c.seed == 42);
  CHECK(c.grid_size() == 1);
}

TEST_CASE("every shipped recipe loads") {
  for (const char* f : {"fig2_simplified_validation.ini", "fig3_general_connection.ini",
                        "fig5_general_secrecy.ini", "fig6_stc_vs_lambda_p.ini",
                        "fig8_rho_vs_lambda_p.ini", "fig10_rho_vs_lambda_t.ini",
                        "fig11_joint_stc.ini", "fig12_joint_nsee.ini",
                        "fig14_rho_vs_lambda_e.ini", "table1_sweep.ini"})
    CHECK_NOTHROW(load_config(std::string(SCJ_RECIPE_DIR) + "/" + f));
}

TEST_CASE("unit conversions") {
  CHECK(parse_quantity("antenna.G_T", "10 dB") == 10.0);
  CHECK(parse_quantity("antenna.G_T", "10") == 10.0);
  CHECK(parse_quantity("channel.power", "30 dBm") == doctest::Approx(1.0));
  CHECK(parse_quantity("channel.power", "500 mW") == 0.5);
  CHECK(parse_quantity("antenna.theta_E", "180 deg") == doctest::Approx(std::acos(-1.0)));
  CHECK(parse_quantity("geometry.D", "0.2 km") == doctest::Approx(200.0));
  CHECK(parse_quantity("channel.bandwidth", "1 GHz") == 1e9);
  CHECK(parse_quantity("channel.noise_density", "-174 dBm/Hz") ==
        doctest::Approx(3.981071705534972e-21));
  CHECK_THROWS_AS(parse_quantity("antenna.G_T", "10 dBm"), ConfigError);
  CHECK_THROWS_AS(parse_quantity("density.lambda_P", "abc"), ConfigError);
}

TEST_CASE("gain given in dB round-trips through the metadata block") {
  const auto c = parse_config(kBase + "[antenna]\nG_E = 10 dB\n");
  bool found = false;
  for (const auto& [k, v] : c.emitted)
    if (k == "antenna.G_E") {
      CHECK(format_double(v) == "10");
      found = true;
    }
  CHECK(found);
}

TEST_CASE("config errors carry the key path") {
  CHECK(error_key(kBase + "[density]\nlambda_T = -1e-5\n") == "density.lambda_T");
  CHECK(error_key(kBase + "[density]\nlambda_X = 1\n") == "density.lambda_X");
  CHECK(error_key(kBase + "[bogus]\nx = 1\n") == "bogus.x");
  CHECK(error_key("[density]\nlambda_T = 1e-5\n") == "density.lambda_P");
  CHECK(error_key(kBase + "[jamming]\nrho = 2\n") == "jamming.rho");
  CHECK(error_key(kBase + "[channel]\nsigma2 = 1e-12\n") == "channel.sigma2");
  CHECK(error_key(kBase + "trials = 0\n") == "run.trials");
  CHECK(error_key(kBase + "engine = gpu\n") == "run.engine");
  CHECK(error_key(kBase + "[sweep]\ndensity.lambda_P = 2e-4, 1e-4\n") == "sweep.density.lambda_P");
  CHECK(error_key(kBase + "[sweep]\njamming.gamma = 1\n") == "sweep.jamming.gamma");
  CHECK(error_key(kBase + "[sweep]\nrates.R_t|rates.R_e = 8|4, 6\n") == "sweep.rates.R_t|rates.R_e");
  CHECK(error_key(kBase + "mode = optimize\n[optimize]\nproblems = p3\n") ==
        "optimize.epsilon");
  CHECK_THROWS_AS(load_config("/nonexistent/x.ini"), ConfigError);
}

TEST_CASE("grid order: first axis slowest, zipped keys move together") {
  const auto c = parse_config(kBase +
                              "[sweep]\nrates.R_t|rates.R_e = 6|3, 8|4\n"
                              "density.lambda_P = 1e-4, 2e-4, 3e-4\n");
  REQUIRE(c.grid_size() == 6);
  CHECK(c.axis_columns() == std::vector<std::string>{"rates.R_t", "rates.R_e", "density.lambda_P"});
  CHECK(c.point_values(0) == std::vector<double>{6, 3, 1e-4});
  CHECK(c.point_values(4) == std::vector<double>{8, 4, 2e-4});
  CHECK(c.point(4).params.R_e == 4);
  CHECK(c.point(4).params.lambda_P == 2e-4);
}

TEST_CASE("empty grid gives a header-only CSV and exit 0") {
  const auto c = parse_config(kBase + "[sweep]\ndensity.lambda_P =\n");
  const auto r = run_validate(c);
  CHECK(r.exit_code == kOk);
  std::istringstream in(r.output);
  std::string line, last;
  int data = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    ++data;
    last = line;
  }
  CHECK(data == 1);
  CHECK(last.rfind("density.lambda_P,p_c,p_c_mc,p_c_mc_hw95,p_c_delta", 0) == 0);
}

TEST_CASE("sweep CSV schema and float format") {
  auto c = parse_config(kBase + "[sweep]\ndensity.lambda_P = 2e-4, 1e-3\n");
  c.engine = Engine::Analytic;
  const auto r = run_sweep(c, {1, false});
  CHECK(r.exit_code == kOk);
  CHECK(r.output.find("\ndensity.lambda_P,p_c,p_s,stc,nsee,status\n") != std::string::npos);
  CHECK(r.output.find("\n0.001,0.240324") != std::string::npos);
  CHECK(r.output.find("# seed = 42\n") != std::string::npos);
  CHECK(format_double(1.0 / 3) == "0.333333333");
  CHECK(format_double(7e-5) == "7e-05");
}

TEST_CASE("validate flags a tolerance failure") {
  auto c = parse_config(kBase + "trials = 300\ntrials_ps = 300\ntolerance = 0\n"
                                "[density]\nlambda_T = 3e-5\n");
  // Tiny trial counts: the CI keeps the check honest, zero tolerance
  // cannot absorb a real bias of a few percent.
  const auto r = run_validate(c, {1, false});
  CHECK((r.exit_code == kOk || r.exit_code == kToleranceFail));
  CHECK(r.output.find(",pass,status\n") != std::string::npos);
}

TEST_CASE("optimize report at zero eavesdropper density") {
  auto c = parse_config(kBase + "mode = optimize\n[density]\nlambda_E = 0\n"
                                "[optimize]\nproblems = p1\ntrace = false\n");
  const auto r = run_optimize(c, {1, false});
  CHECK(r.exit_code == kOk);
  CHECK(r.output.find("\"rho\": 0.0") != std::string::npos);
}
