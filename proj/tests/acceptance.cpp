// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance [--threads N] [criterion ...]
//
// Figure-driven criteria read their grids from the shipped recipes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "scj/analytic/analytic.hpp"
#include "scj/analytic/model.hpp"
#include "scj/cli/config.hpp"
#include "scj/cli/runner.hpp"
#include "scj/core/gain.hpp"
#include "scj/core/parallel.hpp"
#include "scj/mc/montecarlo.hpp"
#include "scj/opt/optimizer.hpp"

#ifndef SCJ_RECIPE_DIR
#define SCJ_RECIPE_DIR "recipes"
#endif

using namespace scj;

namespace {

unsigned g_threads = 0;

struct Verdict {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

cli::ExperimentConfig recipe(const char* name) {
  return cli::load_config(std::string(SCJ_RECIPE_DIR) + "/" + name);
}

McSetup mc_setup(const cli::ExperimentConfig& c) {
  McSetup s;
  s.scheme = c.scheme;
  s.scenario = c.scenario;
  s.window_radius = c.window_radius;
  s.seed = c.seed;
  s.threads = g_threads;
  return s;
}

// ---- 1 ---------------------------------------------------------------------
Verdict simplified_validation() {
  const auto c = recipe("fig2_simplified_validation.ini");
  Verdict v;
  double worst_c = 0, worst_s = 0;
  int bound_c = 0, bound_s = 0;
  std::string where;
  for (std::size_t i = 0; i < c.grid_size(); ++i) {
    const SystemParams p = c.point(i).params;
    const double pc = connection_prob_simplified(p, c.quadrature);
    const double ps = secrecy_prob_simplified(p, c.quadrature);
    const auto e = estimate_stc(p, mc_setup(c), c.trials, c.trials_ps);
    const double dc = std::abs(pc - e.pc.mean), ds = std::abs(ps - e.ps.mean);
    worst_c = std::max(worst_c, dc);
    worst_s = std::max(worst_s, ds);
    if (pc < e.pc.mean - 3 * e.pc.half_width_95) {
      ++bound_c;
      where += fmt(" (p_c lP=%g R_t=%g: %.4f vs %.4f)", p.lambda_P, p.R_t, pc, e.pc.mean);
    }
    if (ps > e.ps.mean + 3 * e.ps.half_width_95) {
      ++bound_s;
      where += fmt(" (p_s lP=%g R_t=%g: %.4f vs %.4f+-%.4f)", p.lambda_P, p.R_t, ps, e.ps.mean,
                   e.ps.half_width_95);
    }
  }
  v.pass = worst_c <= 0.05 && worst_s <= 0.05 && bound_c == 0 && bound_s == 0;
  v.detail = fmt("%zu points, max|dp_c|=%.4f max|dp_s|=%.4f, bound violations p_c %d p_s %d",
                 c.grid_size(), worst_c, worst_s, bound_c, bound_s) +
             where;
  return v;
}

// ---- 2 ---------------------------------------------------------------------
Verdict general_connection() {
  const auto c = recipe("fig3_general_connection.ini");
  Verdict v;
  double worst = 0;
  std::string where;
  int bad = 0;
  for (std::size_t i = 0; i < c.grid_size(); ++i) {
    const SystemParams p = c.point(i).params;
    const double pc = connection_prob_general(p, c.quadrature);
    const auto e = estimate_pc(p, mc_setup(c), c.trials);
    const double d = std::abs(pc - e.mean);
    if (d > 0.05) {
      ++bad;
      where += fmt(" (lT=%g,lP=%g: %.4f vs %.4f)", p.lambda_T, p.lambda_P, pc, e.mean);
    }
    worst = std::max(worst, d);
  }
  v.pass = bad == 0;
  v.detail = fmt("%zu points, max|dp_c|=%.4f, %d beyond 0.05", c.grid_size(), worst, bad) + where;
  return v;
}

// ---- 3 ---------------------------------------------------------------------
Verdict general_secrecy() {
  const auto c = recipe("fig5_general_secrecy.ini");
  Verdict v;
  double worst = 0;
  int small = 0, closer = 0, bad = 0;
  for (std::size_t i = 0; i < c.grid_size(); ++i) {
    SystemParams p = c.point(i).params;
    const double ps = secrecy_prob_general(p, c.quadrature);
    const auto e = estimate_ps(p, mc_setup(c), c.trials_ps);
    const double d = std::abs(ps - e.mean);
    worst = std::max(worst, d);
    if (d > 0.05) ++bad;
    if (p.lambda_T <= 3e-5) {
      ++small;
      SystemParams a = p, b = p;
      a.beta = 0.0;
      b.beta = 1.0;
      const double d0 = std::abs(secrecy_prob_general(a, c.quadrature) - e.mean);
      const double d1 = std::abs(secrecy_prob_general(b, c.quadrature) - e.mean);
      if (d < d0 && d < d1) ++closer;
    }
  }
  const double frac = small ? double(closer) / small : 0.0;
  v.pass = bad == 0 && frac >= 0.6;
  v.detail = fmt("%zu points, max|dp_s|=%.4f, blended closest at %d/%d small-lambda_T points",
                 c.grid_size(), worst, closer, small);
  return v;
}

// ---- 4 ---------------------------------------------------------------------
// s at which a decreasing transform crosses `target`, by bisection in log s.
double s_for(const std::function<double(double)>& L, double target) {
  double lo = 1e-3, hi = 1e-3;
  while (L(hi) > target && hi < 1e30) hi *= 10;
  for (int it = 0; it < 80; ++it) {
    const double mid = std::sqrt(lo * hi);
    (L(mid) > target ? lo : hi) = mid;
  }
  return std::sqrt(lo * hi);
}

Verdict transform_oracles() {
  const SystemParams p = SystemParams::table1();
  const std::uint64_t trials = 100000;
  const std::vector<double> targets{0.9, 0.75, 0.6, 0.45, 0.3};
  const std::vector<double> radii{60, 150, 250, 320, 450};
  struct Case {
    const char* name;
    InterfererModel model;
    Role role;
    double density;
    bool uses_re;
    std::function<double(double, double)> analytic;  // (s, r_e)
    double window = 500.0;
  };
  const std::vector<Case> cases = {
      {"in-ball NLoS jammers at receiver", InterfererModel::NlosDisk, Role::Receiver,
       p.lambda_J(), false, [&](double s, double) { return lt_jam_rx_simplified(s, p).value; }},
      {"out-of-ball jammers at receiver", InterfererModel::NlosAnnulus, Role::Receiver,
       p.lambda_J_bar(), false, [&](double s, double) { return lt_php_rx_simplified(s, p).value; },
       // No near field: at 500 m about a fifth of the mean interference
       // would lie outside the disk.
       2000.0},
      {"homogeneous jammers at eavesdropper", InterfererModel::LosBall, Role::Eavesdropper,
       p.lambda_J(), false, [&](double s, double) { return lt_ppp_eve(p.lambda_J(), s, p).value; }},
      {"single-hole jammers at eavesdropper", InterfererModel::SingleHole, Role::Eavesdropper,
       p.lambda_J_bar(), true,
       [&](double s, double r) { return lt_php_eve_simplified(s, r, p).value; }},
      {"transmitters at receiver", InterfererModel::LosBall, Role::Receiver, p.lambda_T, false,
       [&](double s, double) { return lt_tx_rx(p.lambda_T, s, p).value; }},
      {"associated jammers at receiver", InterfererModel::AssociatedJammers, Role::Receiver, 0.0,
       false, [&](double s, double) { return lt_jam_rx_general(s, p).value; }},
      {"all-holes jammers at eavesdropper", InterfererModel::AllHoles, Role::Eavesdropper,
       p.lambda_J_bar(), true,
       [&](double s, double r) { return lt_php_eve_general(s, r, p).value; }},
  };
  Verdict v;
  std::string failures;
  int failed_cases = 0;
  std::ostringstream per_case;
  for (const auto& cs : cases) {
    InterfererConfig ic;
    ic.model = cs.model;
    ic.params = p;
    ic.density = cs.density;
    ic.role = cs.role;
    ic.window_radius = cs.window;
    int bad = 0;
    std::vector<double> svals(targets.size()), avals(targets.size());
    std::vector<LaplaceEstimate> est(targets.size());
    for (std::size_t k = 0; k < targets.size(); ++k) {
      const double r_e = cs.uses_re ? radii[k] : 0.0;
      svals[k] = s_for([&](double x) { return cs.analytic(x, r_e); }, targets[k]);
      avals[k] = cs.analytic(svals[k], r_e);
      if (cs.uses_re) {
        ic.r_e = r_e;
        est[k] = empirical_laplace(ic, std::vector<double>{svals[k]}, trials, 1000 + k,
                                   g_threads)[0];
      }
    }
    // Without an r_e dependence one set of realizations serves every s.
    if (!cs.uses_re) est = empirical_laplace(ic, svals, trials, 1000, g_threads);
    for (std::size_t k = 0; k < targets.size(); ++k) {
      const double tol = std::max(0.01, 3 * est[k].std_error);
      if (std::abs(avals[k] - est[k].mean) > tol) {
        ++bad;
        failures += fmt(" [%s s=%.3g r_e=%g: %.4f vs %.4f]", cs.name, svals[k],
                        cs.uses_re ? radii[k] : 0.0, avals[k], est[k].mean);
      }
    }
    if (bad) ++failed_cases;
    per_case << (bad ? " FAIL:" : " ok:") << cs.name << ";";
  }
  v.pass = failed_cases == 0;
  v.detail = fmt("%d/%zu transforms within max(0.01, 3 SE) at 5 points each;",
                 int(cases.size()) - failed_cases, cases.size()) +
             per_case.str() + failures;
  return v;
}

// ---- 5 ---------------------------------------------------------------------
Verdict pdf_normalization() {
  QuadratureConfig q;
  q.abs_tol = 1e-13;
  q.rel_tol = 1e-12;
  Verdict v;
  double worst = 0;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(1.0, 400.0);
  for (int i = 0; i < 10; ++i) {
    const double r_e = U(rng), r0 = U(rng);
    const double lo = std::abs(r_e - r0), hi = r_e + r0;
    const double I = integrate_cos_mapped([&](double u) { return pair_distance_pdf(u, r_e, r0); },
                                          lo, hi, q)
                         .value;
    worst = std::max(worst, std::abs(I - 1.0));
  }
  const double lr = 7e-5;
  const double If =
      integrate_to_infinity([&](double x) { return nn_pdf(x, lr); }, 1.0, q).value +
      integrate([&](double x) { return nn_pdf(x, lr); }, 0.0, 1.0, q).value;
  const double scale = 1.0 / std::sqrt(lr);
  // inner: int_{v1}^inf f(v1, v2) dv2; outer over v1.
  auto inner = [&](double v1) {
    return integrate_to_infinity([&](double v2) { return nn2_pdf(v1, v2, lr); }, v1, q).value;
  };
  const double Ij = integrate(inner, 0.0, 10 * scale, q).value +
                    integrate_to_infinity(inner, 10 * scale, q).value;
  worst = std::max({worst, std::abs(If - 1.0), std::abs(Ij - 1.0)});
  v.pass = worst <= 1e-6;
  v.detail = fmt("max |integral - 1| = %.2e (h over 10 pairs, f, f_V1V2=%.9f)", worst, Ij);
  return v;
}

// ---- 6 ---------------------------------------------------------------------
Verdict geometry_identities() {
  const SystemParams p = SystemParams::table1();
  QuadratureConfig q;
  q.abs_tol = 1e-15;
  q.rel_tol = 1e-13;
  Verdict v;
  double worst = 0;
  const double D = p.D;
  const auto gains = eavesdropper_gain_distribution(p);
  for (double s : {1e3, 4.2e4, 1e6}) {
    for (const auto& g : gains.entries) {
      for (LinkState b : {LinkState::LoS, LinkState::NLoS}) {
        worst = std::max(worst, std::abs(T1(s, 0.0, g.gain, b, p, q)));
        const double ball =
            2 * std::numbers::pi *
            integrate([&](double r) { return F(b, s * g.gain, r, p) * r; }, 0.0, D, q).value;
        for (double u : {2 * D, 2.5 * D, 10 * D}) {
          const double t = T1(s, u, g.gain, b, p, q);
          worst = std::max(worst, std::abs(t - ball) / std::max(1.0, std::abs(ball)));
        }
      }
    }
  }
  const double a0 = std::abs(hole_area(0.0, D) - std::numbers::pi * D * D / 2) / (D * D);
  const double a2 = std::abs(hole_area(2 * D, D));
  double pw = 0;
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) {
      const double u = 3 * D * (i + 0.5) / 20, r = 3 * D * (j + 0.5) / 20;
      pw = std::max(pw, std::abs(kept_angle_limits(u, r, D) - kept_angle_piecewise(u, r, D)));
    }
  v.pass = worst <= 1e-10 && a0 <= 1e-12 && a2 <= 1e-10 && pw <= 1e-10;
  v.detail = fmt("T1 identities %.1e, A(0) %.1e, A(2D) %.1e, piecewise vs limits %.1e", worst,
                 a0, a2, pw);
  return v;
}

// ---- 7 ---------------------------------------------------------------------
Verdict stc_improvement() {
  SystemParams base = SystemParams::table1();
  const std::vector<double> lts{1e-5, 2e-5, 3e-5, 5e-5, 7e-5}, les{1e-5, 1e-4, 5e-4};
  const AnalyticModel model(base, {}, g_threads);
  Verdict v;
  double worst = 1.0;
  int bad = 0;
  for (double lt : lts)
    for (double le : les) {
      SystemParams p = base;
      p.lambda_T = lt;
      p.lambda_E = le;
      const double none = model.stc(p, Scheme::None, Scenario::General);
      const double scj = solve_p1(model, p).value;
      // Relative margin; values are compared on the same quadrature tables.
      const double margin = (scj - none) / std::max(none, 1e-300);
      worst = std::min(worst, margin);
      if (scj < none * (1 - 1e-6)) ++bad;
    }
  v.pass = bad == 0;
  v.detail = fmt("15 points, min (STC_scj - STC_none)/STC_none = %.3e", worst);
  return v;
}

// ---- 8 ---------------------------------------------------------------------
// Optimal rho along the last axis of the recipe grid, per leading combination.
std::vector<std::vector<std::pair<double, double>>> rho_curves(const cli::ExperimentConfig& c) {
  const std::size_t inner = c.axes.back().size();
  std::vector<double> rho(c.grid_size());
  const AnalyticModel model(c.point(0).params, c.quadrature, g_threads);
  SolverConfig sc = c.solver;
  sc.scenario = c.scenario;
  parallel_chunks(c.grid_size(), g_threads,
                  [&](std::size_t i) { rho[i] = solve_p1(model, c.point(i).params, sc).argmax[0]; });
  std::vector<std::vector<std::pair<double, double>>> curves(c.grid_size() / inner);
  for (std::size_t i = 0; i < c.grid_size(); ++i)
    curves[i / inner].emplace_back(c.point_values(i).back(), rho[i]);
  return curves;
}

Verdict optimizer_trends() {
  const double slack = 1e-4;  // ten times the golden-section bracket tolerance
  Verdict v;
  auto check = [&](const char* file, int dir, const char* label) {
    const auto curves = rho_curves(recipe(file));
    int bad = 0;
    std::string vals;
    for (const auto& cv : curves) {
      for (std::size_t k = 1; k < cv.size(); ++k)
        if (dir * (cv[k].second - cv[k - 1].second) > slack) ++bad;
      vals += " [";
      for (const auto& [x, r] : cv) vals += fmt("%.3f ", r);
      vals.back() = ']';
    }
    if (bad) v.pass = false;
    v.detail += fmt("%s %s(%d violations)%s; ", label, bad ? "FAIL " : "ok ", bad, vals.c_str());
  };
  check("fig8_rho_vs_lambda_p.ini", +1, "rho* vs lambda_P non-increasing:");
  check("fig10_rho_vs_lambda_t.ini", +1, "rho* vs lambda_T non-increasing:");
  check("fig14_rho_vs_lambda_e.ini", -1, "rho* vs lambda_E non-decreasing:");
  return v;
}

// ---- 9 ---------------------------------------------------------------------
Verdict scheme_comparison() {
  Verdict v;
  {
    const auto c = recipe("fig6_stc_vs_lambda_p.ini");
    const AnalyticModel model(c.point(0).params, c.quadrature, g_threads);
    SolverConfig sc = c.solver;
    sc.scenario = c.scenario;
    const std::size_t n = c.grid_size();
    std::vector<double> gap(n);
    parallel_chunks(n, g_threads, [&](std::size_t i) {
      const SystemParams p = c.point(i).params;
      gap[i] = solve_p1(model, p, sc).value - solve_p2(model, p, sc).value;
    });
    // First index from which SCJ stays strictly ahead, preceded by a PJ lead.
    std::size_t from = n;
    while (from > 0 && gap[from - 1] > 0) --from;
    const bool crossover = from > 0 && from < n;
    if (!crossover) v.pass = false;
    v.detail += crossover ? fmt("crossover: SCJ ahead from lambda_P=%g on; ",
                                c.point_values(from).back())
                          : std::string("crossover: none; ");
  }
  const auto c = recipe("fig12_joint_nsee.ini");
  const AnalyticModel model(c.point(0).params, c.quadrature, g_threads);
  SolverConfig sc = c.solver;
  sc.scenario = c.scenario;
  const std::size_t n = c.grid_size();
  std::vector<double> dstc(n), dnsee(n);
  parallel_chunks(n, g_threads, [&](std::size_t i) {
    const auto st = c.point(i);
    const auto a = solve_p3(model, st.params, st.epsilon, sc);
    const auto b = solve_p4(model, st.params, st.epsilon, sc);
    dstc[i] = a.value - b.value;
    dnsee[i] = nsee(a.value, apply_argmax(st.params, a), Scheme::SCJ) -
               nsee(b.value, apply_argmax(st.params, b), Scheme::PJ);
  });
  const std::size_t inner = c.axes.back().size();
  int bad = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i % inner == 0) continue;
    // Equal gaps within the solver's resolution count as non-decreasing.
    if (dstc[i] < dstc[i - 1] - 1e-9) ++bad;
    if (dnsee[i] < dnsee[i - 1] - 1e-6) ++bad;
  }
  if (bad) v.pass = false;
  v.detail += fmt("epsilon gaps: %d decreases over %zu curves;", bad, n / inner);
  for (std::size_t i = 0; i < n; ++i)
    v.detail += fmt(" %s%.2e/%.2e", i % inner == 0 ? "| " : "", dstc[i], dnsee[i]);
  return v;
}

// ---- 10 --------------------------------------------------------------------
Verdict determinism() {
  auto c = cli::parse_config(
      "[run]\nbase = " SCJ_RECIPE_DIR "/table1.ini\nengine = both\ntrials = 1500\n"
      "trials_ps = 1500\n[sweep]\ndensity.lambda_P = 2e-4, 1e-3\n",
      "determinism");
  auto o = c;
  o.problems = {"p1", "p2"};
  const unsigned many = std::max(4u, resolve_threads(0));
  const auto a = cli::run_sweep(c, {1, false}).output;
  const auto b = cli::run_sweep(c, {many, false}).output;
  const auto a2 = cli::run_sweep(c, {1, false}).output;
  const auto x = cli::run_optimize(o, {1, false}).output;
  const auto y = cli::run_optimize(o, {many, false}).output;
  Verdict v;
  v.pass = a == b && a == a2 && x == y;
  v.detail = fmt("sweep 1 vs %u threads %s, repeat %s, optimize %s", many,
                 a == b ? "identical" : "DIFFER", a == a2 ? "identical" : "DIFFER",
                 x == y ? "identical" : "DIFFER");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--threads" && i + 1 < argc) g_threads = std::atoi(argv[++i]);
    else which.push_back(std::atoi(argv[i]));
  }
  if (which.empty()) which = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const std::map<int, std::pair<const char*, std::function<Verdict()>>> all = {
      {1, {"simplified-scenario validation", simplified_validation}},
      {2, {"general-scenario connection validation", general_connection}},
      {3, {"general-scenario secrecy validation", general_secrecy}},
      {4, {"transform oracle equivalence", transform_oracles}},
      {5, {"pdf normalizations", pdf_normalization}},
      {6, {"geometry identities", geometry_identities}},
      {7, {"jamming improves STC", stc_improvement}},
      {8, {"optimizer trends", optimizer_trends}},
      {9, {"scheme comparison", scheme_comparison}},
      {10, {"determinism", determinism}},
  };
  int failed = 0;
  for (int k : which) {
    const auto it = all.find(k);
    if (it == all.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = it->second.second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d %s  %s: %s (%.1f s)\n", k, v.pass ? "PASS" : "FAIL",
                it->second.first, v.detail.c_str(), sec);
    std::fflush(stdout);
    if (!v.pass) ++failed;
  }
  return failed ? 1 : 0;
}
