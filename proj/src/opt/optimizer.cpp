#include "scj/opt/optimizer.hpp"

#include <algorithm>
#include <cmath>

namespace scj {

namespace {

constexpr double kInvPhi = 0.6180339887498949;

// a beats b: larger value, ties broken by the lexicographically smaller point.
bool better(const TracePoint& a, const TracePoint& b, const std::vector<int>& order) {
  if (a.value != b.value) return a.value > b.value;
  for (int i : order)
    if (a.x[i] != b.x[i]) return a.x[i] < b.x[i];
  return false;
}

double stc_at(const AnalyticModel& model, const SystemParams& p, Scheme scheme, Scenario sc) {
  try {
    return model.stc(p, scheme, sc);
  } catch (const std::exception& e) {
    throw ObjectiveError(e.what(), {p.lambda_T, p.lambda_P, p.rho, p.varrho});
  }
}

OptimizationResult solve_activation(const AnalyticModel& model, const SystemParams& p,
                                    Scheme scheme, const SolverConfig& cfg) {
  const bool scj = scheme == Scheme::SCJ;
  return maximize_scalar(
      scj ? "rho" : "varrho",
      [&](double a) {
        SystemParams q = p;
        (scj ? q.rho : q.varrho) = a;
        return stc_at(model, q, scheme, cfg.scenario);
      },
      0.0, 1.0, cfg);
}

OptimizationResult solve_joint(const AnalyticModel& model, const SystemParams& p, double epsilon,
                               Scheme scheme, const SolverConfig& cfg) {
  const bool scj = scheme == Scheme::SCJ;
  OptimizationResult res;
  res.names = {"lambda_T", "lambda_P", scj ? "rho" : "varrho"};
  res.argmax = {0.0, 0.0, 0.0};
  if (!(epsilon > 0.0)) {
    res.trace.push_back({res.argmax, 0.0});
    return res;
  }
  SolverConfig inner = cfg;
  inner.grid_points = cfg.inner_grid_points;
  SolverConfig split = cfg;
  split.grid_points = cfg.split_grid_points;
  split.golden_tol = cfg.joint_tol * epsilon;
  SolverConfig outer = split;
  outer.grid_points = cfg.density_grid_points;

  TracePoint best{{0.0, 0.0, 0.0}, 0.0};
  const std::vector<int> order{1, 2, 0};
  auto best_split = [&](double lt) {
    if (lt <= 0.0) {
      res.trace.push_back({{0.0, 0.0, 0.0}, 0.0});
      return 0.0;
    }
    auto at_lp = [&](double lp) {
      SystemParams q = p;
      q.lambda_T = lt;
      q.lambda_P = lp;
      const auto r = solve_activation(model, q, scheme, inner);
      TracePoint t{{lt, lp, r.argmax[0]}, r.value};
      res.trace.push_back(t);
      if (better(t, best, order)) best = t;
      return r.value;
    };
    const double room = std::max(0.0, epsilon - lt);
    if (room <= 0.0) return at_lp(0.0);
    return maximize_scalar("lambda_P", at_lp, 0.0, room, split).value;
  };
  maximize_scalar("lambda_T", best_split, 0.0, epsilon, outer);
  res.argmax = best.x;
  res.value = best.value;
  return res;
}

}  // namespace

OptimizationResult maximize_scalar(const std::string& name, const std::function<double(double)>& f,
                                   double lo, double hi, const SolverConfig& cfg) {
  OptimizationResult res;
  res.names = {name};
  auto eval = [&](double x) {
    double v;
    try {
      v = f(x);
    } catch (const ObjectiveError&) {
      throw;
    } catch (const std::exception& e) {
      throw ObjectiveError(e.what(), {x});
    }
    res.trace.push_back({{x}, v});
    return v;
  };

  const int n = std::max(2, cfg.grid_points);
  std::vector<double> xs(n), vs(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
    vs[i] = eval(xs[i]);
  }
  int b = 0;
  for (int i = 1; i < n; ++i)
    if (vs[i] > vs[b]) b = i;

  double a = xs[std::max(0, b - 1)], c = xs[std::min(n - 1, b + 1)];
  double x1 = c - kInvPhi * (c - a), x2 = a + kInvPhi * (c - a);
  double f1 = eval(x1), f2 = eval(x2);
  for (int it = 0; it < cfg.max_golden_iter && c - a > cfg.golden_tol; ++it) {
    if (f1 >= f2) {
      c = x2;
      x2 = x1;
      f2 = f1;
      x1 = c - kInvPhi * (c - a);
      f1 = eval(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (c - a);
      f2 = eval(x2);
    }
  }

  const TracePoint* best = &res.trace.front();
  for (const auto& t : res.trace)
    if (t.value > best->value || (t.value == best->value && t.x[0] < best->x[0])) best = &t;
  res.argmax = best->x;
  res.value = best->value;
  return res;
}

OptimizationResult solve_p1(const AnalyticModel& model, const SystemParams& p,
                            const SolverConfig& cfg) {
  return solve_activation(model, p, Scheme::SCJ, cfg);
}

OptimizationResult solve_p2(const AnalyticModel& model, const SystemParams& p,
                            const SolverConfig& cfg) {
  return solve_activation(model, p, Scheme::PJ, cfg);
}

OptimizationResult solve_p3(const AnalyticModel& model, const SystemParams& p, double epsilon,
                            const SolverConfig& cfg) {
  return solve_joint(model, p, epsilon, Scheme::SCJ, cfg);
}

OptimizationResult solve_p4(const AnalyticModel& model, const SystemParams& p, double epsilon,
                            const SolverConfig& cfg) {
  return solve_joint(model, p, epsilon, Scheme::PJ, cfg);
}

SystemParams apply_argmax(SystemParams p, const OptimizationResult& r) {
  for (std::size_t i = 0; i < r.names.size() && i < r.argmax.size(); ++i) {
    const auto& n = r.names[i];
    const double v = r.argmax[i];
    if (n == "rho") p.rho = v;
    else if (n == "varrho") p.varrho = v;
    else if (n == "lambda_T") p.lambda_T = v;
    else if (n == "lambda_P") p.lambda_P = v;
  }
  return p;
}

double nsee_at_optimum(const AnalyticModel& model, const SystemParams& p, Scheme scheme,
                       double epsilon, const SolverConfig& cfg) {
  const auto r = scheme == Scheme::PJ ? solve_p4(model, p, epsilon, cfg)
                                      : solve_p3(model, p, epsilon, cfg);
  return nsee(r.value, apply_argmax(p, r), scheme);
}

}  // namespace scj
