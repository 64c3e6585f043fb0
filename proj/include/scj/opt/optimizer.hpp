#pragma once

// Maximization of the analytic STC over the jamming parameters.

#include <functional>
#include <string>
#include <vector>

#include "scj/analytic/model.hpp"
#include "scj/core/params.hpp"

namespace scj {

struct SolverConfig {
  int grid_points = 21;        ///< coarse grid on [0, 1], endpoints included
  double golden_tol = 1e-5;    ///< bracket width at which refinement stops
  int max_golden_iter = 80;
  int density_grid_points = 11;  ///< lambda_T grid on [0, epsilon] for P3/P4
  int split_grid_points = 5;     ///< lambda_P grid on the remaining budget
  int inner_grid_points = 11;    ///< activation grid inside P3/P4
  double joint_tol = 1e-3;       ///< density refinement stops at joint_tol * epsilon
  Scenario scenario = Scenario::General;
};

struct TracePoint {
  std::vector<double> x;
  double value = 0.0;
};

struct OptimizationResult {
  std::vector<std::string> names;  ///< parameter names, matching argmax
  std::vector<double> argmax;
  double value = 0.0;
  std::vector<TracePoint> trace;
};

/// Thrown when the objective fails; carries the point being evaluated.
class ObjectiveError : public std::runtime_error {
public:
  ObjectiveError(const std::string& what, std::vector<double> at)
      : std::runtime_error(what), at_(std::move(at)) {}
  const std::vector<double>& at() const noexcept { return at_; }

private:
  std::vector<double> at_;
};

/// Grid on [lo, hi] followed by golden-section refinement inside the
/// bracket around the best grid point. Ties go to the smaller argument.
OptimizationResult maximize_scalar(const std::string& name, const std::function<double(double)>& f,
                                   double lo, double hi, const SolverConfig& cfg);

/// P1: rho for SCJ.
OptimizationResult solve_p1(const AnalyticModel& model, const SystemParams& p,
                            const SolverConfig& cfg = {});
/// P2: varrho for PJ.
OptimizationResult solve_p2(const AnalyticModel& model, const SystemParams& p,
                            const SolverConfig& cfg = {});
/// P3: (lambda_T, lambda_P, rho) for SCJ with lambda_T + lambda_P <= epsilon.
OptimizationResult solve_p3(const AnalyticModel& model, const SystemParams& p, double epsilon,
                            const SolverConfig& cfg = {});
/// P4: (lambda_T, lambda_P, varrho) for PJ with lambda_T + lambda_P <= epsilon.
OptimizationResult solve_p4(const AnalyticModel& model, const SystemParams& p, double epsilon,
                            const SolverConfig& cfg = {});

/// Parameters of `p` with the result's argmax applied.
SystemParams apply_argmax(SystemParams p, const OptimizationResult& r);

/// NSEE at the P3 (SCJ) or P4 (PJ) optimum.
double nsee_at_optimum(const AnalyticModel& model, const SystemParams& p, Scheme scheme,
                       double epsilon, const SolverConfig& cfg = {});

}  // namespace scj
