#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "scj/core/params.hpp"
#include "scj/pp/point_process.hpp"

namespace scj {

/// Binomial estimate with a normal-approximation 95% half-width.
struct Estimate {
  double mean = 0.0;
  double half_width_95 = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;

  static Estimate from_counts(std::uint64_t successes, std::uint64_t trials);
};

struct TrialOutcome {
  bool connected = false;
  bool secret = false;
};

struct McSetup {
  Scheme scheme = Scheme::SCJ;
  Scenario scenario = Scenario::General;
  double window_radius = 500.0;
  std::uint64_t seed = 42;
  unsigned threads = 0;
};

/// SINR at `victim` for the signal from `source`. All transmitters other
/// than the source and all active jammers interfere.
/// Throws InvalidRealization if the victim coincides with any transmitting node.
double sinr_at(NodeRef victim, Role role, NodeRef source, const NetworkRealization& net,
               const SystemParams& p);

/// One trial on the realization keyed by (seed, trial). Only the requested
/// events are evaluated; the other field is left false.
TrialOutcome run_trial(const SystemParams& p, const McSetup& setup, std::uint64_t trial,
                       bool connection, bool secrecy);

Estimate estimate_pc(const SystemParams& p, const McSetup& setup, std::uint64_t trials);
Estimate estimate_ps(const SystemParams& p, const McSetup& setup, std::uint64_t trials);

struct StcEstimate {
  Estimate pc;
  Estimate ps;
  double stc = 0.0;
};

/// Connection is scored on the first `trials_pc` realizations and secrecy on
/// the first `trials_ps`, sharing realizations where they overlap.
StcEstimate estimate_stc(const SystemParams& p, const McSetup& setup, std::uint64_t trials_pc,
                         std::uint64_t trials_ps);

// ---- Laplace-transform oracle --------------------------------------------

enum class InterfererModel {
  NlosDisk,           ///< homogeneous PPP around the victim, every link NLoS
  NlosAnnulus,        ///< same, restricted to distances beyond D
  LosBall,            ///< homogeneous PPP with ball blockage
  SingleHole,         ///< PPP with the ball of the paired receiver removed
  AssociatedJammers,  ///< sight-rule jammers picked among potential jammers
  AllHoles,           ///< PPP with the balls of every receiver removed
  NearestHole,        ///< PPP with only the ball of the receiver nearest the victim removed
};

struct InterfererConfig {
  InterfererModel model = InterfererModel::LosBall;
  SystemParams params;
  /// Interferer density; unused by AssociatedJammers (lambda_P and rho).
  double density = 0.0;
  Role role = Role::Eavesdropper;
  /// Eavesdropper-to-transmitter distance for the hole models.
  double r_e = 0.0;
  double window_radius = 500.0;
};

struct LaplaceEstimate {
  double mean = 1.0;
  double std_error = 0.0;
};

/// Sample mean of exp(-s I) for each s, sharing one set of realizations.
std::vector<LaplaceEstimate> empirical_laplace(const InterfererConfig& cfg,
                                               std::span<const double> s,
                                               std::uint64_t trials, std::uint64_t seed,
                                               unsigned threads = 0);

double empirical_laplace(const InterfererConfig& cfg, double s, std::uint64_t trials,
                         std::uint64_t seed, unsigned threads = 0);

}  // namespace scj
