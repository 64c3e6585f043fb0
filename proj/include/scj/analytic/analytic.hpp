#pragma once

// Closed-form transforms and probabilities evaluated by quadrature.

#include "scj/analytic/kernels.hpp"
#include "scj/analytic/quadrature.hpp"
#include "scj/core/params.hpp"

namespace scj {

struct LaplaceValue {
  double value = 1.0;
  double est_error = 0.0;
};

enum class GainSet { Receiver, Eavesdropper };

GainDistribution gain_set(const SystemParams& p, GainSet g);

// ---- single typical pair ---------------------------------------------------

/// In-ball NLoS jammers seen by the typical receiver, density rho p_N lambda_P.
LaplaceValue lt_jam_rx_simplified(double s, const SystemParams& p, const QuadratureConfig& cfg = {});
/// Out-of-ball jammers seen by the typical receiver, density (1 - rho p_N) lambda_P.
LaplaceValue lt_php_rx_simplified(double s, const SystemParams& p, const QuadratureConfig& cfg = {});
/// Homogeneous PPP of the given density with ball blockage.
LaplaceValue lt_ppp_eve(double lambda, double s, const SystemParams& p,
                        GainSet gains = GainSet::Eavesdropper, const QuadratureConfig& cfg = {});

/// Hole-corrected in-ball exponent for one gain and link class.
double T1(double s, double u, double gain, LinkState b, const SystemParams& p,
          const QuadratureConfig& cfg = {});
/// Hole-corrected out-of-ball NLoS exponent for one gain.
double T2(double s, double u, double gain, const SystemParams& p, const QuadratureConfig& cfg = {});

/// Density of the distance between an eavesdropper at r_e from the
/// transmitter and the transmitter's receiver at r0. Zero off the open support.
double pair_distance_pdf(double u, double r_e, double r0);

/// Hole process of jammers at an eavesdropper, hole at the paired receiver.
LaplaceValue lt_php_eve_simplified(double s, double r_e, const SystemParams& p,
                                   const QuadratureConfig& cfg = {});

// ---- network of pairs --------------------------------------------------------

/// Concurrent transmitters seen by the typical receiver.
LaplaceValue lt_tx_rx(double lambda_T, double s, const SystemParams& p,
                      const QuadratureConfig& cfg = {});

/// Half-lens area D^2 acos(r/2D) - (r/2) sqrt(D^2 - r^2/4); zero beyond 2D.
double hole_area(double r, double D);
/// Probability that a jammer in the outer sub-ball is in a non-associated
/// region, given the second-nearest receiver distance v2.
double partial_fraction(double v2, const SystemParams& p, const QuadratureConfig& cfg = {});
/// int_{v2}^{2D} A(r) r dr, the unclamped numerator of partial_fraction / (2 lambda_R).
double hole_area_moment(double v2, double D, const QuadratureConfig& cfg = {});

double Q1(double s, double v1, double gain, const SystemParams& p, const QuadratureConfig& cfg = {});
double Q2(double s, double v1, double v2, double gain, const SystemParams& p,
          const QuadratureConfig& cfg = {});

/// Nearest-receiver distance density 2 pi lambda v exp(-lambda pi v^2).
double nn_pdf(double v, double lambda_R);
/// Joint density of the nearest and second-nearest receiver distances.
double nn2_pdf(double v1, double v2, double lambda_R);

/// In-ball jammers at the typical receiver when other receivers exist.
LaplaceValue lt_jam_rx_general(double s, const SystemParams& p, const QuadratureConfig& cfg = {});

/// (beta e^{-lambda_R pi D^2} + 1 - beta) (1 - rho p_N) lambda_P
double blended_php_density(const SystemParams& p);

/// Hole process of jammers at an eavesdropper, holes at every receiver,
/// approximated by the hole nearest to the eavesdropper.
LaplaceValue lt_php_eve_general(double s, double r_e, const SystemParams& p,
                                const QuadratureConfig& cfg = {});

// ---- probabilities ---------------------------------------------------------

double connection_prob_simplified(const SystemParams& p, const QuadratureConfig& cfg = {});
double secrecy_prob_simplified(const SystemParams& p, const QuadratureConfig& cfg = {});
double connection_prob_general(const SystemParams& p, const QuadratureConfig& cfg = {});
double secrecy_prob_general(const SystemParams& p, const QuadratureConfig& cfg = {});
double connection_prob_pj(const SystemParams& p, const QuadratureConfig& cfg = {});
double secrecy_prob_pj(const SystemParams& p, const QuadratureConfig& cfg = {});

/// Any scheme/scenario combination.
double connection_prob(const SystemParams& p, Scheme scheme, Scenario scenario,
                       const QuadratureConfig& cfg = {});
double secrecy_prob(const SystemParams& p, Scheme scheme, Scenario scenario,
                    const QuadratureConfig& cfg = {});

double stc(double p_c, double p_s, const SystemParams& p);
/// Radiated power per unit area for the scheme, in W/m^2.
double radiated_power_density(const SystemParams& p, Scheme scheme);
/// STC per unit radiated power; zero when nothing radiates.
double nsee(double stc_value, const SystemParams& p, Scheme scheme = Scheme::SCJ);

/// Sum of alternating terms, largest magnitude first, in long double.
double ordered_sum(double* terms, int n);

}  // namespace scj
