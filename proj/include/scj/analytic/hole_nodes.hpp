#pragma once

// Geometry helpers for hole-process transforms and the fixed node layouts
// used by the precomputed probability models.

#include <vector>

#include "scj/analytic/kernels.hpp"
#include "scj/analytic/quadrature.hpp"
#include "scj/core/params.hpp"

namespace scj {

/// Distance from the eavesdropper to the paired receiver when the angle at
/// the transmitter is phi: sqrt(r0^2 + r_e^2 - 2 r0 r_e cos phi).
double hole_distance(double phi, double r_e, double r0);

/// [0, pi] split where the hole distance crosses D and 2D.
std::vector<double> phi_breaks(double r_e, double r0, double D);

/// Second-nearest receiver distance below which the non-associated fraction
/// is clamped to 1; zero if it never is.
double partial_fraction_knee(const SystemParams& p, const QuadratureConfig& cfg);

/// Gain mixtures of the LoS-minus-NLoS correction integrals.
class CorrectionMixtures {
public:
  explicit CorrectionMixtures(const InterferenceKernels& k) : k_(k) {}
  double q1(double s, double v1, const QuadratureConfig& cfg) const;
  double q2(double s, double v1, double v2, const QuadratureConfig& cfg) const;

private:
  const InterferenceKernels& k_;
};

/// Quadrature nodes for E[g(min(U, V))] at one eavesdropper distance r_e.
///  - wu: weights of E_U[g(U) (.)], where (.) is P(V > U) or 1
///  - du: weights of int g(v) f(v) P(U > v) dv over the support of U,
///        written in the angle variable (f itself applied at evaluation)
///  - v, wv: nodes of int g(v) f(v) dv on [0, |r_e - r0|], where P(U > v) = 1
struct HoleNodes {
  std::vector<double> u, wu, du;
  std::vector<double> v, wv;
};

HoleNodes make_hole_nodes(double r_e, double r0, double D, int order);

}  // namespace scj
