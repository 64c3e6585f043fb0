#pragma once

// Precomputed probability models. Everything that does not depend on the
// densities, rho, varrho or beta is tabulated once on fixed quadrature
// nodes; evaluating p_c or p_s for new densities then costs only
// exponentials. Used by the optimizer and by sweeps.

#include <vector>

#include "scj/analytic/analytic.hpp"
#include "scj/core/params.hpp"

namespace scj {

/// Densities entering the transforms for one scheme and scenario.
struct DensityPlan {
  double phi = 0.0;        ///< homogeneous interferers at the victim
  double psi = 0.0;        ///< hole process density (lambda_J_bar or blended)
  bool has_psi = false;
  bool general = false;
};

/// Densities seen by eavesdroppers.
DensityPlan eavesdropper_plan(const SystemParams& p, Scheme scheme, Scenario scenario);

class ConnectionModel {
public:
  ConnectionModel(const SystemParams& structure, const QuadratureConfig& cfg = {},
                  unsigned threads = 1);

  double evaluate(const SystemParams& p, Scheme scheme, Scenario scenario) const;

  /// Correction expectation of the general in-ball jammer transform at s = k mu.
  double jam_correction(int k, double lambda_J, double lambda_R) const;
  double s(int k) const { return terms_[k - 1].s; }

private:
  struct Term {
    double s, noise, nlos_full, nlos_out, ball;
    std::vector<double> q1;                // per v1 node
    std::vector<std::vector<double>> q2;   // per v1 node, per v2 node
  };
  SystemParams p_;
  std::vector<Term> terms_;
  std::vector<double> v1_, w1_;
  std::vector<std::vector<double>> v2_, w2_, moment_;
};

class SecrecyModel {
public:
  SecrecyModel(const SystemParams& structure, const QuadratureConfig& cfg = {},
               unsigned threads = 1);

  double evaluate(const SystemParams& p, Scheme scheme, Scenario scenario) const;

  /// Hole-process transform at table node (node, combo), for tests.
  double psi_transform(std::size_t node, std::size_t combo, const DensityPlan& plan,
                       double lambda_R) const;
  std::size_t nodes() const { return nodes_.size(); }
  std::size_t combos(std::size_t node) const { return nodes_[node].combos.size(); }
  double node_radius(std::size_t node) const { return nodes_[node].r; }
  double combo_s(std::size_t node, std::size_t combo) const {
    return nodes_[node].combos[combo].s;
  }

private:
  struct Combo {
    int term;       ///< index into coef_
    double s, noise, base;
    std::vector<double> xu;  ///< exponent at hole distances u(phi)
    std::vector<double> xv;  ///< exponent at nearest-receiver nodes
  };
  struct Node {
    double r = 0.0, w = 0.0;
    std::vector<double> u{}, wu{}, du{}, v{}, wv{};
    std::vector<Combo> combos{};
  };
  SystemParams p_;
  bool degenerate_ = false;
  std::vector<double> coef_;
  std::vector<Node> nodes_;
};

/// Both models for one parameter structure.
class AnalyticModel {
public:
  explicit AnalyticModel(const SystemParams& structure, const QuadratureConfig& cfg = {},
                         unsigned threads = 1);

  bool compatible(const SystemParams& p) const { return same_structure(p, p_); }
  double connection(const SystemParams& p, Scheme scheme, Scenario scenario) const;
  double secrecy(const SystemParams& p, Scheme scheme, Scenario scenario) const;
  double stc(const SystemParams& p, Scheme scheme, Scenario scenario) const;

private:
  SystemParams p_;
  ConnectionModel conn_;
  SecrecyModel sec_;
};

}  // namespace scj
