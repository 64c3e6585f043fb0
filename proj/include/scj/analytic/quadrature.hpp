#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace scj {

struct QuadratureConfig {
  double abs_tol = 1e-9;
  double rel_tol = 1e-6;
  int max_depth = 60;
  /// Fallback outer radius for fixed-node tables when the noise term does
  /// not bound the integrand (sigma2 = 0). Must exceed D.
  double tail_cutoff_radius = 1e5;
  /// Cap on subintervals per adaptive integral.
  int max_intervals = 4000;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

/// Non-convergence of an adaptive integral; carries the partial estimate.
class QuadratureError : public std::runtime_error {
public:
  QuadratureError(const std::string& what, double partial, double error)
      : std::runtime_error(what), partial_(partial), error_(error) {}
  double partial() const noexcept { return partial_; }
  double error() const noexcept { return error_; }

private:
  double partial_;
  double error_;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 7/15-point Gauss-Kronrod on [a, b].
QuadResult integrate(const Integrand& f, double a, double b, const QuadratureConfig& cfg = {});

/// Integral over [a, inf) through r = a/t, t in (0, 1]. Requires a > 0.
QuadResult integrate_to_infinity(const Integrand& f, double a, const QuadratureConfig& cfg = {});

/// Integral over [a, b] through r = a + (b-a)(1 - cos th)/2, which removes
/// square-root endpoint behaviour such as arccos near +-1.
QuadResult integrate_cos_mapped(const Integrand& f, double a, double b,
                                const QuadratureConfig& cfg = {});

/// Sum of integrals over consecutive pieces of a sorted breakpoint list.
QuadResult integrate_pieces(const Integrand& f, const std::vector<double>& breaks,
                            const QuadratureConfig& cfg = {});

struct GaussRule {
  std::vector<double> x;  ///< nodes on [-1, 1]
  std::vector<double> w;
};

/// Gauss-Legendre rule with n nodes (cached per n).
const GaussRule& gauss_legendre(int n);

/// Appends the n-point rule mapped to [a, b] to (x, w).
void append_gauss(double a, double b, int n, std::vector<double>& x, std::vector<double>& w);

}  // namespace scj
