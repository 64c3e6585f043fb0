#include "scj/core/random.hpp"

#include <algorithm>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace scj {

namespace {

// P(Pois(mean) <= k)
double poisson_cdf(std::uint64_t k, double mean) {
  return boost::math::gamma_q(static_cast<double>(k) + 1.0, mean);
}

}  // namespace

std::uint64_t poisson_quantile(double mean, double u) {
  if (!(mean > 0.0)) return 0;
  if (u <= 0.0) return 0;
  if (u >= 1.0) u = std::nextafter(1.0, 0.0);

  // Start from the normal approximation, then walk to the exact quantile.
  const double z = -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * u);
  const double guess = std::floor(mean + z * std::sqrt(mean));
  std::uint64_t k = guess > 0.0 ? static_cast<std::uint64_t>(guess) : 0;

  while (poisson_cdf(k, mean) < u) ++k;
  while (k > 0 && poisson_cdf(k - 1, mean) >= u) --k;
  return k;
}

}  // namespace scj
