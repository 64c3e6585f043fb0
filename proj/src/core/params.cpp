#include "scj/core/params.hpp"

#include <cmath>

namespace scj {

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::SCJ: return "scj";
    case Scheme::PJ: return "pj";
    case Scheme::SCJQ: return "scj-q";
    case Scheme::None: return "none";
  }
  return "?";
}

std::string to_string(Scenario s) {
  return s == Scenario::Simplified ? "simplified" : "general";
}

Scheme parse_scheme(const std::string& s) {
  if (s == "scj") return Scheme::SCJ;
  if (s == "pj") return Scheme::PJ;
  if (s == "scj-q" || s == "scjq") return Scheme::SCJQ;
  if (s == "none") return Scheme::None;
  throw InvalidParams("scheme", "unknown scheme '" + s + "'");
}

Scenario parse_scenario(const std::string& s) {
  if (s == "simplified") return Scenario::Simplified;
  if (s == "general") return Scenario::General;
  throw InvalidParams("scenario", "unknown scenario '" + s + "'");
}

namespace {

void require(bool ok, const char* key, const char* why) {
  if (!ok) throw InvalidParams(key, why);
}

void unit_interval(double v, const char* key) {
  require(std::isfinite(v) && v >= 0.0 && v <= 1.0, key, "must lie in [0,1]");
}

void non_negative(double v, const char* key) {
  require(std::isfinite(v) && v >= 0.0, key, "must be a finite value >= 0");
}

void positive(double v, const char* key) {
  require(std::isfinite(v) && v > 0.0, key, "must be a finite value > 0");
}

void beam(double v, const char* key) {
  require(std::isfinite(v) && v > 0.0 && v <= 2 * std::numbers::pi, key,
          "beam width must lie in (0, 2pi]");
}

}  // namespace

void SystemParams::validate() const {
  non_negative(lambda_T, "lambda_T");
  non_negative(lambda_P, "lambda_P");
  non_negative(lambda_E, "lambda_E");
  unit_interval(rho, "rho");
  unit_interval(varrho, "varrho");
  unit_interval(p_L, "p_L");
  unit_interval(beta, "beta");
  positive(r0, "r0");
  positive(D, "D");
  require(r0 <= D, "r0", "pair distance must not exceed D");
  positive(alpha_L, "alpha_L");
  positive(alpha_N, "alpha_N");
  // The out-of-ball interference integral diverges unless alpha_N > 2.
  require(alpha_N > 2.0, "alpha_N", "must exceed 2");
  require(N_L >= 1 && N_L <= 20, "N_L", "must be an integer in [1,20]");
  require(N_N >= 1 && N_N <= 20, "N_N", "must be an integer in [1,20]");
  positive(P, "P");
  non_negative(sigma2, "sigma2");
  beam(theta_T, "theta_T");
  beam(theta_R, "theta_R");
  beam(theta_E, "theta_E");
  positive(g_T, "g_T");
  positive(g_R, "g_R");
  positive(g_E, "g_E");
  require(std::isfinite(G_T) && G_T > g_T, "G_T", "main lobe must exceed back lobe");
  require(std::isfinite(G_R) && G_R > g_R, "G_R", "main lobe must exceed back lobe");
  require(std::isfinite(G_E) && G_E > g_E, "G_E", "main lobe must exceed back lobe");
  non_negative(R_e, "R_e");
  require(std::isfinite(R_t) && R_t > R_e, "R_t", "must exceed R_e");
}

bool same_structure(const SystemParams& a, const SystemParams& b) {
  return a.r0 == b.r0 && a.D == b.D && a.p_L == b.p_L && a.alpha_L == b.alpha_L &&
         a.alpha_N == b.alpha_N && a.N_L == b.N_L && a.N_N == b.N_N &&
         a.sigma2 / a.P == b.sigma2 / b.P && a.theta_T == b.theta_T &&
         a.theta_R == b.theta_R && a.theta_E == b.theta_E && a.G_T == b.G_T &&
         a.g_T == b.g_T && a.G_R == b.G_R && a.g_R == b.g_R && a.G_E == b.G_E &&
         a.g_E == b.g_E && a.R_t == b.R_t && a.R_e == b.R_e;
}

double sinr_threshold_connection(const SystemParams& p) { return std::exp2(p.R_t) - 1.0; }
double sinr_threshold_secrecy(const SystemParams& p) { return std::exp2(p.R_e) - 1.0; }

double alzer_tau(int N) {
  return N * std::exp(-std::lgamma(N + 1.0) / N);
}

}  // namespace scj
