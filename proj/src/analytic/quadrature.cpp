#include "scj/analytic/quadrature.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>

namespace scj {

namespace {

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a, b, value, error;
  int depth;
  bool operator<(const Piece& o) const { return error < o.error; }
};

Piece gk15(const Integrand& f, double a, double b, int depth) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  double fv1[7], fv2[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double f1 = f(c - dx), f2 = f(c + dx);
    fv1[j] = f1;
    fv2[j] = f2;
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
  const double ah = std::abs(h);
  resk *= h;
  resabs *= ah;
  resasc *= ah;
  double err = std::abs((resk - resg * h));
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  if (!std::isfinite(resk)) throw QuadratureError("non-finite integrand value", resk, err);
  return {a, b, resk, err, depth};
}

}  // namespace

QuadResult integrate(const Integrand& f, double a, double b, const QuadratureConfig& cfg) {
  if (a == b) return {};
  if (a > b) {
    auto r = integrate(f, b, a, cfg);
    return {-r.value, r.error};
  }
  std::priority_queue<Piece> heap;
  heap.push(gk15(f, a, b, 0));
  double total = heap.top().value, err = heap.top().error;
  double frozen_value = 0.0, frozen_error = 0.0;
  int intervals = 1;
  for (;;) {
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
    if (err <= tol) break;
    if (heap.empty()) {
      throw QuadratureError("adaptive quadrature did not converge on [" + std::to_string(a) + ", " +
                                std::to_string(b) + "]",
                            total, err);
    }
    Piece worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const bool too_small = !(mid > worst.a && mid < worst.b);
    if (worst.depth >= cfg.max_depth || too_small || intervals >= cfg.max_intervals) {
      frozen_value += worst.value;
      frozen_error += worst.error;
      // Once nothing can be refined the remaining error is what it is.
      if (heap.empty() && frozen_error > tol) {
        throw QuadratureError("adaptive quadrature hit its depth or interval limit", total, err);
      }
      continue;
    }
    const Piece l = gk15(f, worst.a, mid, worst.depth + 1);
    const Piece r = gk15(f, mid, worst.b, worst.depth + 1);
    ++intervals;
    total += l.value + r.value - worst.value;
    err += l.error + r.error - worst.error;
    heap.push(l);
    heap.push(r);
  }
  // Re-sum from the pieces to drop accumulated update rounding.
  double v = frozen_value, e = frozen_error;
  while (!heap.empty()) {
    v += heap.top().value;
    e += heap.top().error;
    heap.pop();
  }
  return {v, e};
}

QuadResult integrate_to_infinity(const Integrand& f, double a, const QuadratureConfig& cfg) {
  auto g = [&](double t) {
    const double r = a / t;
    return f(r) * a / (t * t);
  };
  return integrate(g, 0.0, 1.0, cfg);
}

QuadResult integrate_cos_mapped(const Integrand& f, double a, double b, const QuadratureConfig& cfg) {
  if (a == b) return {};
  const double h = 0.5 * (b - a);
  auto g = [&](double th) {
    const double r = a + h * (1.0 - std::cos(th));
    return f(r) * h * std::sin(th);
  };
  return integrate(g, 0.0, std::numbers::pi, cfg);
}

QuadResult integrate_pieces(const Integrand& f, const std::vector<double>& breaks,
                            const QuadratureConfig& cfg) {
  QuadResult out;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] <= breaks[i]) continue;
    const auto r = integrate(f, breaks[i], breaks[i + 1], cfg);
    out.value += r.value;
    out.error += r.error;
  }
  return out;
}

const GaussRule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  GaussRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.x[i] = -x;
    rule.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

void append_gauss(double a, double b, int n, std::vector<double>& x, std::vector<double>& w) {
  if (b <= a) return;
  const auto& rule = gauss_legendre(n);
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    x.push_back(c + h * rule.x[i]);
    w.push_back(h * rule.w[i]);
  }
}

}  // namespace scj
