#include "rwrc/quadrature.hpp"

#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>

#include "rwrc/errors.hpp"

namespace rwrc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Moves `x` by `step` but never onto or past `limit`.
double step_toward(double x, double step, double limit) {
  const double y = x + step;
  if (std::isfinite(limit)) {
    if ((step < 0 && y <= limit) || (step > 0 && y >= limit)) return x + 0.5 * (limit - x);
  }
  return y;
}

double safe_eval(const std::function<double(double)>& h, double x) {
  const double v = h(x);
  return std::isnan(v) ? -kInf : v;
}

}  // namespace

double log_integrate(const std::function<double(double)>& h, double lo, double hi, double hint,
                     double rel_tol, double log_drop) {
  if (!(lo < hi) || !(hint > lo && hint < hi)) {
    throw Error(ErrorCode::ArgumentOutOfRange, "log_integrate needs lo < hint < hi");
  }
  const double h0 = safe_eval(h, hint);
  if (!std::isfinite(h0)) {
    throw Error(ErrorCode::ArgumentOutOfRange, "log-integrand is not finite at the hint point");
  }

  // Bracket the mode: expand each side until the value drops below h(hint).
  const double unit = std::isfinite(hi - lo) ? 1e-3 * (hi - lo) : 1e-3 * std::max(1.0, std::abs(hint));
  double a = hint;
  double step = unit;
  for (int i = 0; i < 200; ++i) {
    const double next = step_toward(a, -step, lo);
    if (next == a) break;
    a = next;
    if (safe_eval(h, a) < h0) break;
    step *= 2;
  }
  double b = hint;
  step = unit;
  for (int i = 0; i < 200; ++i) {
    const double next = step_toward(b, step, hi);
    if (next == b) break;
    b = next;
    if (safe_eval(h, b) < h0) break;
    step *= 2;
  }

  auto neg = [&](double x) { return -safe_eval(h, x); };
  const auto [mode, neg_max] = boost::math::tools::brent_find_minima(neg, a, b, 52);
  double hmax = -neg_max;
  if (h0 > hmax) {
    hmax = h0;
  }
  if (!std::isfinite(hmax)) {
    throw Error(ErrorCode::NonConvergence, "log-integrand has no finite maximum");
  }
  const double peak = (h0 > -neg_max) ? hint : mode;

  // Window where exp(h - hmax) is not negligible.
  auto find_cut = [&](double direction, double limit) {
    double x = peak;
    double s = 1e-6 * (b - a);
    for (int i = 0; i < 2000; ++i) {
      const double next = step_toward(x, direction * s, limit);
      if (next == x) return x;
      x = next;
      if (safe_eval(h, x) < hmax - log_drop) return x;
      s *= 1.5;
    }
    return x;
  };
  const double left = find_cut(-1.0, lo);
  const double right = find_cut(+1.0, hi);

  auto integrand = [&](double x) {
    const double v = safe_eval(h, x) - hmax;
    return v < -745.0 ? 0.0 : std::exp(v);
  };
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  double total = 0;
  if (left < peak) total += GK::integrate(integrand, left, peak, 20, rel_tol);
  if (peak < right) total += GK::integrate(integrand, peak, right, 20, rel_tol);
  if (!(total > 0)) {
    throw Error(ErrorCode::NonConvergence, "quadrature returned a non-positive mass");
  }
  return hmax + std::log(total);
}

double log_laplace_transform(const TailLaw<double>& law, double s) {
  if (s < 0) throw Error(ErrorCode::ArgumentOutOfRange, "Laplace argument must be nonnegative");
  if (s == 0) return 0.0;
  const double eta = law.eta();
  const double dcoef = law.dcoef();
  // Substitute w = e^u: density f(w) dw = f(e^u) e^u du.
  auto h = [=](double u) {
    const double w = std::exp(u);
    return std::log(dcoef * eta) - eta * u - dcoef * std::exp(-eta * u) - s * w;
  };
  // Stationary point of -s w - D w^{-eta} in w.
  const double hint = std::log(std::pow(dcoef * eta / s, 1.0 / (eta + 1.0)));
  return log_integrate(h, -kInf, kInf, hint);
}

double log_sum_cdf(const TailLaw<double>& law, double eps) {
  if (!(eps > 0)) throw Error(ErrorCode::NonPositiveArgument, "eps must be positive");
  // P(w1 + w2 <= eps) = int_0^eps F(eps - x) f(x) dx
  auto h = [&](double x) {
    if (!(x > 0) || !(x < eps)) return -kInf;
    return law.log_cdf(eps - x) + law.log_density(x);
  };
  return log_integrate(h, 0.0, eps, 0.5 * eps);
}

}  // namespace rwrc
