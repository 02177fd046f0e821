#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "rwrc/domain.hpp"

namespace rwrc::test {

inline Domain single_site(int d = 1) { return Domain::box(d, 0); }
inline Domain pair_domain() { return Domain::from_points({{0}, {1}}, 1); }
inline Domain triple_domain() { return Domain::from_points({{0}, {1}, {2}}, 1); }

struct Moments {
  double mean = 0;
  double se = 0;
};

inline Moments moments(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  double s = 0;
  for (double x : xs) s += x;
  const double mean = s / n;
  double v = 0;
  for (double x : xs) v += (x - mean) * (x - mean);
  return {mean, std::sqrt(v / (n - 1) / n)};
}

/// One-sample Kolmogorov-Smirnov statistic sup |F_n - F|.
inline double ks_statistic(std::vector<double> xs, const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

/// Asymptotic 1% critical value of the KS statistic.
inline double ks_critical_1pct(std::size_t n) { return 1.6276 / std::sqrt(static_cast<double>(n)); }

/// Golden-section minimisation of a unimodal function on [a, b].
inline double golden_min(const std::function<double(double)>& f, double a, double b, int iters = 200) {
  const double r = (std::sqrt(5.0) - 1) / 2;
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  for (int i = 0; i < iters; ++i) {
    if (f(c) < f(d)) {
      b = d;
    } else {
      a = c;
    }
    c = b - r * (b - a);
    d = a + r * (b - a);
  }
  return f((a + b) / 2);
}

/// Composite Simpson rule, used as an independent check of the adaptive quadrature.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4 : 2);
  return s * h / 3;
}

}  // namespace rwrc::test
