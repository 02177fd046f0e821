#pragma once

#include <functional>

#include "rwrc/tail_law.hpp"

namespace rwrc {

/// log of the integral of exp(h) over (lo, hi) for a unimodal log-integrand h.
///
/// The mode is bracketed outward from `hint` and located by Brent's method;
/// the integral of exp(h - h_max) is then taken by adaptive Gauss-Kronrod on
/// the window where h stays within `log_drop` of its maximum, so results are
/// finite even when the integral itself under- or overflows. Infinite limits
/// are allowed.
double log_integrate(const std::function<double(double)>& h, double lo, double hi, double hint,
                     double rel_tol = 1e-10, double log_drop = 80.0);

/// log <exp(-s w)> for w drawn from `law` (log Laplace-Stieltjes transform), s >= 0.
double log_laplace_transform(const TailLaw<double>& law, double s);

/// log P(w1 + w2 <= eps) for two independent draws from `law`.
double log_sum_cdf(const TailLaw<double>& law, double eps);

}  // namespace rwrc
