#pragma once

#include <cmath>
#include <vector>

#include "rwrc/errors.hpp"
#include "rwrc/random.hpp"

namespace rwrc {

/// Conductance marginal with CDF exp(-D eps^{-eta}), i.e. a Frechet law whose
/// lower tail satisfies log P(w <= eps) = -D eps^{-eta} exactly.
template <typename Scalar = double>
class TailLaw {
 public:
  TailLaw(Scalar eta, Scalar dcoef) : eta_(eta), dcoef_(dcoef) {
    if (!(eta > 0) || !(dcoef > 0) || !std::isfinite(eta) || !std::isfinite(dcoef)) {
      throw Error(ErrorCode::NonPositiveArgument, "tail law needs eta > 0 and D > 0");
    }
  }

  Scalar eta() const { return eta_; }
  Scalar dcoef() const { return dcoef_; }

  Scalar log_cdf(Scalar eps) const {
    require_positive(eps);
    return -dcoef_ * std::pow(eps, -eta_);
  }

  Scalar cdf(Scalar eps) const { return std::exp(log_cdf(eps)); }

  Scalar quantile(Scalar u) const {
    if (!(u > 0 && u < 1)) throw Error(ErrorCode::ArgumentOutOfRange, "quantile needs 0 < u < 1");
    return std::pow(dcoef_ / -std::log(u), Scalar(1) / eta_);
  }

  Scalar median() const { return std::pow(dcoef_ / std::log(Scalar(2)), Scalar(1) / eta_); }

  Scalar log_density(Scalar x) const {
    require_positive(x);
    return std::log(dcoef_ * eta_) - (eta_ + 1) * std::log(x) - dcoef_ * std::pow(x, -eta_);
  }

  Scalar density(Scalar x) const { return std::exp(log_density(x)); }

  Scalar sample(Rng& rng) const { return quantile(static_cast<Scalar>(uniform_open(rng))); }

  std::vector<Scalar> sample(Rng& rng, std::size_t n) const {
    std::vector<Scalar> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(sample(rng));
    return out;
  }

  bool operator==(const TailLaw&) const = default;

 private:
  static void require_positive(Scalar x) {
    if (!(x > 0)) throw Error(ErrorCode::NonPositiveArgument, "argument must be positive");
  }

  Scalar eta_;
  Scalar dcoef_;
};

}  // namespace rwrc
