#include "rwrc/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "rwrc/quadrature.hpp"

namespace rwrc {

std::vector<EigenTailPoint> eigen_tail(const TailLaw<double>& law, const Domain& dom,
                                       std::span<const double> eps_list, TailMethod method, int trials,
                                       Rng& rng) {
  for (double eps : eps_list) {
    if (!(eps > 0)) throw Error(ErrorCode::NonPositiveArgument, "eps values must be positive");
  }
  std::vector<EigenTailPoint> out;
  auto finish = [&](EigenTailPoint& pt) {
    pt.scaled_log = std::pow(pt.eps, law.eta()) * pt.log_probability;
    out.push_back(pt);
  };

  if (method == TailMethod::Quadrature) {
    if (dom.size() != 1 || dom.dimension() != 1) {
      throw Error(ErrorCode::UnsupportedDomain, "quadrature tail needs a single site in d = 1");
    }
    for (double eps : eps_list) {
      EigenTailPoint pt;
      pt.eps = eps;
      pt.log_probability = log_sum_cdf(law, eps);
      pt.probability = std::exp(pt.log_probability);
      finish(pt);
    }
    return out;
  }

  if (trials < 1) throw Error(ErrorCode::ArgumentOutOfRange, "need at least one trial");
  std::vector<double> lambdas;
  lambdas.reserve(trials);
  for (int i = 0; i < trials; ++i) {
    lambdas.push_back(eigen(assemble(sample_field(law, dom, rng), dom)).principal());
  }
  std::sort(lambdas.begin(), lambdas.end());
  for (double eps : eps_list) {
    EigenTailPoint pt;
    pt.eps = eps;
    const auto hits = std::upper_bound(lambdas.begin(), lambdas.end(), eps) - lambdas.begin();
    pt.probability = static_cast<double>(hits) / trials;
    pt.standard_error = std::sqrt(pt.probability * (1 - pt.probability) / trials);
    pt.log_probability = std::log(pt.probability);
    finish(pt);
  }
  return out;
}

}  // namespace rwrc
