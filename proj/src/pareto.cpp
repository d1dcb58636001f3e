#include "heavytail/pareto.hpp"

#include "heavytail/error.hpp"
#include "heavytail/numfmt.hpp"

#include <cmath>
#include <string>

namespace heavytail {

ParetoParams::ParetoParams(double alpha, double sigma_min) : alpha_(alpha), sigma_min_(sigma_min) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InvalidArgument("pareto: alpha = " + format_double(alpha) + " must be positive");
  }
  if (!(sigma_min > 0.0) || !std::isfinite(sigma_min)) {
    throw InvalidArgument("pareto: sigma_min = " + format_double(sigma_min) + " must be positive");
  }
}

double pareto_cdf(const ParetoParams& p, double x) {
  if (!(x > p.sigma_min())) return 0.0;
  // 1 - r^a = -expm1(a log r) keeps precision near the support minimum.
  return -std::expm1(p.alpha() * std::log(p.sigma_min() / x));
}

double pareto_exceedance(const ParetoParams& p, double x) {
  if (!(x > p.sigma_min())) return 1.0;
  return std::pow(p.sigma_min() / x, p.alpha());
}

double pareto_quantile(const ParetoParams& p, double q) {
  if (!(q >= 0.0 && q < 1.0)) {
    throw InvalidArgument("pareto_quantile: q = " + format_double(q) + " is outside [0, 1)");
  }
  return p.sigma_min() * std::exp(-std::log1p(-q) / p.alpha());
}

ParetoParams fit_pareto(std::span<const double> data, double threshold) {
  if (!(threshold > 0.0) || !std::isfinite(threshold)) {
    throw InvalidArgument("fit_pareto: threshold must be positive");
  }
  std::size_t k = 0;
  double log_sum = 0.0;
  for (double x : data) {
    if (!(x > threshold)) continue;
    const double l = std::log(x / threshold);
    if (!(l > 0.0)) {
      throw FitError("fit_pareto: exceedance " + format_double(x) +
                     " is not distinguishable from the threshold");
    }
    log_sum += l;
    ++k;
  }
  if (k < kMinParetoExceedances) {
    throw FitError("fit_pareto: only " + std::to_string(k) + " observations exceed the threshold " +
                   format_double(threshold) + "; at least " +
                   std::to_string(kMinParetoExceedances) + " are required");
  }
  return ParetoParams(static_cast<double>(k) / log_sum, threshold);
}

} // namespace heavytail
