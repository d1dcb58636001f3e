#pragma once

#include <cstddef>
#include <span>

namespace heavytail {

// Pareto law with CDF 1 - (sigma_min / x)^alpha on x >= sigma_min.
class ParetoParams {
public:
  // Throws InvalidArgument unless both parameters are positive and finite.
  ParetoParams(double alpha, double sigma_min);

  double alpha() const noexcept { return alpha_; }
  double sigma_min() const noexcept { return sigma_min_; }

  bool operator==(const ParetoParams&) const = default;

private:
  double alpha_;
  double sigma_min_;
};

// 0 for x <= sigma_min.
double pareto_cdf(const ParetoParams& p, double x);
// 1 for x <= sigma_min.
double pareto_exceedance(const ParetoParams& p, double x);
// sigma_min * (1 - q)^(-1/alpha); q in [0, 1).
double pareto_quantile(const ParetoParams& p, double q);

inline constexpr std::size_t kMinParetoExceedances = 10;

// Hill / maximum-likelihood fit to the observations strictly above
// `threshold`: alpha = k / sum(log(x_i / threshold)), sigma_min = threshold.
ParetoParams fit_pareto(std::span<const double> data, double threshold);

} // namespace heavytail
