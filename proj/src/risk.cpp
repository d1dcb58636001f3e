#include "heavytail/risk.hpp"

#include "heavytail/error.hpp"
#include "heavytail/numfmt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace heavytail {

double gaussian_exceedance(double mean, double sd, double x) {
  if (!(sd > 0.0)) throw InvalidArgument("gaussian_exceedance: sd must be positive");
  return 0.5 * std::erfc((x - mean) / (sd * std::numbers::sqrt2));
}

double gaussian_pdf(double mean, double sd, double x) {
  if (!(sd > 0.0)) throw InvalidArgument("gaussian_pdf: sd must be positive");
  const double z = (x - mean) / sd;
  return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi));
}

double return_period(double prob_per_period) {
  if (!(prob_per_period > 0.0 && prob_per_period <= 1.0)) {
    throw InvalidArgument("return_period: probability " + format_double(prob_per_period) +
                          " is outside (0, 1]");
  }
  return 1.0 / prob_per_period;
}

double sample_quantile(std::span<const double> data, double q) {
  if (data.empty()) throw InvalidArgument("sample_quantile: empty data");
  if (!(q >= 0.0 && q <= 1.0)) throw InvalidArgument("sample_quantile: q outside [0, 1]");
  std::vector<double> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  const double h = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

StableParams calibrate_symmetric_stable(double alpha, double loc, double iqr) {
  if (!(iqr > 0.0)) {
    throw FitError("cannot calibrate a stable scale to a zero interquartile range");
  }
  const StableParams unit(alpha, 0.0, 1.0, 0.0);
  const double unit_iqr = 2.0 * quantile(unit, 0.75);
  const double scale = iqr / unit_iqr;
  return StableParams(alpha, 0.0, std::pow(scale, alpha), loc);
}

FittedModels fit_models(const TimeSeries& series, const AnalysisOptions& options) {
  const auto& x = series.values();
  const auto n = static_cast<double>(x.size());

  FittedModels m;
  m.label = series.label();
  m.n_observations = x.size();
  for (double v : x) m.mean += v;
  m.mean /= n;
  double ss = 0.0;
  for (double v : x) ss += (v - m.mean) * (v - m.mean);
  m.sd = std::sqrt(ss / (n - 1.0));
  if (!(m.sd > 0.0)) throw FitError("series has zero standard deviation");

  if (options.include_stable) {
    m.hurst = estimate_hurst(series, options.min_window, options.max_window);
    const double iqr = sample_quantile(x, 0.75) - sample_quantile(x, 0.25);
    m.stable = calibrate_symmetric_stable(m.hurst->alpha_implied, m.mean, iqr);
  }

  if (options.include_pareto) {
    if (!options.pareto_threshold) {
      throw InvalidArgument("the Pareto model needs an explicit threshold");
    }
    m.pareto = fit_pareto(x, *options.pareto_threshold);
    const auto above = std::count_if(x.begin(), x.end(),
                                     [&](double v) { return v > *options.pareto_threshold; });
    m.pareto_rate = static_cast<double>(above) / n;
  }
  return m;
}

namespace {
std::optional<double> period_or_absent(double prob) {
  if (prob > 0.0) return return_period(prob);
  return std::nullopt;
}
} // namespace

ExceedanceResult evaluate_exceedance(const FittedModels& models, double threshold) {
  if (!std::isfinite(threshold)) throw InvalidArgument("threshold must be finite");
  ExceedanceResult r;
  r.threshold = threshold;
  r.prob_gaussian = gaussian_exceedance(models.mean, models.sd, threshold);
  r.return_period_gaussian = period_or_absent(r.prob_gaussian);
  if (models.stable) {
    r.prob_stable = survival(*models.stable, threshold);
    r.return_period_stable = period_or_absent(*r.prob_stable);
  }
  if (models.pareto) {
    if (threshold < models.pareto->sigma_min()) {
      throw InvalidArgument("threshold " + format_double(threshold) +
                            " is below the Pareto threshold " +
                            format_double(models.pareto->sigma_min()));
    }
    r.prob_pareto = *models.pareto_rate * pareto_exceedance(*models.pareto, threshold);
    r.return_period_pareto = period_or_absent(*r.prob_pareto);
  }
  return r;
}

ExceedanceResult compare_models(const TimeSeries& series, double threshold,
                                const AnalysisOptions& options) {
  return evaluate_exceedance(fit_models(series, options), threshold);
}

std::vector<PlotPoint> emit_plot_grid(const StableParams& stable, double mean, double sd,
                                      double x_min, double x_max, std::size_t n_points) {
  if (!(x_min < x_max)) throw InvalidArgument("plot grid: x_min must be below x_max");
  if (n_points < 2) throw InvalidArgument("plot grid: at least 2 points are required");
  if (!(sd > 0.0)) throw InvalidArgument("plot grid: sd must be positive");
  std::vector<PlotPoint> grid(n_points);
  const double step = (x_max - x_min) / static_cast<double>(n_points - 1);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double x = i + 1 == n_points ? x_max : x_min + step * static_cast<double>(i);
    grid[i] = {x, gaussian_pdf(mean, sd, x), pdf(stable, x)};
  }
  return grid;
}

RiskReport analyze(const TimeSeries& series, std::span<const double> thresholds,
                   const AnalysisOptions& options, const std::optional<PlotSpec>& plot) {
  if (thresholds.empty()) throw InvalidArgument("analyze: at least one threshold is required");
  const auto models = fit_models(series, options);

  RiskReport report;
  report.series_label = models.label;
  report.n_observations = models.n_observations;
  report.hurst = models.hurst;
  report.stable_params = models.stable;
  report.pareto_params = models.pareto;
  report.pareto_exceedance_rate = models.pareto_rate;
  report.gaussian_mean = models.mean;
  report.gaussian_sd = models.sd;
  for (double t : thresholds) report.results.push_back(evaluate_exceedance(models, t));
  if (plot && models.stable) {
    report.plot_grid =
        emit_plot_grid(*models.stable, models.mean, models.sd, plot->x_min, plot->x_max,
                       plot->n_points);
  }
  return report;
}

} // namespace heavytail
