#pragma once

#include "heavytail/hurst.hpp"
#include "heavytail/ingest.hpp"
#include "heavytail/pareto.hpp"
#include "heavytail/stable.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace heavytail {

// Exceedance probabilities per period at one threshold. Each return period
// is 1 / its probability and is absent when the probability is zero (or the
// model was not requested).
struct ExceedanceResult {
  double threshold = 0.0;
  double prob_gaussian = 0.0;
  std::optional<double> prob_stable;
  std::optional<double> prob_pareto;
  std::optional<double> return_period_gaussian;
  std::optional<double> return_period_stable;
  std::optional<double> return_period_pareto;

  bool operator==(const ExceedanceResult&) const = default;
};

struct PlotPoint {
  double x = 0.0;
  double pdf_gaussian = 0.0;
  double pdf_stable = 0.0;

  bool operator==(const PlotPoint&) const = default;
};

struct RiskReport {
  std::string series_label;
  std::size_t n_observations = 0;
  std::optional<HurstEstimate> hurst;
  std::optional<StableParams> stable_params;
  std::optional<ParetoParams> pareto_params;
  // Fraction of observations above the Pareto threshold; scales the
  // conditional Pareto tail to a per-period probability.
  std::optional<double> pareto_exceedance_rate;
  double gaussian_mean = 0.0;
  double gaussian_sd = 0.0;
  std::vector<ExceedanceResult> results;
  std::optional<std::vector<PlotPoint>> plot_grid;

  bool operator==(const RiskReport&) const = default;
};

struct AnalysisOptions {
  bool include_stable = true;
  bool include_pareto = false;
  std::size_t min_window = kMinWindow;
  std::optional<std::size_t> max_window;
  // Required when include_pareto is set.
  std::optional<double> pareto_threshold;
};

// Everything compare_models fits before it looks at a threshold.
struct FittedModels {
  std::string label;
  std::size_t n_observations = 0;
  double mean = 0.0;
  double sd = 0.0;
  std::optional<HurstEstimate> hurst;
  std::optional<StableParams> stable;
  std::optional<ParetoParams> pareto;
  std::optional<double> pareto_rate;
};

// P(X > x) for Normal(mean, sd^2), via erfc.
double gaussian_exceedance(double mean, double sd, double x);
double gaussian_pdf(double mean, double sd, double x);

// 1 / prob for prob in (0, 1].
double return_period(double prob_per_period);

// Linear-interpolation sample quantile (Hyndman-Fan type 7).
double sample_quantile(std::span<const double> data, double q);

// Symmetric stable law with the given alpha and location whose
// interquartile range equals `iqr`.
StableParams calibrate_symmetric_stable(double alpha, double loc, double iqr);

FittedModels fit_models(const TimeSeries& series, const AnalysisOptions& options);
ExceedanceResult evaluate_exceedance(const FittedModels& models, double threshold);

// Fit the requested models and evaluate them at one threshold.
ExceedanceResult compare_models(const TimeSeries& series, double threshold,
                                const AnalysisOptions& options = {});

std::vector<PlotPoint> emit_plot_grid(const StableParams& stable, double mean, double sd,
                                      double x_min, double x_max, std::size_t n_points);

struct PlotSpec {
  double x_min = 0.0;
  double x_max = 0.0;
  std::size_t n_points = 0;
};

// Full report for several thresholds; the plot grid is filled when `plot`
// is given and a stable model was fitted.
RiskReport analyze(const TimeSeries& series, std::span<const double> thresholds,
                   const AnalysisOptions& options = {},
                   const std::optional<PlotSpec>& plot = std::nullopt);

} // namespace heavytail
