#include "heavytail/cli.hpp"

#include "heavytail/error.hpp"
#include "heavytail/hurst.hpp"
#include "heavytail/ingest.hpp"
#include "heavytail/numfmt.hpp"
#include "heavytail/pareto.hpp"
#include "heavytail/report_io.hpp"
#include "heavytail/risk.hpp"
#include "heavytail/stable.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace heavytail::cli {
namespace {

// A flag value that violates the preconditions of the operation it feeds.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Runs a parameter constructor and reports its InvalidArgument as a usage
// error, so bad flags are rejected before any computation starts.
template <class F>
auto validated(F&& make) {
  try {
    return make();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
}

std::string one_line(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  std::replace(text.begin(), text.end(), '\r', ' ');
  return text;
}

// Purely numeric selectors pick a zero-based column; anything else is a
// header name.
ColumnSelector column_selector(const std::optional<std::string>& column) {
  if (!column) return std::size_t{0};
  const auto& c = *column;
  if (!c.empty() && std::all_of(c.begin(), c.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
    return static_cast<std::size_t>(std::stoull(c));
  }
  return c;
}

struct StableFlags {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double loc = 0.0;

  void add_to(CLI::App* app) {
    app->add_option("--alpha", alpha, "Characteristic exponent in (0, 2]")->required();
    app->add_option("--beta", beta, "Skewness in [-1, 1]")->required();
    app->add_option("--gamma", gamma, "Dispersion (> 0)")->required();
    app->add_option("--loc", loc, "Location")->required();
  }

  StableParams params() const {
    return validated([&] { return StableParams(alpha, beta, gamma, loc); });
  }
};

struct SeriesFlags {
  std::string input;
  std::optional<std::string> column;
  std::string preprocess = "none";

  void add_to(CLI::App* app) {
    app->add_option("--input", input, "CSV file holding the series")->required();
    app->add_option("--column", column, "Column header name or zero-based index");
    app->add_option("--preprocess", preprocess, "none | diff | log-diff")
        ->check(CLI::IsMember({"none", "diff", "log-diff"}));
  }

  TimeSeries load() const {
    return heavytail::preprocess(load_series(input, column_selector(column)),
                                 parse_preprocess(preprocess));
  }
};

struct WindowFlags {
  std::size_t min_window = kMinWindow;
  std::optional<std::size_t> max_window;

  void add_to(CLI::App* app) {
    app->add_option("--min-window", min_window, "Smallest R/S window (>= 8)");
    app->add_option("--max-window", max_window, "Largest R/S window (default N/2)");
  }

  void check() const {
    if (min_window < kMinWindow) {
      throw UsageError("--min-window must be at least " + std::to_string(kMinWindow));
    }
    if (max_window && *max_window < min_window) {
      throw UsageError("--max-window must not be below --min-window");
    }
  }
};

void require_finite(double v, const char* flag) {
  if (!std::isfinite(v)) throw UsageError(std::string(flag) + " must be finite");
}

// Each subcommand fills `result` with the complete output text.
using Action = std::function<void(std::string& result)>;

void write_result(const std::string& text, const std::optional<std::string>& output,
                  std::ostream& out) {
  if (!output) {
    out << text;
    out.flush();
    if (!out) throw Error("failed to write the result to standard output");
    return;
  }
  std::ofstream file(*output, std::ios::binary);
  if (!file) throw DataError("cannot open output file '" + *output + "'");
  file << text;
  file.close();
  if (!file) throw DataError("failed to write output file '" + *output + "'");
}

std::string scalar_line(double v) { return format_double(v) + "\n"; }

std::string samples_csv(const std::vector<double>& values) {
  std::string text = "value\n";
  for (double v : values) text += format_double(v) + "\n";
  return text;
}

} // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heavy-tail risk analysis: Hurst exponents, stable laws, Pareto tails", "heavytail"};
  app.require_subcommand(1, 1);
  std::optional<std::string> output;
  Action action;

  // hurst
  SeriesFlags hurst_series;
  WindowFlags hurst_windows;
  auto* hurst = app.add_subcommand("hurst", "Estimate the Hurst exponent by rescaled range");
  hurst_series.add_to(hurst);
  hurst_windows.add_to(hurst);
  hurst->add_option("--output", output, "Write the result here instead of stdout");
  hurst->callback([&] {
    action = [&](std::string& result) {
      hurst_windows.check();
      const auto series = hurst_series.load();
      result = to_json(estimate_hurst(series, hurst_windows.min_window, hurst_windows.max_window));
    };
  });

  // gen-fgn
  double fgn_h = 0.0;
  std::size_t fgn_n = 0;
  std::uint64_t fgn_seed = 0;
  auto* gen_fgn = app.add_subcommand("gen-fgn", "Generate fractional Gaussian noise");
  gen_fgn->set_help_flag("--help", "Print this help message and exit");  // -h would clash with --h
  gen_fgn->add_option("--h", fgn_h, "Hurst exponent in (0, 1)")->required();
  gen_fgn->add_option("--n", fgn_n, "Number of samples")->required();
  gen_fgn->add_option("--seed", fgn_seed, "Random seed (default 0)");
  gen_fgn->add_option("--output", output, "Write the CSV here instead of stdout");
  gen_fgn->callback([&] {
    action = [&](std::string& result) {
      if (!(fgn_h > 0.0 && fgn_h < 1.0)) throw UsageError("--h must lie in (0, 1)");
      if (fgn_n < 2) throw UsageError("--n must be at least 2");
      auto series = generate_fgn(fgn_h, fgn_n, fgn_seed);
      result = format_series_csv(TimeSeries(series.values(), "value"));
    };
  });

  // stable-pdf / stable-cdf
  StableFlags pdf_flags;
  double pdf_x = 0.0;
  auto* stable_pdf = app.add_subcommand("stable-pdf", "Stable density at one point");
  pdf_flags.add_to(stable_pdf);
  stable_pdf->add_option("--x", pdf_x, "Evaluation point")->required();
  stable_pdf->add_option("--output", output, "Write the result here instead of stdout");
  stable_pdf->callback([&] {
    action = [&](std::string& result) {
      const auto p = pdf_flags.params();
      require_finite(pdf_x, "--x");
      result = scalar_line(pdf(p, pdf_x));
    };
  });

  StableFlags cdf_flags;
  double cdf_x = 0.0;
  auto* stable_cdf = app.add_subcommand("stable-cdf", "Stable distribution function at one point");
  cdf_flags.add_to(stable_cdf);
  stable_cdf->add_option("--x", cdf_x, "Evaluation point")->required();
  stable_cdf->add_option("--output", output, "Write the result here instead of stdout");
  stable_cdf->callback([&] {
    action = [&](std::string& result) {
      const auto p = cdf_flags.params();
      require_finite(cdf_x, "--x");
      result = scalar_line(cdf(p, cdf_x));
    };
  });

  // stable-sample
  StableFlags sample_flags;
  std::size_t sample_n = 0;
  std::uint64_t sample_seed = 0;
  auto* stable_sample = app.add_subcommand("stable-sample", "Draw stable variates");
  sample_flags.add_to(stable_sample);
  stable_sample->add_option("--n", sample_n, "Number of draws")->required();
  stable_sample->add_option("--seed", sample_seed, "Random seed (default 0)");
  stable_sample->add_option("--output", output, "Write the CSV here instead of stdout");
  stable_sample->callback([&] {
    action = [&](std::string& result) {
      const auto p = sample_flags.params();
      if (sample_n < 1) throw UsageError("--n must be at least 1");
      result = samples_csv(sample(p, sample_n, sample_seed));
    };
  });

  // fit-pareto
  SeriesFlags pareto_series;
  double pareto_threshold = 0.0;
  auto* fit_pareto_cmd = app.add_subcommand("fit-pareto", "Hill estimate of a Pareto tail");
  pareto_series.add_to(fit_pareto_cmd);
  fit_pareto_cmd->add_option("--threshold", pareto_threshold, "Tail threshold (> 0)")->required();
  fit_pareto_cmd->add_option("--output", output, "Write the result here instead of stdout");
  fit_pareto_cmd->callback([&] {
    action = [&](std::string& result) {
      if (!(pareto_threshold > 0.0 && std::isfinite(pareto_threshold))) {
        throw UsageError("--threshold must be positive and finite");
      }
      const auto series = pareto_series.load();
      result = to_json(fit_pareto(series.values(), pareto_threshold));
    };
  });

  // exceedance
  SeriesFlags exc_series;
  WindowFlags exc_windows;
  double exc_threshold = 0.0;
  std::vector<std::string> exc_models{"gaussian", "stable"};
  std::optional<double> exc_pareto_threshold;
  auto* exceedance = app.add_subcommand("exceedance", "Compare tail exceedance probabilities");
  exc_series.add_to(exceedance);
  exc_windows.add_to(exceedance);
  exceedance->add_option("--threshold", exc_threshold, "Level whose exceedance is assessed")
      ->required();
  exceedance->add_option("--models", exc_models, "Comma list of gaussian, stable, pareto")
      ->delimiter(',')
      ->check(CLI::IsMember({"gaussian", "stable", "pareto"}));
  exceedance->add_option("--pareto-threshold", exc_pareto_threshold,
                         "Tail threshold for the Pareto fit");
  exceedance->add_option("--output", output, "Write the report here instead of stdout");
  exceedance->callback([&] {
    action = [&](std::string& result) {
      require_finite(exc_threshold, "--threshold");
      exc_windows.check();
      const auto has = [&](const char* m) {
        return std::find(exc_models.begin(), exc_models.end(), m) != exc_models.end();
      };
      AnalysisOptions options;
      options.include_stable = has("stable");
      options.include_pareto = has("pareto");
      options.min_window = exc_windows.min_window;
      options.max_window = exc_windows.max_window;
      if (options.include_pareto) {
        if (!exc_pareto_threshold) {
          throw UsageError("--models pareto requires --pareto-threshold");
        }
        if (!(*exc_pareto_threshold > 0.0 && std::isfinite(*exc_pareto_threshold))) {
          throw UsageError("--pareto-threshold must be positive and finite");
        }
        if (exc_threshold < *exc_pareto_threshold) {
          throw UsageError("--threshold must not be below --pareto-threshold");
        }
        options.pareto_threshold = exc_pareto_threshold;
      }
      const auto series = exc_series.load();
      const double thresholds[] = {exc_threshold};
      result = to_json(analyze(series, thresholds, options));
    };
  });

  // plot-tails
  StableFlags plot_flags;
  double plot_mean = 0.0;
  double plot_sd = 0.0;
  double plot_from = 0.0;
  double plot_to = 0.0;
  std::size_t plot_points = 0;
  auto* plot_tails = app.add_subcommand("plot-tails", "Gaussian vs stable density grid");
  plot_flags.add_to(plot_tails);
  plot_tails->add_option("--mean", plot_mean, "Gaussian mean")->required();
  plot_tails->add_option("--sd", plot_sd, "Gaussian standard deviation (> 0)")->required();
  plot_tails->add_option("--from", plot_from, "First grid point")->required();
  plot_tails->add_option("--to", plot_to, "Last grid point")->required();
  plot_tails->add_option("--points", plot_points, "Number of grid points (>= 2)")->required();
  plot_tails->add_option("--output", output, "Write the CSV here instead of stdout");
  plot_tails->callback([&] {
    action = [&](std::string& result) {
      const auto p = plot_flags.params();
      require_finite(plot_mean, "--mean");
      if (!(plot_sd > 0.0 && std::isfinite(plot_sd))) {
        throw UsageError("--sd must be positive and finite");
      }
      require_finite(plot_from, "--from");
      require_finite(plot_to, "--to");
      if (!(plot_from < plot_to)) throw UsageError("--from must be below --to");
      if (plot_points < 2) throw UsageError("--points must be at least 2");
      result = plot_grid_csv(emit_plot_grid(p, plot_mean, plot_sd, plot_from, plot_to, plot_points));
    };
  });

  // CLI11 consumes arguments from the back of the vector.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "heavytail: usage error: " << one_line(e.what()) << "\n";
    return kExitUsage;
  }

  try {
    std::string result;
    action(result);
    write_result(result, output, out);
    return kExitOk;
  } catch (const UsageError& e) {
    err << "heavytail: usage error: " << one_line(e.what()) << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "heavytail: error: " << one_line(e.what()) << "\n";
    return kExitComputation;
  }
}

} // namespace heavytail::cli
