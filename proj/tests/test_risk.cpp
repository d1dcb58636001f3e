#include "heavytail/error.hpp"
#include "heavytail/random.hpp"
#include "heavytail/risk.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace heavytail;

namespace {
TimeSeries gaussian_series(std::uint64_t seed, std::size_t n) {
  Rng rng(seed);
  std::vector<double> x(n);
  for (auto& v : x) v = 10.0 + 2.0 * rng.normal();
  return TimeSeries(x, "gauss");
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return 0.5 * (v[(v.size() - 1) / 2] + v[v.size() / 2]);
}
} // namespace

TEST_CASE("gaussian_exceedance examples") {
  CHECK(gaussian_exceedance(0, 1, 0) == 0.5);
  CHECK(gaussian_exceedance(0, 1, 3.5) == doctest::Approx(2.3262907903552502e-4).epsilon(1e-13));
  CHECK(gaussian_exceedance(0, 1, 5) == doctest::Approx(2.866515718791945e-7).epsilon(1e-12));
  CHECK(gaussian_exceedance(3, 2, 10) == doctest::Approx(2.3262907903552502e-4).epsilon(1e-13));
  CHECK_THROWS_AS(gaussian_exceedance(0, 0, 1), InvalidArgument);
}

TEST_CASE("return_period examples") {
  CHECK(std::abs(return_period(0.005) - 200.0) < 1e-9);
  CHECK(return_period(1.0) == 1.0);
  CHECK(std::abs(return_period(1.0 / 63.0) - 63.0) < 1e-9);
  CHECK_THROWS_AS(return_period(0.0), InvalidArgument);
  CHECK_THROWS_AS(return_period(1.5), InvalidArgument);
  CHECK_THROWS_AS(return_period(-0.1), InvalidArgument);
}

TEST_CASE("property: return_period of 1/T is T on [1, inf)") {
  for (double t = 1.0; t < 1e12; t *= 1.9) {
    CHECK(std::abs(return_period(1.0 / t) - t) <= 1e-15 * t * 4);
  }
}

TEST_CASE("sample_quantile matches type-7 interpolation") {
  const std::vector<double> d = {4, 1, 3, 2};
  CHECK(sample_quantile(d, 0.0) == 1.0);
  CHECK(sample_quantile(d, 1.0) == 4.0);
  CHECK(sample_quantile(d, 0.5) == 2.5);
  CHECK(sample_quantile(d, 0.25) == doctest::Approx(1.75));
}

TEST_CASE("calibrated symmetric stable law reproduces the IQR") {
  for (double a : {0.9, 1.3, 2.0}) {
    const auto p = calibrate_symmetric_stable(a, 4.0, 3.0);
    CHECK(std::abs(quantile(p, 0.75) - quantile(p, 0.25) - 3.0) < 1e-6);
    CHECK(p.loc() == 4.0);
    CHECK(p.beta() == 0.0);
  }
}

TEST_CASE("compare_models: central threshold gives about one half everywhere") {
  Rng rng(1);
  std::vector<double> x(2048);
  for (auto& v : x) v = rng.normal();
  AnalysisOptions opts;
  opts.include_pareto = false;
  const TimeSeries s(x);
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  const auto r = compare_models(s, mean, opts);
  CHECK(std::abs(r.prob_gaussian - 0.5) < 0.05);
  REQUIRE(r.prob_stable);
  CHECK(std::abs(*r.prob_stable - 0.5) < 0.05);
}

TEST_CASE("compare_models: Gaussian input keeps the two models within 2x") {
  std::vector<double> ratios;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = gaussian_series(seed, 4096);
    const double t = sample_quantile(s.values(), 0.99);
    const auto r = compare_models(s, t);
    ratios.push_back(*r.prob_stable / r.prob_gaussian);
  }
  const double m = median(ratios);
  CHECK(m > 0.5);
  CHECK(m < 2.0);
}

TEST_CASE("compare_models: heavy-tailed input shows an order-of-magnitude gap") {
  std::vector<double> ratios;
  const StableParams truth(1.3, 0.0, 1.0, 0.0);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const TimeSeries s(sample(truth, 4096, seed));
    double mean = 0.0, ss = 0.0;
    for (double v : s.values()) mean += v;
    mean /= 4096.0;
    for (double v : s.values()) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / 4095.0);
    const auto r = compare_models(s, mean + 6.0 * sd);
    ratios.push_back(*r.prob_stable / r.prob_gaussian);
  }
  CHECK(median(ratios) > 10.0);
}

TEST_CASE("property: higher probability means lower return period") {
  const auto s = gaussian_series(3, 1024);
  AnalysisOptions opts;
  opts.include_pareto = true;
  opts.pareto_threshold = sample_quantile(s.values(), 0.9);
  for (double t : {12.7, 13.5, 15.0, 17.0}) {
    const auto r = compare_models(s, t, opts);
    std::vector<std::pair<double, double>> pairs = {{r.prob_gaussian, *r.return_period_gaussian}};
    if (r.return_period_stable) pairs.emplace_back(*r.prob_stable, *r.return_period_stable);
    if (r.return_period_pareto) pairs.emplace_back(*r.prob_pareto, *r.return_period_pareto);
    for (const auto& a : pairs) {
      for (const auto& b : pairs) {
        if (a.first > b.first) CHECK(a.second < b.second);
      }
      CHECK(a.second == doctest::Approx(1.0 / a.first).epsilon(1e-15));
    }
  }
}

TEST_CASE("property: stable/Gaussian exceedance ratio eventually exceeds one and grows") {
  const auto s = TimeSeries(sample(StableParams(1.5, 0, 1, 0), 4096, 12));
  const auto models = fit_models(s, {});
  REQUIRE(models.stable);
  std::vector<double> ratio;
  for (double k = 0.0; k <= 12.0; k += 0.5) {
    const auto r = evaluate_exceedance(models, models.mean + k * models.sd);
    ratio.push_back(*r.prob_stable / r.prob_gaussian);
  }
  const auto first = std::find_if(ratio.begin(), ratio.end(), [](double v) { return v > 1.0; });
  REQUIRE(first != ratio.end());
  for (auto it = first; it + 1 != ratio.end(); ++it) CHECK(*(it + 1) >= *it);
}

TEST_CASE("Pareto probabilities are per-period and validated") {
  const auto s = gaussian_series(4, 2000);
  AnalysisOptions opts;
  opts.include_pareto = true;
  opts.pareto_threshold = 12.0;
  const auto models = fit_models(s, opts);
  const auto above = std::count_if(s.values().begin(), s.values().end(),
                                   [](double v) { return v > 12.0; });
  CHECK(*models.pareto_rate == doctest::Approx(static_cast<double>(above) / 2000.0));
  const auto r = evaluate_exceedance(models, 14.0);
  CHECK(*r.prob_pareto ==
        doctest::Approx(*models.pareto_rate * pareto_exceedance(*models.pareto, 14.0)));
  CHECK_THROWS_AS(evaluate_exceedance(models, 11.0), InvalidArgument);

  AnalysisOptions missing;
  missing.include_pareto = true;
  CHECK_THROWS_AS(fit_models(s, missing), InvalidArgument);
}

TEST_CASE("only the Gaussian model when stable is not requested") {
  AnalysisOptions opts;
  opts.include_stable = false;
  const auto r = compare_models(gaussian_series(5, 512), 13.0, opts);
  CHECK_FALSE(r.prob_stable);
  CHECK_FALSE(r.return_period_stable);
  CHECK_FALSE(r.prob_pareto);
  CHECK(r.return_period_gaussian);
}

TEST_CASE("return periods are absent when the probability underflows") {
  FittedModels m;
  m.mean = 0.0;
  m.sd = 1.0;
  const auto r = evaluate_exceedance(m, 50.0);
  CHECK(r.prob_gaussian == 0.0);
  CHECK_FALSE(r.return_period_gaussian);
}

TEST_CASE("emit_plot_grid examples") {
  const StableParams cauchy(1, 0, 1, 0);
  const auto grid = emit_plot_grid(cauchy, 0.0, 1.0, -5.0, 5.0, 101);
  REQUIRE(grid.size() == 101);
  CHECK(grid.front().x == -5.0);
  CHECK(grid.back().x == 5.0);
  for (const auto* pt : {&grid.front(), &grid.back()}) {
    CHECK(pt->pdf_stable > 0.01);
    CHECK(pt->pdf_gaussian < 1e-5);
    CHECK(std::abs(pt->pdf_stable - oracle::cauchy_pdf(pt->x, 0, 1)) < 1e-9);
  }
  const auto two = emit_plot_grid(cauchy, 0.0, 1.0, -2.0, 3.0, 2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].x == -2.0);
  CHECK(two[1].x == 3.0);

  const auto sym = emit_plot_grid(StableParams(1.4, 0, 0.7, 0), 0.0, 1.3, -6.0, 6.0, 61);
  for (std::size_t i = 0; i < sym.size(); ++i) {
    const auto& a = sym[i];
    const auto& b = sym[sym.size() - 1 - i];
    CHECK(std::abs(a.pdf_stable - b.pdf_stable) < 1e-9);
    CHECK(std::abs(a.pdf_gaussian - b.pdf_gaussian) < 1e-9);
  }
  CHECK_THROWS_AS(emit_plot_grid(cauchy, 0, 1, 1, 1, 5), InvalidArgument);
  CHECK_THROWS_AS(emit_plot_grid(cauchy, 0, 1, 0, 1, 1), InvalidArgument);
  CHECK_THROWS_AS(emit_plot_grid(cauchy, 0, 0, 0, 1, 5), InvalidArgument);
}

TEST_CASE("analyze assembles a full report") {
  const auto s = gaussian_series(6, 1024);
  AnalysisOptions opts;
  opts.include_pareto = true;
  opts.pareto_threshold = 12.0;
  const std::vector<double> thresholds = {13.0, 15.0, 17.0};
  const auto rep = analyze(s, thresholds, opts, PlotSpec{0.0, 20.0, 11});
  CHECK(rep.series_label == "gauss");
  CHECK(rep.n_observations == 1024);
  CHECK(rep.results.size() == 3);
  CHECK(rep.hurst);
  CHECK(rep.stable_params);
  CHECK(rep.pareto_params);
  REQUIRE(rep.plot_grid);
  CHECK(rep.plot_grid->size() == 11);
  CHECK(rep.gaussian_sd > 0.0);
  CHECK(rep.results[1] == compare_models(s, 15.0, opts));
  CHECK_THROWS_AS(analyze(s, {}, opts), InvalidArgument);
}
