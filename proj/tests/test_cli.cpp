#include "heavytail/cli.hpp"
#include "heavytail/report_io.hpp"
#include "heavytail/stable.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace heavytail;
using nlohmann::json;

namespace {
struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool one_line(const std::string& s) {
  return !s.empty() && s.back() == '\n' && s.find('\n') == s.size() - 1;
}

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p;
}

std::string series_csv() {
  // Persistent synthetic series in a two-column file.
  const auto x = sample(StableParams(1.6, 0.0, 1.0, 10.0), 512, 77);
  std::string text = "day,level\n";
  for (std::size_t i = 0; i < x.size(); ++i) {
    text += std::to_string(i) + "," + std::to_string(x[i]) + "\n";
  }
  return text;
}
} // namespace

TEST_CASE("stable-pdf prints the Cauchy density at 0") {
  const auto r = run_cli({"stable-pdf", "--alpha", "1", "--beta", "0", "--gamma", "1", "--loc",
                          "0", "--x", "0"});
  CHECK(r.code == 0);
  CHECK(std::abs(std::stod(r.out) - 0.3183099) < 1e-6);
  CHECK(r.out == "0.31830988618379069\n");
  CHECK(r.err.empty());
}

TEST_CASE("stable-cdf") {
  const auto r = run_cli({"stable-cdf", "--alpha", "1", "--beta", "0", "--gamma", "1", "--loc",
                          "0", "--x", "1"});
  CHECK(r.code == 0);
  CHECK(std::abs(std::stod(r.out) - 0.75) < 1e-7);
}

TEST_CASE("hurst happy path and missing file") {
  const auto path = temp_file("heavytail_cli_series.csv", series_csv());
  const auto r = run_cli({"hurst", "--input", path.string(), "--column", "level"});
  CHECK(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j.at("h").get<double>() > 0.0);
  CHECK(j.at("points").size() >= 3);

  const auto by_index = run_cli({"hurst", "--input", path.string(), "--column", "1"});
  CHECK(by_index.out == r.out);

  const auto diffed = run_cli({"hurst", "--input", path.string(), "--column", "level",
                               "--preprocess", "diff", "--min-window", "16"});
  CHECK(diffed.code == 0);
  CHECK(json::parse(diffed.out).at("points")[0].at("window_size") == 16);

  const auto missing = run_cli({"hurst", "--input", "missing.csv"});
  CHECK(missing.code == 1);
  CHECK(missing.err.find("missing.csv") != std::string::npos);
  CHECK(one_line(missing.err));
  CHECK(missing.out.empty());
  std::filesystem::remove(path);
}

TEST_CASE("usage errors exit 2 with one diagnostic line") {
  const std::vector<std::vector<std::string>> cases = {
      {},
      {"bogus"},
      {"stable-pdf", "--alpha", "1"},
      {"stable-pdf", "--alpha", "x", "--beta", "0", "--gamma", "1", "--loc", "0", "--x", "0"},
      {"stable-pdf", "--alpha", "3", "--beta", "0", "--gamma", "1", "--loc", "0", "--x", "0"},
      {"stable-pdf", "--alpha", "1", "--beta", "0", "--gamma", "0", "--loc", "0", "--x", "0"},
      {"stable-pdf", "--alpha", "1", "--beta", "0", "--gamma", "1", "--loc", "0", "--x", "0",
       "--frobnicate"},
      {"gen-fgn", "--h", "1.2", "--n", "10"},
      {"gen-fgn", "--h", "0.7", "--n", "-3"},
      {"hurst", "--input", "a.csv", "--preprocess", "log"},
      {"hurst", "--input", "a.csv", "--min-window", "4"},
      {"exceedance", "--input", "a.csv", "--threshold", "3", "--models", "gaussian,pareto"},
      {"exceedance", "--input", "a.csv", "--threshold", "3", "--models", "weibull"},
      {"plot-tails", "--alpha", "1", "--beta", "0", "--gamma", "1", "--loc", "0", "--mean", "0",
       "--sd", "1", "--from", "5", "--to", "-5", "--points", "10"},
  };
  for (const auto& args : cases) {
    const auto r = run_cli(args);
    CAPTURE(args.size());
    CHECK(r.code == 2);
    CHECK(one_line(r.err));
    CHECK(r.out.empty());
  }
}

TEST_CASE("--help succeeds") {
  const auto r = run_cli({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("exceedance") != std::string::npos);
  const auto sub = run_cli({"gen-fgn", "--help"});
  CHECK(sub.code == 0);
  CHECK(sub.out.find("--seed") != std::string::npos);
}

TEST_CASE("seeded commands are byte-identical across runs") {
  const std::vector<std::string> fgn = {"gen-fgn", "--h", "0.8", "--n", "300", "--seed", "5"};
  const auto a = run_cli(fgn), b = run_cli(fgn);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("value\n", 0) == 0);
  CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 301);

  const std::vector<std::string> smp = {"stable-sample", "--alpha", "1.5", "--beta", "0.2",
                                        "--gamma", "1", "--loc", "0", "--n", "50", "--seed", "9"};
  const auto c = run_cli(smp), d = run_cli(smp);
  CHECK(c.code == 0);
  CHECK(c.out == d.out);
  CHECK(c.out.rfind("value\n", 0) == 0);
  CHECK(std::count(c.out.begin(), c.out.end(), '\n') == 51);

  // Seed defaults to 0.
  CHECK(run_cli({"gen-fgn", "--h", "0.8", "--n", "64"}).out ==
        run_cli({"gen-fgn", "--h", "0.8", "--n", "64", "--seed", "0"}).out);
}

TEST_CASE("--output writes the result to a file") {
  const auto path = std::filesystem::temp_directory_path() / "heavytail_cli_out.csv";
  const auto r = run_cli({"gen-fgn", "--h", "0.6", "--n", "20", "--seed", "1", "--output",
                          path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == run_cli({"gen-fgn", "--h", "0.6", "--n", "20", "--seed", "1"}).out);
  std::filesystem::remove(path);
}

TEST_CASE("fit-pareto, exceedance and plot-tails") {
  const auto path = temp_file("heavytail_cli_series2.csv", series_csv());
  const auto fit = run_cli({"fit-pareto", "--input", path.string(), "--column", "level",
                            "--threshold", "11"});
  CHECK(fit.code == 0);
  CHECK(json::parse(fit.out).at("sigma_min") == 11.0);

  const auto exc = run_cli({"exceedance", "--input", path.string(), "--column", "level",
                            "--threshold", "14", "--models", "gaussian,stable,pareto",
                            "--pareto-threshold", "11"});
  CHECK(exc.code == 0);
  CHECK_NOTHROW(validate_report(exc.out));
  const auto res = json::parse(exc.out).at("results")[0];
  for (const char* m : {"gaussian", "stable", "pareto"}) {
    const double p = res.at(std::string("prob_") + m).get<double>();
    const double t = res.at(std::string("return_period_") + m).get<double>();
    CHECK(t == doctest::Approx(1.0 / p).epsilon(1e-15));
  }

  const auto gauss_only = run_cli({"exceedance", "--input", path.string(), "--column", "level",
                                   "--threshold", "14", "--models", "gaussian"});
  CHECK(gauss_only.code == 0);
  CHECK(json::parse(gauss_only.out).at("stable_params").is_null());

  const auto too_few = run_cli({"fit-pareto", "--input", path.string(), "--column", "level",
                                "--threshold", "1000"});
  CHECK(too_few.code == 1);
  CHECK(one_line(too_few.err));

  const auto plot = run_cli({"plot-tails", "--alpha", "1", "--beta", "0", "--gamma", "1",
                             "--loc", "0", "--mean", "0", "--sd", "1", "--from", "-5", "--to",
                             "5", "--points", "11"});
  CHECK(plot.code == 0);
  CHECK(plot.out.rfind("x,pdf_gaussian,pdf_stable\n", 0) == 0);
  CHECK(std::count(plot.out.begin(), plot.out.end(), '\n') == 12);
  std::filesystem::remove(path);
}

TEST_CASE("computation errors exit 1") {
  const auto path = temp_file("heavytail_cli_short.csv", "v\n1\n2\n3\n4\n");
  const auto r = run_cli({"hurst", "--input", path.string()});
  CHECK(r.code == 1);
  CHECK(one_line(r.err));
  CHECK(r.out.empty());
  std::filesystem::remove(path);
}
