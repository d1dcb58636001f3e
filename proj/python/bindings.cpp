#include "heavytail/cli.hpp"
#include "heavytail/error.hpp"
#include "heavytail/hurst.hpp"
#include "heavytail/ingest.hpp"
#include "heavytail/pareto.hpp"
#include "heavytail/report_io.hpp"
#include "heavytail/risk.hpp"
#include "heavytail/stable.hpp"

#include <pybind11/complex.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

namespace py = pybind11;
using namespace heavytail;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Heavy-tail risk analysis: Hurst exponents, stable laws, Pareto tails";

  auto base = py::register_exception<Error>(m, "HeavytailError", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<DataError>(m, "DataError", base.ptr());
  py::register_exception<DegenerateSegment>(m, "DegenerateSegment", base.ptr());
  py::register_exception<FitError>(m, "FitError", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());

  // --- ingest ---------------------------------------------------------------
  py::class_<TimeSeries>(m, "TimeSeries")
      .def(py::init<std::vector<double>, std::string, std::string>(), py::arg("values"),
           py::arg("label") = "", py::arg("sample_interval") = "")
      .def_property_readonly("values", &TimeSeries::values)
      .def_property_readonly("label", &TimeSeries::label)
      .def_property_readonly("sample_interval", &TimeSeries::sample_interval)
      .def("__len__", &TimeSeries::size)
      .def(py::self == py::self);

  m.def("load_series",
        [](const std::filesystem::path& path, std::variant<std::size_t, std::string> column) {
          return std::visit([&](auto c) { return load_series(path, ColumnSelector(c)); }, column);
        },
        py::arg("path"), py::arg("column") = std::size_t{0});
  m.def("parse_series",
        [](const std::string& text, std::variant<std::size_t, std::string> column) {
          return std::visit([&](auto c) { return parse_series(text, ColumnSelector(c)); }, column);
        },
        py::arg("text"), py::arg("column") = std::size_t{0});
  m.def("save_series", &save_series, py::arg("series"), py::arg("path"));
  m.def("format_series_csv", &format_series_csv, py::arg("series"));
  m.def("preprocess",
        [](const TimeSeries& s, const std::string& mode) {
          return preprocess(s, parse_preprocess(mode));
        },
        py::arg("series"), py::arg("mode") = "none");

  // --- hurst ----------------------------------------------------------------
  py::class_<RSPoint>(m, "RSPoint")
      .def_readonly("window_size", &RSPoint::window_size)
      .def_readonly("mean_rs", &RSPoint::mean_rs);
  py::class_<HurstEstimate>(m, "HurstEstimate")
      .def_readonly("h", &HurstEstimate::h)
      .def_readonly("alpha_implied", &HurstEstimate::alpha_implied)
      .def_readonly("alpha_clamped", &HurstEstimate::alpha_clamped)
      .def_readonly("intercept_log_a", &HurstEstimate::intercept_log_a)
      .def_readonly("r_squared", &HurstEstimate::r_squared)
      .def_readonly("points", &HurstEstimate::points)
      .def("to_json", [](const HurstEstimate& e) { return to_json(e); });

  m.def("rescaled_range", [](const std::vector<double>& seg) { return rescaled_range(seg); },
        py::arg("segment"));
  m.def("rs_curve", &rs_curve, py::arg("series"), py::arg("min_window") = kMinWindow,
        py::arg("max_window") = py::none());
  m.def("fit_hurst",
        [](const std::vector<std::pair<std::size_t, double>>& pts) {
          std::vector<RSPoint> points;
          for (auto [n, rs] : pts) points.push_back({n, rs});
          return fit_hurst(points);
        },
        py::arg("points"), "Fit from (window_size, mean_rs) pairs.");
  m.def("alpha_from_hurst",
        [](double h) {
          const auto t = alpha_from_hurst(h);
          return py::make_tuple(t.alpha, t.clamped);
        },
        py::arg("h"), "Returns (alpha, clamped).");
  m.def("estimate_hurst", &estimate_hurst, py::arg("series"), py::arg("min_window") = kMinWindow,
        py::arg("max_window") = py::none());
  m.def("generate_fgn",
        [](double h, std::size_t n, std::uint64_t seed) { return generate_fgn(h, n, seed); },
        py::arg("h"), py::arg("n"), py::arg("seed") = 0);

  // --- stable ---------------------------------------------------------------
  py::class_<StableParams>(m, "StableParams")
      .def(py::init<double, double, double, double>(), py::arg("alpha"), py::arg("beta"),
           py::arg("gamma"), py::arg("loc"))
      .def_property_readonly("alpha", &StableParams::alpha)
      .def_property_readonly("beta", &StableParams::beta)
      .def_property_readonly("gamma", &StableParams::gamma)
      .def_property_readonly("loc", &StableParams::loc)
      .def_property_readonly("scale", &StableParams::scale)
      .def(py::self == py::self);

  m.def("log_cf", &log_cf, py::arg("params"), py::arg("t"));
  m.def("stable_pdf", py::overload_cast<const StableParams&, double>(&pdf), py::arg("params"),
        py::arg("x"));
  m.def("stable_cdf", py::overload_cast<const StableParams&, double>(&cdf), py::arg("params"),
        py::arg("x"));
  m.def("stable_survival", &survival, py::arg("params"), py::arg("x"));
  m.def("stable_quantile", &quantile, py::arg("params"), py::arg("q"));
  m.def("stable_sample", &sample, py::arg("params"), py::arg("n"), py::arg("seed") = 0);

  // --- pareto ---------------------------------------------------------------
  py::class_<ParetoParams>(m, "ParetoParams")
      .def(py::init<double, double>(), py::arg("alpha"), py::arg("sigma_min"))
      .def_property_readonly("alpha", &ParetoParams::alpha)
      .def_property_readonly("sigma_min", &ParetoParams::sigma_min)
      .def(py::self == py::self);
  m.def("pareto_cdf", &pareto_cdf, py::arg("params"), py::arg("x"));
  m.def("pareto_exceedance", &pareto_exceedance, py::arg("params"), py::arg("x"));
  m.def("pareto_quantile", &pareto_quantile, py::arg("params"), py::arg("q"));
  m.def("fit_pareto",
        [](const std::vector<double>& data, double threshold) {
          return fit_pareto(data, threshold);
        },
        py::arg("data"), py::arg("threshold"));

  // --- risk -----------------------------------------------------------------
  py::class_<ExceedanceResult>(m, "ExceedanceResult")
      .def_readonly("threshold", &ExceedanceResult::threshold)
      .def_readonly("prob_gaussian", &ExceedanceResult::prob_gaussian)
      .def_readonly("prob_stable", &ExceedanceResult::prob_stable)
      .def_readonly("prob_pareto", &ExceedanceResult::prob_pareto)
      .def_readonly("return_period_gaussian", &ExceedanceResult::return_period_gaussian)
      .def_readonly("return_period_stable", &ExceedanceResult::return_period_stable)
      .def_readonly("return_period_pareto", &ExceedanceResult::return_period_pareto)
      .def("to_json", [](const ExceedanceResult& r) { return to_json(r); });

  py::class_<AnalysisOptions>(m, "AnalysisOptions")
      .def(py::init([](bool include_stable, bool include_pareto, std::size_t min_window,
                       std::optional<std::size_t> max_window,
                       std::optional<double> pareto_threshold) {
             return AnalysisOptions{include_stable, include_pareto, min_window, max_window,
                                    pareto_threshold};
           }),
           py::arg("include_stable") = true, py::arg("include_pareto") = false,
           py::arg("min_window") = kMinWindow, py::arg("max_window") = py::none(),
           py::arg("pareto_threshold") = py::none())
      .def_readwrite("include_stable", &AnalysisOptions::include_stable)
      .def_readwrite("include_pareto", &AnalysisOptions::include_pareto)
      .def_readwrite("min_window", &AnalysisOptions::min_window)
      .def_readwrite("max_window", &AnalysisOptions::max_window)
      .def_readwrite("pareto_threshold", &AnalysisOptions::pareto_threshold);

  m.def("gaussian_exceedance", &gaussian_exceedance, py::arg("mean"), py::arg("sd"),
        py::arg("x"));
  m.def("return_period", &return_period, py::arg("prob_per_period"));
  m.def("compare_models", &compare_models, py::arg("series"), py::arg("threshold"),
        py::arg("options") = AnalysisOptions{});
  m.def("emit_plot_grid",
        [](const StableParams& p, double mean, double sd, double x_min, double x_max,
           std::size_t n_points) {
          py::list rows;
          for (const auto& pt : emit_plot_grid(p, mean, sd, x_min, x_max, n_points)) {
            rows.append(py::make_tuple(pt.x, pt.pdf_gaussian, pt.pdf_stable));
          }
          return rows;
        },
        py::arg("params"), py::arg("mean"), py::arg("sd"), py::arg("x_min"), py::arg("x_max"),
        py::arg("n_points"), "List of (x, pdf_gaussian, pdf_stable) tuples.");
  m.def("analyze_json",
        [](const TimeSeries& s, const std::vector<double>& thresholds,
           const AnalysisOptions& options) { return to_json(analyze(s, thresholds, options)); },
        py::arg("series"), py::arg("thresholds"), py::arg("options") = AnalysisOptions{},
        "Full risk report as a JSON document.");
  m.def("validate_report", [](const std::string& text) { validate_report(text); },
        py::arg("json_text"));
  m.attr("REPORT_SCHEMA_VERSION") = kReportSchemaVersion;

  // --- cli ------------------------------------------------------------------
  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          const int code = cli::run(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Returns (exit_code, stdout_text, stderr_text).");
}
