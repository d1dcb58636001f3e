#include "heavytail/report_io.hpp"

#include "heavytail/error.hpp"
#include "heavytail/numfmt.hpp"

#include <json.hpp>

#include <cmath>

namespace heavytail {

using Json = nlohmann::ordered_json;

namespace {

// nlohmann's own serializer prints the shortest round-trip form; reports
// promise a fixed 17 significant digits instead.
void dump(const Json& j, std::string& out, int indent, int depth) {
  const auto newline = [&](int d) {
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::null: out += "null"; break;
    case Json::value_t::boolean: out += j.get<bool>() ? "true" : "false"; break;
    case Json::value_t::number_integer: out += std::to_string(j.get<std::int64_t>()); break;
    case Json::value_t::number_unsigned: out += std::to_string(j.get<std::uint64_t>()); break;
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) throw Error("cannot serialize a non-finite number to JSON");
      auto text = format_double(v);
      // Keep integral-valued floats recognisably floating point.
      if (text.find_first_of(".eE") == std::string::npos) text += ".0";
      out += text;
      break;
    }
    case Json::value_t::string: out += j.dump(); break;
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        break;
      }
      out += '[';
      bool first = true;
      for (const auto& el : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        dump(el, out, indent, depth + 1);
      }
      newline(depth);
      out += ']';
      break;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        break;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(key).dump();
        out += ": ";
        dump(value, out, indent, depth + 1);
      }
      newline(depth);
      out += '}';
      break;
    }
    default: throw Error("unsupported JSON value type");
  }
}

std::string dump(const Json& j) {
  std::string out;
  dump(j, out, 2, 0);
  out += '\n';
  return out;
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json hurst_json(const HurstEstimate& e) {
  Json points = Json::array();
  for (const auto& p : e.points) {
    points.push_back({{"window_size", p.window_size}, {"mean_rs", p.mean_rs}});
  }
  return {{"h", e.h},
          {"alpha_implied", e.alpha_implied},
          {"alpha_clamped", e.alpha_clamped},
          {"intercept_log_a", e.intercept_log_a},
          {"r_squared", e.r_squared},
          {"points", points}};
}

Json stable_json(const StableParams& p) {
  return {{"alpha", p.alpha()}, {"beta", p.beta()}, {"gamma", p.gamma()}, {"loc", p.loc()}};
}

Json pareto_json(const ParetoParams& p) {
  return {{"alpha", p.alpha()}, {"sigma_min", p.sigma_min()}};
}

Json exceedance_json(const ExceedanceResult& r) {
  return {{"threshold", r.threshold},
          {"prob_gaussian", r.prob_gaussian},
          {"prob_stable", optional_number(r.prob_stable)},
          {"prob_pareto", optional_number(r.prob_pareto)},
          {"return_period_gaussian", optional_number(r.return_period_gaussian)},
          {"return_period_stable", optional_number(r.return_period_stable)},
          {"return_period_pareto", optional_number(r.return_period_pareto)}};
}

// --- reading ---------------------------------------------------------------

[[noreturn]] void violation(const std::string& path, const std::string& what) {
  throw DataError("report schema violation at " + path + ": " + what);
}

const Json& field(const Json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) violation(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) violation(path, std::string("missing field '") + key + "'");
  return *it;
}

double number(const Json& obj, const std::string& path, const char* key) {
  const auto& v = field(obj, path, key);
  if (!v.is_number()) violation(path + "." + key, "expected a number");
  return v.get<double>();
}

std::optional<double> nullable_number(const Json& obj, const std::string& path, const char* key) {
  const auto& v = field(obj, path, key);
  if (v.is_null()) return std::nullopt;
  if (!v.is_number()) violation(path + "." + key, "expected a number or null");
  return v.get<double>();
}

std::size_t count(const Json& obj, const std::string& path, const char* key) {
  const auto& v = field(obj, path, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    violation(path + "." + key, "expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

void check_probability(const std::string& path, const char* key, std::optional<double> value) {
  if (value && !(*value >= 0.0 && *value <= 1.0)) {
    violation(path + "." + key, "probability outside [0, 1]");
  }
}

void check_period(const std::string& path, const char* key, std::optional<double> prob,
                  std::optional<double> period) {
  if (!prob) {
    if (period) violation(path + "." + key, "return period present without its probability");
    return;
  }
  if (*prob > 0.0) {
    if (!period) violation(path + "." + key, "missing return period for a positive probability");
    const double expected = 1.0 / *prob;
    if (std::abs(*period - expected) > 1e-12 * expected) {
      violation(path + "." + key, "return period is not the reciprocal of its probability");
    }
  } else if (period) {
    violation(path + "." + key, "return period present for a zero probability");
  }
}

ExceedanceResult read_exceedance(const Json& j, const std::string& path) {
  ExceedanceResult r;
  r.threshold = number(j, path, "threshold");
  r.prob_gaussian = number(j, path, "prob_gaussian");
  check_probability(path, "prob_gaussian", r.prob_gaussian);
  r.prob_stable = nullable_number(j, path, "prob_stable");
  check_probability(path, "prob_stable", r.prob_stable);
  r.prob_pareto = nullable_number(j, path, "prob_pareto");
  check_probability(path, "prob_pareto", r.prob_pareto);
  r.return_period_gaussian = nullable_number(j, path, "return_period_gaussian");
  r.return_period_stable = nullable_number(j, path, "return_period_stable");
  r.return_period_pareto = nullable_number(j, path, "return_period_pareto");
  check_period(path, "return_period_gaussian", r.prob_gaussian, r.return_period_gaussian);
  check_period(path, "return_period_stable", r.prob_stable, r.return_period_stable);
  check_period(path, "return_period_pareto", r.prob_pareto, r.return_period_pareto);
  return r;
}

HurstEstimate read_hurst(const Json& j, const std::string& path) {
  HurstEstimate e;
  e.h = number(j, path, "h");
  e.alpha_implied = number(j, path, "alpha_implied");
  const auto& clamped = field(j, path, "alpha_clamped");
  if (!clamped.is_boolean()) violation(path + ".alpha_clamped", "expected a boolean");
  e.alpha_clamped = clamped.get<bool>();
  e.intercept_log_a = number(j, path, "intercept_log_a");
  e.r_squared = number(j, path, "r_squared");
  if (!(e.h > 0.0 && e.h < 1.0)) violation(path + ".h", "outside (0, 1)");
  if (!(e.alpha_implied > 0.0 && e.alpha_implied <= 2.0)) {
    violation(path + ".alpha_implied", "outside (0, 2]");
  }
  if (!(e.r_squared >= 0.0 && e.r_squared <= 1.0)) violation(path + ".r_squared", "outside [0, 1]");
  const auto& pts = field(j, path, "points");
  if (!pts.is_array() || pts.size() < 3) violation(path + ".points", "expected at least 3 points");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto p = path + ".points[" + std::to_string(i) + "]";
    RSPoint point{count(pts[i], p, "window_size"), number(pts[i], p, "mean_rs")};
    if (point.window_size < kMinWindow) violation(p + ".window_size", "below the minimum window");
    if (!(point.mean_rs > 0.0)) violation(p + ".mean_rs", "must be positive");
    e.points.push_back(point);
  }
  return e;
}

RiskReport read_report(const Json& j) {
  const std::string root = "$";
  if (!j.is_object()) violation(root, "expected an object");
  const auto& version = field(j, root, "schema_version");
  if (!version.is_number_integer() || version.get<int>() != kReportSchemaVersion) {
    violation(root + ".schema_version", "expected " + std::to_string(kReportSchemaVersion));
  }

  RiskReport r;
  const auto& label = field(j, root, "series_label");
  if (!label.is_string()) violation(root + ".series_label", "expected a string");
  r.series_label = label.get<std::string>();
  r.n_observations = count(j, root, "n_observations");

  if (const auto& h = field(j, root, "hurst"); !h.is_null()) r.hurst = read_hurst(h, root + ".hurst");

  if (const auto& s = field(j, root, "stable_params"); !s.is_null()) {
    const auto p = root + ".stable_params";
    try {
      r.stable_params.emplace(number(s, p, "alpha"), number(s, p, "beta"), number(s, p, "gamma"),
                              number(s, p, "loc"));
    } catch (const InvalidArgument& e) {
      violation(p, e.what());
    }
  }
  if (const auto& s = field(j, root, "pareto_params"); !s.is_null()) {
    const auto p = root + ".pareto_params";
    try {
      r.pareto_params.emplace(number(s, p, "alpha"), number(s, p, "sigma_min"));
    } catch (const InvalidArgument& e) {
      violation(p, e.what());
    }
  }
  r.pareto_exceedance_rate = nullable_number(j, root, "pareto_exceedance_rate");
  check_probability(root, "pareto_exceedance_rate", r.pareto_exceedance_rate);
  if (r.pareto_params.has_value() != r.pareto_exceedance_rate.has_value()) {
    violation(root + ".pareto_exceedance_rate", "must be present exactly when pareto_params is");
  }

  r.gaussian_mean = number(j, root, "gaussian_mean");
  r.gaussian_sd = number(j, root, "gaussian_sd");
  if (!(r.gaussian_sd > 0.0)) violation(root + ".gaussian_sd", "must be positive");

  const auto& results = field(j, root, "results");
  if (!results.is_array() || results.empty()) violation(root + ".results", "expected a non-empty array");
  for (std::size_t i = 0; i < results.size(); ++i) {
    r.results.push_back(read_exceedance(results[i], root + ".results[" + std::to_string(i) + "]"));
  }

  if (const auto& g = field(j, root, "plot_grid"); !g.is_null()) {
    if (!g.is_array()) violation(root + ".plot_grid", "expected an array or null");
    std::vector<PlotPoint> grid;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto p = root + ".plot_grid[" + std::to_string(i) + "]";
      grid.push_back({number(g[i], p, "x"), number(g[i], p, "pdf_gaussian"),
                      number(g[i], p, "pdf_stable")});
    }
    r.plot_grid = std::move(grid);
  }
  return r;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw DataError(std::string("invalid JSON: ") + e.what());
  }
}

} // namespace

std::string to_json(const HurstEstimate& estimate) { return dump(hurst_json(estimate)); }
std::string to_json(const ParetoParams& params) { return dump(pareto_json(params)); }
std::string to_json(const ExceedanceResult& result) { return dump(exceedance_json(result)); }

std::string to_json(const RiskReport& report) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["series_label"] = report.series_label;
  j["n_observations"] = report.n_observations;
  j["hurst"] = report.hurst ? hurst_json(*report.hurst) : Json(nullptr);
  j["stable_params"] = report.stable_params ? stable_json(*report.stable_params) : Json(nullptr);
  j["pareto_params"] = report.pareto_params ? pareto_json(*report.pareto_params) : Json(nullptr);
  j["pareto_exceedance_rate"] = optional_number(report.pareto_exceedance_rate);
  j["gaussian_mean"] = report.gaussian_mean;
  j["gaussian_sd"] = report.gaussian_sd;
  Json results = Json::array();
  for (const auto& r : report.results) results.push_back(exceedance_json(r));
  j["results"] = results;
  if (report.plot_grid) {
    Json grid = Json::array();
    for (const auto& p : *report.plot_grid) {
      grid.push_back({{"x", p.x}, {"pdf_gaussian", p.pdf_gaussian}, {"pdf_stable", p.pdf_stable}});
    }
    j["plot_grid"] = grid;
  } else {
    j["plot_grid"] = nullptr;
  }
  return dump(j);
}

RiskReport parse_report(std::string_view json_text) { return read_report(parse_json(json_text)); }

void validate_report(std::string_view json_text) { (void)parse_report(json_text); }

std::string plot_grid_csv(std::span<const PlotPoint> grid) {
  std::string out = "x,pdf_gaussian,pdf_stable\n";
  for (const auto& p : grid) {
    out += format_double(p.x);
    out += ',';
    out += format_double(p.pdf_gaussian);
    out += ',';
    out += format_double(p.pdf_stable);
    out += '\n';
  }
  return out;
}

} // namespace heavytail
