#pragma once

#include "heavytail/hurst.hpp"
#include "heavytail/pareto.hpp"
#include "heavytail/risk.hpp"

#include <span>
#include <string>
#include <string_view>

namespace heavytail {

inline constexpr int kReportSchemaVersion = 1;

// JSON documents. Every floating-point number is written with 17
// significant digits, so parsing restores the exact doubles.
std::string to_json(const HurstEstimate& estimate);
std::string to_json(const ParetoParams& params);
std::string to_json(const ExceedanceResult& result);
std::string to_json(const RiskReport& report);

// Parses and validates a report document; throws DataError naming the first
// schema violation.
RiskReport parse_report(std::string_view json_text);

// Schema check without building the report.
void validate_report(std::string_view json_text);

// CSV with header x,pdf_gaussian,pdf_stable.
std::string plot_grid_csv(std::span<const PlotPoint> grid);

} // namespace heavytail
