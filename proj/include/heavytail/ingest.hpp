#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace heavytail {

// Ordered univariate observations. Construction enforces the invariants:
// at least two values, all finite.
class TimeSeries {
public:
  TimeSeries(std::vector<double> values, std::string label = {},
             std::string sample_interval = {});

  const std::vector<double>& values() const noexcept { return values_; }
  const std::string& label() const noexcept { return label_; }
  const std::string& sample_interval() const noexcept { return interval_; }
  std::size_t size() const noexcept { return values_.size(); }

  bool operator==(const TimeSeries&) const = default;

private:
  std::vector<double> values_;
  std::string label_;
  std::string interval_;
};

// A CSV column chosen by header name or by zero-based position.
using ColumnSelector = std::variant<std::string, std::size_t>;

// Parse a CSV file into a series. The first row is treated as a header when
// its cell in the selected column is not numeric. Empty or non-numeric cells
// are errors naming the 1-based data row and the file line.
TimeSeries load_series(const std::filesystem::path& path,
                       const ColumnSelector& column = std::size_t{0});

// Same as load_series but from in-memory CSV text; `source` names the origin
// in diagnostics.
TimeSeries parse_series(std::string_view csv_text, const ColumnSelector& column,
                        std::string_view source = "<memory>");

// Writes a single-column CSV with a header row (the label, or "value") and
// every value at 17 significant digits, so load_series reads it back exactly.
void save_series(const TimeSeries& series, const std::filesystem::path& path);
std::string format_series_csv(const TimeSeries& series);

enum class Preprocess { none, diff, log_diff };

Preprocess parse_preprocess(std::string_view name);
std::string_view to_string(Preprocess mode);

// none: identity. diff: x[i+1] - x[i]. log_diff: ln(x[i+1] / x[i]).
TimeSeries preprocess(const TimeSeries& series, Preprocess mode);

} // namespace heavytail
