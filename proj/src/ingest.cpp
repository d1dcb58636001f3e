#include "heavytail/ingest.hpp"

#include "heavytail/error.hpp"
#include "heavytail/numfmt.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace heavytail {

TimeSeries::TimeSeries(std::vector<double> values, std::string label,
                       std::string sample_interval)
    : values_(std::move(values)), label_(std::move(label)),
      interval_(std::move(sample_interval)) {
  if (values_.size() < 2) {
    throw DataError("time series needs at least 2 values, got " +
                    std::to_string(values_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw DataError("time series value at index " + std::to_string(i) +
                      " is not finite");
    }
  }
}

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    auto line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos
                                                                : nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  // The terminator of the last record leaves one empty trailing line.
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    auto field = line.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                    : comma - start);
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t')) field.remove_suffix(1);
    if (field.size() >= 2 && field.front() == '"' && field.back() == '"') {
      field = field.substr(1, field.size() - 2);
    }
    fields.push_back(field);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

} // namespace

TimeSeries parse_series(std::string_view text, const ColumnSelector& column,
                        std::string_view source) {
  constexpr std::string_view bom = "\xEF\xBB\xBF";
  if (text.starts_with(bom)) text.remove_prefix(bom.size());

  const auto lines = split_lines(text);
  const std::string where(source);
  if (lines.empty()) throw DataError(where + ": file is empty");

  const auto first = split_fields(lines.front());
  std::size_t index = 0;
  bool has_header = false;
  std::string label;

  if (const auto* name = std::get_if<std::string>(&column)) {
    bool found = false;
    for (std::size_t i = 0; i < first.size(); ++i) {
      if (first[i] == *name) {
        index = i;
        found = true;
        break;
      }
    }
    if (!found) throw DataError(where + ": column '" + *name + "' not found in header");
    if (parse_double(first[index])) {
      throw DataError(where + ": column '" + *name + "' requested but the file has no header row");
    }
    has_header = true;
    label = *name;
  } else {
    index = std::get<std::size_t>(column);
    if (index >= first.size()) {
      throw DataError(where + ": column " + std::to_string(index) + " not found (first row has " +
                      std::to_string(first.size()) + " columns)");
    }
    has_header = !parse_double(first[index]).has_value();
    if (has_header) label = std::string(first[index]);
  }

  std::vector<double> values;
  values.reserve(lines.size());
  for (std::size_t line_no = has_header ? 1 : 0; line_no < lines.size(); ++line_no) {
    const std::size_t row = has_header ? line_no : line_no + 1;
    const auto at = [&] {
      return where + ": data row " + std::to_string(row) + " (line " + std::to_string(line_no + 1) +
             ")";
    };
    const auto fields = split_fields(lines[line_no]);
    if (index >= fields.size()) throw DataError(at() + ": missing cell in column " + std::to_string(index));
    const auto cell = fields[index];
    if (cell.empty()) throw DataError(at() + ": empty cell");
    const auto value = parse_double(cell);
    if (!value) throw DataError(at() + ": non-numeric cell '" + std::string(cell) + "'");
    if (!std::isfinite(*value)) throw DataError(at() + ": non-finite value '" + std::string(cell) + "'");
    values.push_back(*value);
  }

  if (values.size() < 2) {
    throw DataError(where + ": fewer than 2 usable rows (" + std::to_string(values.size()) + ")");
  }
  return TimeSeries(std::move(values), std::move(label));
}

TimeSeries load_series(const std::filesystem::path& path, const ColumnSelector& column) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open input file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_series(buffer.str(), column, path.string());
}

std::string format_series_csv(const TimeSeries& series) {
  std::string out = series.label().empty() ? "value" : series.label();
  out += '\n';
  for (double v : series.values()) {
    out += format_double(v);
    out += '\n';
  }
  return out;
}

void save_series(const TimeSeries& series, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open output file '" + path.string() + "'");
  out << format_series_csv(series);
  if (!out) throw DataError("failed writing '" + path.string() + "'");
}

Preprocess parse_preprocess(std::string_view name) {
  if (name == "none") return Preprocess::none;
  if (name == "diff") return Preprocess::diff;
  if (name == "log-diff") return Preprocess::log_diff;
  throw InvalidArgument("unknown preprocess mode '" + std::string(name) +
                        "' (expected none, diff or log-diff)");
}

std::string_view to_string(Preprocess mode) {
  switch (mode) {
    case Preprocess::none: return "none";
    case Preprocess::diff: return "diff";
    case Preprocess::log_diff: return "log-diff";
  }
  return "none";
}

TimeSeries preprocess(const TimeSeries& series, Preprocess mode) {
  const auto& x = series.values();
  if (mode == Preprocess::none) return series;

  if (x.size() < 3) {
    throw DataError("preprocess: differencing a series of length " + std::to_string(x.size()) +
                    " leaves fewer than 2 values");
  }
  std::vector<double> out(x.size() - 1);
  if (mode == Preprocess::diff) {
    for (std::size_t i = 0; i + 1 < x.size(); ++i) out[i] = x[i + 1] - x[i];
  } else {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!(x[i] > 0.0)) {
        throw DataError("preprocess: log-diff requires strictly positive values; index " +
                        std::to_string(i) + " is " + format_double(x[i]));
      }
    }
    for (std::size_t i = 0; i + 1 < x.size(); ++i) out[i] = std::log(x[i + 1] / x[i]);
  }
  return TimeSeries(std::move(out), series.label(), series.sample_interval());
}

} // namespace heavytail
