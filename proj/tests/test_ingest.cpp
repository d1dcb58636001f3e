#include "heavytail/error.hpp"
#include "heavytail/ingest.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <string>

using namespace heavytail;

namespace {
std::string message_of(const auto& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}
} // namespace

TEST_CASE("parse_series: header selected by name") {
  const auto s = parse_series("level\n1.0\n2.0\n3.0", std::string("level"));
  CHECK(s.values() == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(s.label() == "level");
}

TEST_CASE("parse_series: headerless by index") {
  const auto s = parse_series("1.0\n2.0", std::size_t{0});
  CHECK(s.values() == std::vector<double>{1.0, 2.0});
}

TEST_CASE("parse_series: non-numeric cell names the data row") {
  const auto msg = message_of([] { parse_series("a\n1.0\nxx", std::string("a")); });
  CHECK(msg.find("row 2") != std::string::npos);
  CHECK_THROWS_AS(parse_series("a\n1.0\nxx", std::string("a")), DataError);
}

TEST_CASE("parse_series: multi-column, CRLF, BOM and quotes") {
  const std::string text = "\xEF\xBB\xBF" "date,\"level\"\r\n2020,1.5\r\n2021,\"2.5\"\r\n\r\n";
  const auto s = parse_series(text, std::string("level"));
  CHECK(s.values() == std::vector<double>{1.5, 2.5});
  const auto by_index = parse_series(text, std::size_t{1});
  CHECK(by_index.values() == s.values());
}

TEST_CASE("parse_series: errors") {
  CHECK_THROWS_AS(parse_series("", std::size_t{0}), DataError);
  CHECK_THROWS_AS(parse_series("x\n1.0", std::string("x")), DataError);          // one row
  CHECK_THROWS_AS(parse_series("x\n1\n2", std::string("y")), DataError);         // missing column
  CHECK_THROWS_AS(parse_series("1,2\n3", std::size_t{1}), DataError);            // missing cell
  CHECK_THROWS_AS(parse_series("x\n1\n\n2", std::string("x")), DataError);       // empty row
  CHECK_THROWS_AS(parse_series("x\n1\ninf", std::string("x")), DataError);       // non-finite
  CHECK_THROWS_AS(parse_series("x\n1\n2.5.1", std::string("x")), DataError);     // garbage
  CHECK(message_of([] { parse_series("x\n1\n", std::string("x")); }).find("fewer than 2") !=
        std::string::npos);
}

TEST_CASE("load_series: missing file names the path") {
  const auto msg = message_of([] { load_series("/nonexistent/dir/missing.csv"); });
  CHECK(msg.find("missing.csv") != std::string::npos);
}

TEST_CASE("TimeSeries invariants") {
  CHECK_THROWS_AS(TimeSeries({1.0}), DataError);
  CHECK_THROWS_AS(TimeSeries({1.0, NAN}), DataError);
  CHECK_NOTHROW(TimeSeries({1.0, 2.0}));
}

TEST_CASE("preprocess examples") {
  CHECK(preprocess(TimeSeries({1, 3, 6}), Preprocess::diff).values() == std::vector<double>{2, 3});
  const double e = std::numbers::e;
  const auto ld = preprocess(TimeSeries({1, e, e * e}), Preprocess::log_diff).values();
  REQUIRE(ld.size() == 2);
  CHECK(ld[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ld[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(preprocess(TimeSeries({5, 9}), Preprocess::none).values() == std::vector<double>{5, 9});
}

TEST_CASE("preprocess errors and names") {
  CHECK_THROWS_AS(preprocess(TimeSeries({1, 2}), Preprocess::diff), DataError);
  CHECK_THROWS_AS(preprocess(TimeSeries({1, -2, 3}), Preprocess::log_diff), DataError);
  CHECK(parse_preprocess("log-diff") == Preprocess::log_diff);
  CHECK(to_string(Preprocess::diff) == "diff");
  CHECK_THROWS_AS(parse_preprocess("logdiff"), InvalidArgument);
}

TEST_CASE("property: diff output length is input length - 1") {
  for (std::size_t n = 3; n < 40; ++n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = std::sin(static_cast<double>(i)) + 2.0;
    CHECK(preprocess(TimeSeries(v), Preprocess::diff).size() == n - 1);
    CHECK(preprocess(TimeSeries(v), Preprocess::log_diff).size() == n - 1);
  }
}

TEST_CASE("property: save/load round trip is bit exact") {
  std::vector<double> v = {0.1, 1.0 / 3.0, -2.5e-300, 1.7976931348623157e308, 4.9e-324,
                           -0.0, 123456789.123456789, std::nextafter(1.0, 2.0)};
  const TimeSeries s(v, "flow");
  const auto path = std::filesystem::temp_directory_path() / "heavytail_roundtrip.csv";
  save_series(s, path);
  const auto back = load_series(path, std::string("flow"));
  std::filesystem::remove(path);
  REQUIRE(back.size() == v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    CHECK(std::signbit(back.values()[i]) == std::signbit(v[i]));
    CHECK(back.values()[i] == v[i]);
  }
  CHECK(parse_series(format_series_csv(TimeSeries(v)), std::string("value")).values() == v);
}
