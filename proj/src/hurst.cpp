#include "heavytail/hurst.hpp"

#include "heavytail/error.hpp"
#include "heavytail/numfmt.hpp"

#include <algorithm>
#include <cmath>

namespace heavytail {

double rescaled_range(std::span<const double> segment) {
  const std::size_t n = segment.size();
  if (n < 2) throw InvalidArgument("rescaled_range: segment needs at least 2 values");

  const auto [lo, hi] = std::minmax_element(segment.begin(), segment.end());
  if (*lo == *hi) throw DegenerateSegment("rescaled_range: constant segment has zero variance");

  double mean = 0.0;
  for (double v : segment) mean += v;
  mean /= static_cast<double>(n);

  double cumulative = 0.0;
  double cmin = 0.0;
  double cmax = 0.0;
  double ss = 0.0;
  for (double v : segment) {
    const double d = v - mean;
    cumulative += d;
    cmin = std::min(cmin, cumulative);
    cmax = std::max(cmax, cumulative);
    ss += d * d;
  }
  const double sd = std::sqrt(ss / static_cast<double>(n));
  if (!(sd > 0.0)) throw DegenerateSegment("rescaled_range: zero standard deviation");
  return (cmax - cmin) / sd;
}

std::vector<RSPoint> rs_curve(const TimeSeries& series, std::size_t min_window,
                              std::optional<std::size_t> max_window) {
  const auto& x = series.values();
  const std::size_t n = x.size();
  if (n < kMinSeriesForRS) {
    throw InvalidArgument("rs_curve: series length " + std::to_string(n) +
                          " is below the minimum of " + std::to_string(kMinSeriesForRS));
  }
  const std::size_t max_w = max_window.value_or(n / 2);
  if (min_window < kMinWindow) {
    throw InvalidArgument("rs_curve: min_window must be >= " + std::to_string(kMinWindow));
  }
  if (max_w > n / 2) {
    throw InvalidArgument("rs_curve: max_window " + std::to_string(max_w) +
                          " exceeds half the series length (" + std::to_string(n / 2) + ")");
  }
  if (max_w < min_window) throw InvalidArgument("rs_curve: max_window is below min_window");

  std::vector<RSPoint> points;
  for (std::size_t w = min_window; w <= max_w; w *= 2) {
    const std::size_t count = n / w;
    double total = 0.0;
    std::size_t used = 0;
    for (std::size_t k = 0; k < count; ++k) {
      const std::span<const double> window(x.data() + k * w, w);
      const auto [lo, hi] = std::minmax_element(window.begin(), window.end());
      if (*lo == *hi) continue;
      total += rescaled_range(window);
      ++used;
    }
    if (used == 0) {
      throw DegenerateSegment("rs_curve: every window of size " + std::to_string(w) +
                              " is constant");
    }
    points.push_back({w, total / static_cast<double>(used)});
  }
  if (points.size() < 3) {
    throw InvalidArgument("rs_curve: window ladder from " + std::to_string(min_window) + " to " +
                          std::to_string(max_w) + " yields " + std::to_string(points.size()) +
                          " sizes; at least 3 are required");
  }
  return points;
}

HurstEstimate fit_hurst(std::span<const RSPoint> points) {
  const std::size_t m = points.size();
  if (m < 3) {
    throw InvalidArgument("fit_hurst: need at least 3 points, got " + std::to_string(m));
  }
  std::vector<double> lx(m);
  std::vector<double> ly(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (points[i].window_size == 0 || !(points[i].mean_rs > 0.0)) {
      throw InvalidArgument("fit_hurst: window sizes and mean R/S must be positive");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (points[j].window_size == points[i].window_size) {
        throw InvalidArgument("fit_hurst: duplicate window size " +
                              std::to_string(points[i].window_size));
      }
    }
    lx[i] = std::log(static_cast<double>(points[i].window_size));
    ly[i] = std::log(points[i].mean_rs);
  }

  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);

  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double dx = lx[i] - mx;
    const double dy = ly[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }

  HurstEstimate est;
  est.h = sxy / sxx;
  est.intercept_log_a = my - est.h * mx;
  if (!(est.h > 0.0 && est.h < 1.0)) {
    throw FitError("fit_hurst: fitted h = " + format_double(est.h) +
                   " lies outside (0, 1); the rescaled-range model does not apply");
  }
  double ss_res = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = ly[i] - (est.intercept_log_a + est.h * lx[i]);
    ss_res += r * r;
  }
  est.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;

  const auto tail = alpha_from_hurst(est.h);
  est.alpha_implied = tail.alpha;
  est.alpha_clamped = tail.clamped;
  est.points.assign(points.begin(), points.end());
  return est;
}

TailIndex alpha_from_hurst(double h) {
  if (!(h > 0.0 && h < 1.0)) {
    throw InvalidArgument("alpha_from_hurst: h = " + format_double(h) + " is outside (0, 1)");
  }
  const double alpha = 1.0 / h;
  if (alpha > 2.0) return {2.0, true};
  return {alpha, false};
}

HurstEstimate estimate_hurst(const TimeSeries& series, std::size_t min_window,
                             std::optional<std::size_t> max_window) {
  const auto points = rs_curve(series, min_window, max_window);
  return fit_hurst(points);
}

} // namespace heavytail
