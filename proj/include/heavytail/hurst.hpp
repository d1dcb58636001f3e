#pragma once

#include "heavytail/ingest.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace heavytail {

// Average rescaled range over the complete windows of one size.
struct RSPoint {
  std::size_t window_size = 0;
  double mean_rs = 0.0;

  bool operator==(const RSPoint&) const = default;
};

struct HurstEstimate {
  double h = 0.0;
  double alpha_implied = 0.0;   // min(2, 1/h)
  bool alpha_clamped = false;   // true when 1/h exceeded 2
  double intercept_log_a = 0.0; // natural log of the prefactor a in R/S = a n^h
  double r_squared = 0.0;
  std::vector<RSPoint> points;

  bool operator==(const HurstEstimate&) const = default;
};

struct TailIndex {
  double alpha = 0.0;
  bool clamped = false;
};

inline constexpr std::size_t kMinWindow = 8;
inline constexpr std::size_t kMinSeriesForRS = 32;

// R/S of one segment: range of the cumulative mean-adjusted sums over the
// population standard deviation. Throws DegenerateSegment for a constant
// segment and InvalidArgument for fewer than two values.
double rescaled_range(std::span<const double> segment);

// Mean R/S on the ladder min_window, 2*min_window, ... <= max_window, using
// floor(N/n) non-overlapping windows per size. Degenerate windows are
// skipped. max_window of nullopt means N/2.
std::vector<RSPoint> rs_curve(const TimeSeries& series, std::size_t min_window = kMinWindow,
                              std::optional<std::size_t> max_window = std::nullopt);

// OLS of log(mean_rs) on log(window_size). Throws FitError when the slope
// falls outside (0, 1).
HurstEstimate fit_hurst(std::span<const RSPoint> points);

// alpha = 1/h, clamped to the stable range (0, 2].
TailIndex alpha_from_hurst(double h);

// Convenience: rs_curve followed by fit_hurst.
HurstEstimate estimate_hurst(const TimeSeries& series, std::size_t min_window = kMinWindow,
                             std::optional<std::size_t> max_window = std::nullopt);

// --- fractional Gaussian noise -------------------------------------------

enum class FgnMethod {
  automatic,  // circulant embedding, falling back to durbin_levinson
  circulant,  // Davies-Harte spectral synthesis only
  durbin_levinson,  // exact O(n^2) sequential conditioning
};

// Autocovariance of unit-variance fGn at integer lag k:
// 0.5 (|k+1|^{2h} - 2|k|^{2h} + |k-1|^{2h}).
double fgn_autocovariance(double h, std::size_t lag);

// Zero-mean unit-variance fGn of length n. Deterministic in (h, n, seed,
// method). Lengths that are not a power of two are synthesized at the next
// power of two and truncated.
TimeSeries generate_fgn(double h, std::size_t n, std::uint64_t seed,
                        FgnMethod method = FgnMethod::automatic);

namespace detail {

// Gaussian sample path of length acov.size() with the given stationary
// autocovariance. Circulant embedding is tried first unless disabled; when
// its spectrum has a negative eigenvalue the Durbin-Levinson recursion is
// used. Throws FitError if the autocovariance is not positive definite.
std::vector<double> gaussian_from_autocovariance(std::span<const double> acov,
                                                 std::uint64_t seed, FgnMethod method,
                                                 FgnMethod* used = nullptr);

// Eigenvalues of the 2(n-1) circulant embedding of acov.
std::vector<double> circulant_spectrum(std::span<const double> acov);

} // namespace detail

} // namespace heavytail
