#include "heavytail/error.hpp"
#include "heavytail/hurst.hpp"
#include "heavytail/numfmt.hpp"
#include "heavytail/random.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>

namespace heavytail {

namespace {

// FFTW planning is not thread-safe; execution with a private plan is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

// In-place forward DFT: out[k] = sum_j in[j] exp(-2 pi i j k / m).
void forward_dft(std::vector<std::complex<double>>& data) {
  const int m = static_cast<int>(data.size());
  std::unique_ptr<fftw_complex, FftwFree> buf(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * data.size())));
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_1d(m, buf.get(), buf.get(), FFTW_FORWARD, FFTW_ESTIMATE);
  }
  for (int i = 0; i < m; ++i) {
    buf.get()[i][0] = data[i].real();
    buf.get()[i][1] = data[i].imag();
  }
  fftw_execute(plan);
  for (int i = 0; i < m; ++i) data[i] = {buf.get()[i][0], buf.get()[i][1]};
  std::lock_guard lock(fftw_planner_mutex());
  fftw_destroy_plan(plan);
}

std::vector<double> durbin_levinson(std::span<const double> acov, Rng& rng) {
  const std::size_t n = acov.size();
  std::vector<double> x(n);
  std::vector<double> phi(n, 0.0);
  std::vector<double> prev(n, 0.0);
  double v = acov[0];
  if (!(v > 0.0)) throw FitError("autocovariance is not positive definite (lag-0 variance <= 0)");
  x[0] = std::sqrt(v) * rng.normal();
  for (std::size_t t = 1; t < n; ++t) {
    // Reflection coefficient for order t.
    double num = acov[t];
    for (std::size_t j = 1; j < t; ++j) num -= prev[j] * acov[t - j];
    const double k = num / v;
    phi[t] = k;
    for (std::size_t j = 1; j < t; ++j) phi[j] = prev[j] - k * prev[t - j];
    v *= (1.0 - k * k);
    if (!(v > 0.0) || std::abs(k) >= 1.0) {
      throw FitError("autocovariance is not positive definite at order " + std::to_string(t));
    }
    double mean = 0.0;
    for (std::size_t j = 1; j <= t; ++j) mean += phi[j] * x[t - j];
    x[t] = mean + std::sqrt(v) * rng.normal();
    std::copy(phi.begin(), phi.begin() + static_cast<std::ptrdiff_t>(t) + 1, prev.begin());
  }
  return x;
}

} // namespace

double fgn_autocovariance(double h, std::size_t lag) {
  const double k = static_cast<double>(lag);
  const double e = 2.0 * h;
  return 0.5 * (std::pow(k + 1.0, e) - 2.0 * std::pow(k, e) + std::pow(std::abs(k - 1.0), e));
}

namespace detail {

std::vector<double> circulant_spectrum(std::span<const double> acov) {
  const std::size_t len = acov.size();
  const std::size_t m = 2 * (len - 1);
  std::vector<std::complex<double>> c(m);
  for (std::size_t k = 0; k < len; ++k) c[k] = acov[k];
  for (std::size_t k = 1; k + 1 < len; ++k) c[m - k] = acov[k];
  forward_dft(c);
  std::vector<double> lambda(m);
  for (std::size_t k = 0; k < m; ++k) lambda[k] = c[k].real();
  return lambda;
}

std::vector<double> gaussian_from_autocovariance(std::span<const double> acov,
                                                 std::uint64_t seed, FgnMethod method,
                                                 FgnMethod* used) {
  if (acov.size() < 2) throw InvalidArgument("autocovariance needs at least 2 lags");
  Rng rng(seed);

  if (method != FgnMethod::durbin_levinson) {
    const auto lambda = circulant_spectrum(acov);
    const double top = *std::max_element(lambda.begin(), lambda.end());
    const double bottom = *std::min_element(lambda.begin(), lambda.end());
    if (bottom >= -1e-10 * std::max(top, 1.0)) {
      const std::size_t m = lambda.size();
      std::vector<std::complex<double>> w(m);
      for (std::size_t k = 0; k < m; ++k) {
        const double scale = std::sqrt(std::max(lambda[k], 0.0) / static_cast<double>(m));
        const double re = rng.normal();
        const double im = rng.normal();
        w[k] = {scale * re, scale * im};
      }
      forward_dft(w);
      std::vector<double> out(acov.size());
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = w[i].real();
      if (used) *used = FgnMethod::circulant;
      return out;
    }
    if (method == FgnMethod::circulant) {
      throw FitError("circulant embedding is not non-negative definite (min eigenvalue " +
                     format_double(bottom) + ")");
    }
  }
  if (used) *used = FgnMethod::durbin_levinson;
  return durbin_levinson(acov, rng);
}

} // namespace detail

TimeSeries generate_fgn(double h, std::size_t n, std::uint64_t seed, FgnMethod method) {
  if (!(h > 0.0 && h < 1.0)) {
    throw InvalidArgument("generate_fgn: h = " + format_double(h) + " is outside (0, 1)");
  }
  if (n < 2) throw InvalidArgument("generate_fgn: n must be at least 2");

  // Durbin-Levinson works at any length; the circulant path wants 2N to be a
  // power of two, so it synthesizes N + 1 lags with N = bit_ceil(n).
  const std::size_t lags = method == FgnMethod::durbin_levinson ? n : std::bit_ceil(n) + 1;
  std::vector<double> acov(lags);
  for (std::size_t k = 0; k < lags; ++k) acov[k] = fgn_autocovariance(h, k);

  auto path = detail::gaussian_from_autocovariance(acov, seed, method);
  path.resize(n);
  return TimeSeries(std::move(path), "fgn", "unit");
}

} // namespace heavytail
