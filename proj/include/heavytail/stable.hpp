#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace heavytail {

// Parameters of the stable-Paretian law with log characteristic function
//
//   log f(t) = i loc t - gamma |t|^alpha (1 + i beta sign(t) w(t)),
//   w(t) = tan(pi alpha / 2)            for alpha != 1,
//   w(t) = -(2 / pi) log|t|             for alpha == 1.
//
// gamma multiplies |t|^alpha, so alpha = 2, gamma = 1 is the normal law with
// variance 2. The sign in front of beta is the opposite of the common
// Samorodnitsky-Taqqu form: positive beta here skews to the left there.
class StableParams {
public:
  // Throws InvalidArgument unless 0 < alpha <= 2, -1 <= beta <= 1,
  // gamma > 0 and loc finite. beta is forced to 0 when alpha == 2.
  StableParams(double alpha, double beta, double gamma, double loc);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double gamma() const noexcept { return gamma_; }
  double loc() const noexcept { return loc_; }

  // gamma^(1/alpha): the length scale of the law.
  double scale() const noexcept;

  bool operator==(const StableParams&) const = default;

private:
  double alpha_;
  double beta_;
  double gamma_;
  double loc_;
};

// Absolute tolerances targeted by the numerical inversion.
inline constexpr double kPdfTolerance = 1e-8;
inline constexpr double kCdfTolerance = 1e-7;
inline constexpr double kQuantileTolerance = 1e-7;

std::complex<double> log_cf(const StableParams& p, double t);

// Density and distribution function by numerical inversion of the
// characteristic function. Throws ConvergenceError if the quadrature cannot
// meet its tolerance.
double pdf(const StableParams& p, double x);
double cdf(const StableParams& p, double x);
// 1 - cdf, computed without cancellation in the upper tail.
double survival(const StableParams& p, double x);

std::vector<double> pdf(const StableParams& p, std::span<const double> xs);
std::vector<double> cdf(const StableParams& p, std::span<const double> xs);

// x with |cdf(x) - q| <= kQuantileTolerance, 0 < q < 1.
double quantile(const StableParams& p, double q);

// Chambers-Mallows-Stuck draws; alpha == 2 uses exact Gaussian sampling.
std::vector<double> sample(const StableParams& p, std::size_t n, std::uint64_t seed);

namespace detail {

// Numerical routes for the standardized law (gamma = 1, loc = 0), exposed
// so tests can cross-check them where both apply.

// Fourier inversion of the characteristic function.
double fourier_pdf(double alpha, double beta, double z, double abs_tol = kPdfTolerance);
double fourier_cdf(double alpha, double beta, double z, double abs_tol = kCdfTolerance);
double fourier_survival(double alpha, double beta, double z, double abs_tol = kCdfTolerance);

// Zolotarev's non-oscillatory integral representation, used for the far
// tails. Defined for alpha < 2 except alpha == 1 with beta == 0.
double zolotarev_pdf(double alpha, double beta, double z);
double zolotarev_cdf(double alpha, double beta, double z);
double zolotarev_survival(double alpha, double beta, double z);

// |z| beyond which pdf/cdf switch from Fourier inversion to the tail route.
double tail_cutoff(double alpha);

} // namespace detail

} // namespace heavytail
