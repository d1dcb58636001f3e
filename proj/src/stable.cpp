#include "heavytail/stable.hpp"

#include "heavytail/error.hpp"
#include "heavytail/numfmt.hpp"
#include "heavytail/quadrature.hpp"
#include "heavytail/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace heavytail {

using std::numbers::pi;

StableParams::StableParams(double alpha, double beta, double gamma, double loc)
    : alpha_(alpha), beta_(beta), gamma_(gamma), loc_(loc) {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw InvalidArgument("stable: alpha = " + format_double(alpha) + " is outside (0, 2]");
  }
  if (!(beta >= -1.0 && beta <= 1.0)) {
    throw InvalidArgument("stable: beta = " + format_double(beta) + " is outside [-1, 1]");
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw InvalidArgument("stable: gamma = " + format_double(gamma) + " must be positive");
  }
  if (!std::isfinite(loc)) throw InvalidArgument("stable: location must be finite");
  if (alpha_ == 2.0) beta_ = 0.0;
}

double StableParams::scale() const noexcept { return std::pow(gamma_, 1.0 / alpha_); }

namespace {

// Phase contributed by the skew term at t > 0 for the standardized law.
double skew_phase(double alpha, double beta, double t) {
  if (beta == 0.0 || alpha == 2.0) return 0.0;
  if (alpha == 1.0) return -beta * (2.0 / pi) * t * std::log(t);
  return beta * std::tan(pi * alpha / 2.0) * std::pow(t, alpha);
}

// exp(-t^alpha) < 1e-20 beyond this point.
double fourier_upper_limit(double alpha) { return std::pow(46.0, 1.0 / alpha); }

std::vector<double> fourier_breakpoints(double alpha, double beta, double z) {
  const double upper = fourier_upper_limit(alpha);
  std::vector<double> pts{0.0, upper};
  // Endpoint singularities in the derivative (alpha < 1, or the t log t
  // phase at alpha == 1) want a geometric grading towards zero.
  if (alpha < 1.0 || (alpha == 1.0 && beta != 0.0)) {
    for (int k = 1; k <= 30; ++k) pts.push_back(std::ldexp(std::min(upper, 1.0), -k));
  }
  for (int k = 1; k < 16; ++k) pts.push_back(upper * k / 16.0);
  const double az = std::abs(z);
  if (az > 0.0) {
    // Zeros of cos(t z).
    const double step = pi / az;
    for (double t = 0.5 * step; t < upper; t += step) pts.push_back(t);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

constexpr std::size_t kMaxIntervals = 400000;

double gaussian_pdf_var2(double z) { return std::exp(-0.25 * z * z) / (2.0 * std::sqrt(pi)); }

// Zolotarev representation for the standardized law in the conventional
// (Samorodnitsky-Taqqu) sign of beta, z > 0 only.
struct TailIntegrals {
  double pdf = 0.0;
  double cdf = 0.0;
  double sf = 0.0;
};

double relative_tolerance_integral(const quadrature::Integrand& f,
                                   const std::vector<double>& pts) {
  double rough = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    rough += std::abs(quadrature::gauss_kronrod21(f, pts[i], pts[i + 1]).value);
  }
  if (rough == 0.0) return 0.0;
  const double tol = std::max(rough * 1e-11, std::numeric_limits<double>::min());
  return quadrature::integrate(f, pts, tol, kMaxIntervals).value;
}

// Breakpoints on [lo, hi] graded geometrically towards the integrand peak,
// which can be far narrower than the interval.
std::vector<double> peak_breakpoints(double lo, double hi, std::optional<double> peak) {
  std::vector<double> pts{lo, hi};
  if (!peak) return pts;
  pts.push_back(*peak);
  const double width = hi - lo;
  for (int k = 1; k <= 45; ++k) {
    const double d = std::ldexp(width, -k);
    if (*peak - d > lo) pts.push_back(*peak - d);
    if (*peak + d < hi) pts.push_back(*peak + d);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// Bisection for the root of a monotone function on (lo, hi); returns nullopt
// if it does not change sign.
template <class F>
std::optional<double> monotone_root(F g, double lo, double hi) {
  const double eps = 1e-12 * (hi - lo);
  double a = lo + eps;
  double b = hi - eps;
  double ga = g(a);
  double gb = g(b);
  if (!std::isfinite(ga) || !std::isfinite(gb) || (ga > 0) == (gb > 0)) {
    // Fall back to sampling the interior for a sign change.
    const int n = 64;
    double prev_x = a;
    double prev_g = ga;
    bool found = false;
    for (int i = 1; i <= n; ++i) {
      const double x = a + (b - a) * i / n;
      const double gx = g(x);
      if (std::isfinite(prev_g) && std::isfinite(gx) && (prev_g > 0) != (gx > 0)) {
        a = prev_x;
        b = x;
        ga = prev_g;
        found = true;
        break;
      }
      prev_x = x;
      prev_g = gx;
    }
    if (!found) return std::nullopt;
  }
  for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
    const double mid = 0.5 * (a + b);
    const double gm = g(mid);
    if ((gm > 0) == (ga > 0)) {
      a = mid;
      ga = gm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

TailIntegrals zolotarev_positive(double alpha, double b, double z) {
  TailIntegrals out;
  if (alpha == 1.0) {
    // b > 0 required here; callers reflect.
    const double shift = -pi * z / (2.0 * b);
    const auto log_u = [=](double th) {
      return shift + std::log(2.0 / pi) + std::log(pi / 2.0 + b * th) - std::log(std::cos(th)) +
             (pi / 2.0 + b * th) * std::tan(th) / b;
    };
    const double lo = -pi / 2.0;
    const double hi = pi / 2.0;
    const auto pts = peak_breakpoints(lo, hi, monotone_root(log_u, lo, hi));
    const auto f_pdf = [&](double th) {
      const double lu = log_u(th);
      if (!(lu < 700.0)) return 0.0;
      const double u = std::exp(lu);
      return std::exp(lu - u);
    };
    const auto f_cdf = [&](double th) {
      const double lu = log_u(th);
      if (!(lu < 700.0)) return 0.0;
      return std::exp(-std::exp(lu));
    };
    const auto f_sf = [&](double th) {
      const double lu = log_u(th);
      if (!(lu < 700.0)) return 1.0;
      return -std::expm1(-std::exp(lu));
    };
    out.pdf = relative_tolerance_integral(f_pdf, pts) / (2.0 * b);
    out.cdf = relative_tolerance_integral(f_cdf, pts) / pi;
    out.sf = relative_tolerance_integral(f_sf, pts) / pi;
    return out;
  }

  const double theta0 = std::atan(b * std::tan(pi * alpha / 2.0)) / alpha;
  const double lo = -theta0;
  const double hi = pi / 2.0;
  const double am1 = alpha - 1.0;
  if (!(hi > lo)) {
    // No mass on the positive half-line.
    out.cdf = 1.0;
    return out;
  }
  const double log_z_term = alpha / am1 * std::log(z);
  const double log_cos_a0 = std::log(std::cos(alpha * theta0)) / am1;
  const auto log_u = [=](double th) {
    return log_z_term + log_cos_a0 +
           alpha / am1 * (std::log(std::cos(th)) - std::log(std::sin(alpha * (theta0 + th)))) +
           std::log(std::cos(alpha * theta0 + am1 * th)) - std::log(std::cos(th));
  };
  const auto pts = peak_breakpoints(lo, hi, monotone_root(log_u, lo, hi));

  const auto f_pdf = [&](double th) {
    const double lu = log_u(th);
    if (!(lu < 700.0)) return 0.0;
    const double u = std::exp(lu);
    return std::exp(lu - u);
  };
  const auto f_exp = [&](double th) {
    const double lu = log_u(th);
    if (!(lu < 700.0)) return 0.0;
    return std::exp(-std::exp(lu));
  };
  const auto f_one_minus_exp = [&](double th) {
    const double lu = log_u(th);
    if (!(lu < 700.0)) return 1.0;
    return -std::expm1(-std::exp(lu));
  };
  out.pdf = alpha / (pi * std::abs(am1) * z) * relative_tolerance_integral(f_pdf, pts);
  if (alpha > 1.0) {
    out.sf = relative_tolerance_integral(f_exp, pts) / pi;
    out.cdf = 1.0 - out.sf;
  } else {
    out.sf = relative_tolerance_integral(f_one_minus_exp, pts) / pi;
    out.cdf = (pi / 2.0 - theta0) / pi + relative_tolerance_integral(f_exp, pts) / pi;
  }
  return out;
}

// Dispatch on sign: b is in the conventional sign.
TailIntegrals zolotarev(double alpha, double b, double z) {
  if (alpha == 1.0 && b == 0.0) {
    throw InvalidArgument("zolotarev route is undefined for the symmetric alpha = 1 law");
  }
  if (z == 0.0) throw InvalidArgument("zolotarev route needs z != 0");
  // The alpha == 1 formula covers the whole line for b > 0.
  const bool reflect = alpha == 1.0 ? b < 0.0 : z < 0.0;
  if (!reflect) return zolotarev_positive(alpha, b, z);
  const auto r = zolotarev_positive(alpha, -b, -z);
  // pdf(z; b) = pdf(-z; -b), F(z; b) = 1 - F(-z; -b).
  return {r.pdf, r.sf, r.cdf};
}

double cauchy_pdf(double z) { return 1.0 / (pi * (1.0 + z * z)); }

// P(Z > z) for the standard Cauchy law without cancellation.
double cauchy_sf(double z) {
  return z > 0.0 ? std::atan2(1.0, z) / pi : 0.5 - std::atan(z) / pi;
}

enum class Route { fourier, gaussian, cauchy, zolotarev };

Route route_for(double alpha, double beta, double z) {
  if (std::abs(z) <= detail::tail_cutoff(alpha)) return Route::fourier;
  if (alpha == 2.0) return Route::gaussian;
  if (alpha == 1.0 && beta == 0.0) return Route::cauchy;
  return Route::zolotarev;
}

double standard_pdf(double alpha, double beta, double z, double tol) {
  switch (route_for(alpha, beta, z)) {
    case Route::fourier: return detail::fourier_pdf(alpha, beta, z, tol);
    case Route::gaussian: return gaussian_pdf_var2(z);
    case Route::cauchy: return cauchy_pdf(z);
    case Route::zolotarev: return detail::zolotarev_pdf(alpha, beta, z);
  }
  return 0.0;
}

double standard_cdf(double alpha, double beta, double z) {
  switch (route_for(alpha, beta, z)) {
    case Route::fourier: return detail::fourier_cdf(alpha, beta, z);
    case Route::gaussian: return 0.5 * std::erfc(-z / 2.0);
    case Route::cauchy: return cauchy_sf(-z);
    case Route::zolotarev: return detail::zolotarev_cdf(alpha, beta, z);
  }
  return 0.0;
}

double standard_survival(double alpha, double beta, double z) {
  switch (route_for(alpha, beta, z)) {
    case Route::fourier: return detail::fourier_survival(alpha, beta, z);
    case Route::gaussian: return 0.5 * std::erfc(z / 2.0);
    case Route::cauchy: return cauchy_sf(z);
    case Route::zolotarev: return detail::zolotarev_survival(alpha, beta, z);
  }
  return 0.0;
}

// Offset between x and scale * z: for alpha == 1 the scale enters the
// location through the log|t| skew term.
double location_shift(const StableParams& p) {
  if (p.alpha() != 1.0 || p.beta() == 0.0) return 0.0;
  const double c = p.scale();
  return (2.0 / pi) * p.beta() * c * std::log(c);
}

double standardize(const StableParams& p, double x) {
  return (x - p.loc() + location_shift(p)) / p.scale();
}

double destandardize(const StableParams& p, double z) {
  return p.scale() * z + p.loc() - location_shift(p);
}

} // namespace

namespace detail {

double tail_cutoff(double alpha) {
  if (alpha == 2.0) return 12.0;
  // Zolotarev's integrand degenerates as alpha -> 1.
  if (alpha != 1.0 && std::abs(alpha - 1.0) < 0.02) return std::numeric_limits<double>::infinity();
  return 20.0;
}

double fourier_pdf(double alpha, double beta, double z, double abs_tol) {
  const auto f = [=](double t) {
    return std::exp(-std::pow(t, alpha)) * std::cos(t * z + skew_phase(alpha, beta, t));
  };
  const auto pts = fourier_breakpoints(alpha, beta, z);
  const auto r = quadrature::integrate(f, pts, abs_tol * pi, kMaxIntervals);
  return std::max(0.0, r.value / pi);
}

namespace {
double fourier_sine_part(double alpha, double beta, double z, double abs_tol) {
  const auto f = [=](double t) {
    return std::exp(-std::pow(t, alpha)) * std::sin(t * z + skew_phase(alpha, beta, t)) / t;
  };
  const auto pts = fourier_breakpoints(alpha, beta, z);
  return quadrature::integrate(f, pts, abs_tol * pi, kMaxIntervals).value / pi;
}
} // namespace

double fourier_cdf(double alpha, double beta, double z, double abs_tol) {
  return std::clamp(0.5 + fourier_sine_part(alpha, beta, z, abs_tol), 0.0, 1.0);
}

double fourier_survival(double alpha, double beta, double z, double abs_tol) {
  return std::clamp(0.5 - fourier_sine_part(alpha, beta, z, abs_tol), 0.0, 1.0);
}

// This library's beta is the negated Samorodnitsky-Taqqu skewness.
double zolotarev_pdf(double alpha, double beta, double z) {
  return std::max(0.0, zolotarev(alpha, -beta, z).pdf);
}
double zolotarev_cdf(double alpha, double beta, double z) {
  return std::clamp(zolotarev(alpha, -beta, z).cdf, 0.0, 1.0);
}
double zolotarev_survival(double alpha, double beta, double z) {
  return std::clamp(zolotarev(alpha, -beta, z).sf, 0.0, 1.0);
}

} // namespace detail

std::complex<double> log_cf(const StableParams& p, double t) {
  if (!std::isfinite(t)) throw InvalidArgument("log_cf: t must be finite");
  if (t == 0.0) return {0.0, 0.0};
  const double at = std::abs(t);
  const double sign = t > 0.0 ? 1.0 : -1.0;
  double w = 0.0;
  if (p.alpha() == 2.0) {
    w = 0.0;
  } else if (p.alpha() == 1.0) {
    w = -(2.0 / pi) * std::log(at);
  } else {
    w = std::tan(pi * p.alpha() / 2.0);
  }
  const double mag = p.gamma() * std::pow(at, p.alpha());
  return {-mag, p.loc() * t - mag * p.beta() * sign * w};
}

double pdf(const StableParams& p, double x) {
  const double c = p.scale();
  const double tol = std::max(kPdfTolerance * std::min(c, 1.0), 1e-15);
  return standard_pdf(p.alpha(), p.beta(), standardize(p, x), tol) / c;
}

double cdf(const StableParams& p, double x) {
  return standard_cdf(p.alpha(), p.beta(), standardize(p, x));
}

double survival(const StableParams& p, double x) {
  return standard_survival(p.alpha(), p.beta(), standardize(p, x));
}

std::vector<double> pdf(const StableParams& p, std::span<const double> xs) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(pdf(p, x));
  return out;
}

std::vector<double> cdf(const StableParams& p, std::span<const double> xs) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(cdf(p, x));
  return out;
}

double quantile(const StableParams& p, double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw InvalidArgument("quantile: q = " + format_double(q) + " is outside (0, 1)");
  }
  const double alpha = p.alpha();
  const double beta = p.beta();
  // Work on whichever tail avoids cancellation.
  const bool upper = q > 0.5;
  const auto g = [&](double z) {
    return upper ? (1.0 - q) - standard_survival(alpha, beta, z)
                 : standard_cdf(alpha, beta, z) - q;
  };
  // g is non-decreasing in z in both branches.

  double lo = -1.0;
  double hi = 1.0;
  double glo = g(lo);
  double ghi = g(hi);
  for (int i = 0; glo > 0.0; ++i) {
    if (i > 2000) throw ConvergenceError("quantile: could not bracket the lower side", glo);
    hi = lo;
    ghi = glo;
    lo *= 2.0;
    glo = g(lo);
  }
  for (int i = 0; ghi < 0.0; ++i) {
    if (i > 2000) throw ConvergenceError("quantile: could not bracket the upper side", -ghi);
    lo = hi;
    glo = ghi;
    hi *= 2.0;
    ghi = g(hi);
  }

  // Illinois variant of regula falsi with a bisection safeguard.
  int side = 0;
  double z = 0.5 * (lo + hi);
  double gz = 0.0;
  for (int it = 0; it < 400; ++it) {
    const double width = hi - lo;
    z = (ghi != glo) ? hi - ghi * (hi - lo) / (ghi - glo) : 0.5 * (lo + hi);
    if (!(z > lo && z < hi) || it % 4 == 3) z = 0.5 * (lo + hi);
    gz = g(z);
    if (std::abs(gz) <= 0.1 * kQuantileTolerance || width <= 1e-15 * (1.0 + std::abs(z))) break;
    if (gz > 0.0) {
      hi = z;
      ghi = gz;
      if (side == 1) glo *= 0.5;
      side = 1;
    } else {
      lo = z;
      glo = gz;
      if (side == -1) ghi *= 0.5;
      side = -1;
    }
  }
  if (std::abs(gz) > kQuantileTolerance) {
    throw ConvergenceError("quantile: root search stalled with |cdf - q| = " +
                               format_double(std::abs(gz)),
                           std::abs(gz));
  }
  return destandardize(p, z);
}

std::vector<double> sample(const StableParams& p, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("sample: n must be positive");
  Rng rng(seed);
  std::vector<double> out(n);
  const double alpha = p.alpha();
  const double c = p.scale();

  if (alpha == 2.0) {
    // gamma |t|^2 is a normal law with variance 2 gamma.
    const double sd = std::sqrt(2.0 * p.gamma());
    for (auto& x : out) x = p.loc() + sd * rng.normal();
    return out;
  }

  // Conventional-sign skewness for the CMS formulas.
  const double b = -p.beta();
  if (alpha == 1.0) {
    for (auto& x : out) {
      const double v = pi * (rng.uniform_open() - 0.5);
      const double w = rng.exponential();
      const double hv = pi / 2.0 + b * v;
      const double z =
          (2.0 / pi) * (hv * std::tan(v) - b * std::log((pi / 2.0) * w * std::cos(v) / hv));
      x = destandardize(p, z);
    }
    return out;
  }

  const double tan_term = b * std::tan(pi * alpha / 2.0);
  const double shift = std::atan(tan_term) / alpha;
  const double factor = std::pow(1.0 + tan_term * tan_term, 1.0 / (2.0 * alpha));
  for (auto& x : out) {
    const double v = pi * (rng.uniform_open() - 0.5);
    const double w = rng.exponential();
    const double av = alpha * (v + shift);
    const double z = factor * std::sin(av) / std::pow(std::cos(v), 1.0 / alpha) *
                     std::pow(std::cos(v - av) / w, (1.0 - alpha) / alpha);
    x = p.loc() + c * z;
  }
  return out;
}

} // namespace heavytail
