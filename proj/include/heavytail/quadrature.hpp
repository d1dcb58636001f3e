#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace heavytail::quadrature {

struct Result {
  double value = 0.0;
  double abs_error = 0.0;   // estimated, summed over subintervals
  std::size_t intervals = 0;
};

using Integrand = std::function<double(double)>;

// Globally adaptive 10/21-point Gauss-Kronrod integration.
//
// The integral is taken over [breakpoints.front(), breakpoints.back()],
// seeded with one subinterval per consecutive pair of breakpoints. The
// subinterval with the largest error estimate is bisected until the summed
// error estimate drops to abs_tol. Throws ConvergenceError carrying the
// achieved error if max_intervals is exhausted first.
Result integrate(const Integrand& f, std::span<const double> breakpoints,
                 double abs_tol, std::size_t max_intervals = 100000);

// Single fixed 21-point Kronrod rule with its 10-point Gauss companion.
Result gauss_kronrod21(const Integrand& f, double a, double b);

} // namespace heavytail::quadrature
