#include "heavytail/quadrature.hpp"

#include "heavytail/error.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

namespace heavytail::quadrature {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
using Gauss = boost::math::quadrature::gauss<double, 10>;

struct Piece {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Piece& other) const { return error < other.error; }
};

} // namespace

Result gauss_kronrod21(const Integrand& f, double a, double b) {
  // Kronrod abscissae are stored for x >= 0 with the centre first; with a
  // Gauss order of 10 the Gauss nodes sit at odd indices.
  const auto& xk = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();

  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double fc = f(centre);
  double kronrod = fc * wk[0];
  double gauss = 0.0;
  for (std::size_t i = 1; i < xk.size(); ++i) {
    const double dx = half * xk[i];
    const double pair = f(centre - dx) + f(centre + dx);
    kronrod += pair * wk[i];
    if (i % 2 == 1) gauss += pair * wg[i / 2];
  }
  kronrod *= half;
  gauss *= half;
  return {kronrod, std::abs(kronrod - gauss), 1};
}

Result integrate(const Integrand& f, std::span<const double> breakpoints,
                 double abs_tol, std::size_t max_intervals) {
  if (breakpoints.size() < 2) {
    throw InvalidArgument("quadrature needs at least two breakpoints");
  }

  std::priority_queue<Piece> heap;
  double total = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double a = breakpoints[i];
    const double b = breakpoints[i + 1];
    if (!(b > a)) continue;
    const auto r = gauss_kronrod21(f, a, b);
    heap.push({a, b, r.value, r.abs_error});
    total += r.value;
    error += r.abs_error;
  }

  while (error > abs_tol && !heap.empty()) {
    if (heap.size() >= max_intervals) {
      std::ostringstream msg;
      msg << "adaptive quadrature did not converge: achieved error " << error
          << " > tolerance " << abs_tol << " after " << heap.size()
          << " subintervals";
      throw ConvergenceError(msg.str(), error);
    }
    const Piece worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Interval cannot be split further in floating point.
      std::ostringstream msg;
      msg << "adaptive quadrature hit floating-point resolution at [" << worst.a
          << ", " << worst.b << "] with achieved error " << error;
      throw ConvergenceError(msg.str(), error);
    }
    heap.pop();
    const auto left = gauss_kronrod21(f, worst.a, mid);
    const auto right = gauss_kronrod21(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.abs_error + right.abs_error - worst.error;
    heap.push({worst.a, mid, left.value, left.abs_error});
    heap.push({mid, worst.b, right.value, right.abs_error});
  }

  // Re-sum from scratch; the running totals accumulate cancellation noise.
  Result out;
  out.intervals = heap.size();
  std::vector<Piece> pieces;
  pieces.reserve(heap.size());
  while (!heap.empty()) {
    pieces.push_back(heap.top());
    heap.pop();
  }
  std::sort(pieces.begin(), pieces.end(),
            [](const Piece& l, const Piece& r) { return l.a < r.a; });
  for (const auto& p : pieces) {
    out.value += p.value;
    out.abs_error += p.error;
  }
  return out;
}

} // namespace heavytail::quadrature
