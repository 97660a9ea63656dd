#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "acfree/series.hpp"

namespace acfree {

// Floating point is confined to this header: the closed-form density of the
// anticommutator of two free copies of the two-point law (delta_0+delta_2)/2,
// and the quadrature that verifies it against the exact series moments.

/// Density of ab+ba for free a, b with law (delta_0+delta_2)/2, supported on
/// [-1,8].  Defined on the open set (-1,0) u (0,8); throws std::domain_error
/// elsewhere (including the endpoints and 0).
inline double anticommutator_density_two_point(double x) {
  constexpr double pi = 3.14159265358979323846;
  if (x > -1.0 && x < 0.0) {
    const double inner = -1.0 - std::sqrt((x - 8.0) / x) - 4.0 / x;
    const double denominator = 8.0 - 3.0 * std::sqrt((x - 8.0) * x) - x;
    return std::sqrt(2.0) / pi * std::sqrt(inner) / denominator;
  }
  if (x > 0.0 && x < 8.0) {
    const double s = std::sqrt(1.0 + x);
    const double numerator = std::sqrt(x * (4.0 * s - x - 4.0)) +
                             3.0 * std::sqrt((8.0 - x) * (4.0 * s + x + 4.0)) -
                             8.0 * std::sqrt((4.0 * s - 4.0 - x) / x);
    return numerator / (pi * 8.0 * (8.0 - x) * (1.0 + x));
  }
  throw std::domain_error("density is defined on (-1,0) u (0,8)");
}

namespace detail {

// Rearranged forms of the same density with the cancelling factors divided
// out: on (-1,0) the radicand equals 16(x+1)/((x+4+w)|x|) and the
// denominator equals 8(8-x)(x+1)/(8-x+3w) with w = sqrt((x-8)x); on (0,8)
// the inner difference equals x(8-x)/(4 sqrt(1+x)+x+4).  These evaluate
// stably at the inverse-square-root edges; agreement with the literal form
// is asserted by the tests.

inline double density_negative_stable(double x) {
  constexpr double pi = 3.14159265358979323846;
  const double w = std::sqrt((x - 8.0) * x);
  return std::sqrt(2.0) * (8.0 - x + 3.0 * w) /
         (2.0 * pi * (8.0 - x) * std::sqrt(x + 1.0) * std::sqrt((x + 4.0 + w) * (-x)));
}

inline double density_positive_stable(double x) {
  constexpr double pi = 3.14159265358979323846;
  const double s = std::sqrt(1.0 + x);
  const double q = 4.0 * s + x + 4.0;
  return (3.0 * s + x + 1.0) / (2.0 * pi * (1.0 + x) * std::sqrt((8.0 - x) * q));
}

/// Adaptive Simpson on a smooth integrand.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fm, double fb, double whole, double tolerance,
                               int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tolerance)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tolerance, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tolerance, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tolerance) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tolerance, 48);
}

}  // namespace detail

/// Integral of x^k * density over the support.  Substituting
/// x = endpoint +- t^2 near -1, 0 and 8 and cancelling the square-root
/// factors analytically leaves four smooth integrands with no singular
/// evaluations, even at t = 0.
inline double density_moment_quadrature(int k) {
  constexpr double pi = 3.14159265358979323846;
  const double tol = 1e-11;
  auto xk = [k](double x) {
    double p = 1.0;
    for (int i = 0; i < k; ++i) p *= x;
    return p;
  };
  // (-1, -1/2]: x = -1 + t^2; the 1/sqrt(x+1) edge factor cancels against dx
  auto left_edge = [&](double t) {
    const double x = -1.0 + t * t;
    const double w = std::sqrt((x - 8.0) * x);
    return xk(x) * std::sqrt(2.0) * (8.0 - x + 3.0 * w) /
           (pi * (8.0 - x) * std::sqrt((x + 4.0 + w) * (-x)));
  };
  // [-1/2, 0): x = -t^2; the 1/sqrt(-x) factor cancels
  auto zero_minus = [&](double t) {
    const double x = -t * t;
    const double w = std::sqrt((x - 8.0) * x);
    return xk(x) * std::sqrt(2.0) * (8.0 - x + 3.0 * w) /
           (pi * (8.0 - x) * std::sqrt((x + 1.0) * (x + 4.0 + w)));
  };
  // (0, 4]: x = t^2; the density is bounded here, only the kink is removed
  auto zero_plus = [&](double t) {
    const double x = t * t;
    return xk(x) * detail::density_positive_stable(x) * 2.0 * t;
  };
  // [4, 8): x = 8 - t^2; the 1/sqrt(8-x) factor cancels
  auto right_edge = [&](double t) {
    const double x = 8.0 - t * t;
    const double s = std::sqrt(1.0 + x);
    return xk(x) * (3.0 * s + x + 1.0) /
           (pi * (1.0 + x) * std::sqrt(4.0 * s + x + 4.0));
  };
  const double half_root = std::sqrt(0.5);
  return detail::integrate(left_edge, 0.0, half_root, tol) +
         detail::integrate(zero_minus, 0.0, half_root, tol) +
         detail::integrate(zero_plus, 0.0, 2.0, tol) +
         detail::integrate(right_edge, 0.0, 2.0, tol);
}

struct DensityMomentReport {
  struct Row {
    int k = 0;
    double quadrature = 0.0;
    double series = 0.0;
    double abs_error = 0.0;
  };
  std::vector<Row> rows;
  double max_abs_error = 0.0;
  bool pass = false;
};

/// Integrates x^k against the closed-form density for k = 0..max_moment and
/// compares with the exact moments coming out of the fixed-point solver for
/// eta = z/(1-z).  Tolerance 1e-6 per moment.
inline DensityMomentReport verify_two_point_density(int max_moment) {
  if (max_moment < 0) throw std::invalid_argument("max_moment must be non-negative");
  const int order = std::max(1, max_moment);
  const RationalSeries eta =
      shift_up(geometric_inverse(RationalSeries::monomial(order, 1)), 1);
  const MomentSequence moments = moments_from_eta(solve_anticommutator_same(eta, order).eta_ac);

  DensityMomentReport report;
  for (int k = 0; k <= max_moment; ++k) {
    DensityMomentReport::Row row;
    row.k = k;
    row.quadrature = density_moment_quadrature(k);
    row.series = k == 0 ? 1.0 : to_double(moments.moment(k));
    row.abs_error = std::abs(row.quadrature - row.series);
    report.max_abs_error = std::max(report.max_abs_error, row.abs_error);
    report.rows.push_back(row);
  }
  report.pass = report.max_abs_error <= 1e-6;
  return report;
}

}  // namespace acfree
