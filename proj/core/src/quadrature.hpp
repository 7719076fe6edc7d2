#pragma once

// Piecewise adaptive Gauss-Kronrod quadrature built on Boost.Math.

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "calogero/errors.hpp"

namespace calogero::quad {

struct QuadOptions {
  double rel_tol = 1e-12;
  unsigned max_depth = 12;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

/// ∫_a^b f over the partition induced by `breaks` (points outside (a, b) are ignored).
template <class F>
QuadResult integrate(F&& f, double a, double b, const QuadOptions& opt = {},
                     std::vector<double> breaks = {}) {
  if (a == b) return {};
  const double sign = b > a ? 1.0 : -1.0;
  if (sign < 0) std::swap(a, b);
  std::vector<double> pts{a};
  for (double p : breaks)
    if (p > a && p < b) pts.push_back(p);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  const double min_width = 1e-9 * (b - a);
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [min_width](double x, double y) { return y - x < min_width; }),
            pts.end());
  pts.back() = b;

  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  // A single Kronrod pass per piece sizes the global scale, so that pieces carrying a
  // negligible share of the integral are not refined to their own relative tolerance.
  std::vector<double> coarse_l1(pts.size() - 1);
  double scale = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double l1 = 0.0;
    GK::integrate(f, pts[i], pts[i + 1], 0, 0.0, nullptr, &l1);
    coarse_l1[i] = l1;
    scale += l1;
  }
  QuadResult total;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double share = coarse_l1[i] > 0.0 ? coarse_l1[i] / scale : 0.0;
    if (share == 0.0) continue;
    const double tol = std::min(0.1, opt.rel_tol / share);
    double err = 0.0;
    total.value += GK::integrate(f, pts[i], pts[i + 1], opt.max_depth, tol, &err);
    total.error += err;
  }
  if (!std::isfinite(total.value)) throw ConvergenceError("quadrature: non-finite integral");
  if (total.error > 10.0 * opt.rel_tol * scale) {
    throw ConvergenceError("quadrature: tolerance not reached");
  }
  total.value *= sign;
  return total;
}

}  // namespace calogero::quad
