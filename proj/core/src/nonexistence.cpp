#include "calogero/nonexistence.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "calogero/errors.hpp"
#include "ode.hpp"

namespace calogero {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kPhaseCap = 0.25 * kPi;
}  // namespace

std::string_view to_string(ZeroCountMode m) {
  return m == ZeroCountMode::Origin ? "origin" : "infinity";
}

bool ZeroCountReport::within_tolerance() const {
  const double diff = std::abs(static_cast<double>(observed_zeros) - predicted_zeros);
  return diff <= 1.0 + 0.1 * predicted_zeros;
}

std::optional<ZeroCountMode> default_zero_count_mode(const Couplings& c) {
  const auto f = region_flags(c);
  if (f.fall_to_center) return ZeroCountMode::Origin;
  if (f.fall_to_infinity) return ZeroCountMode::Infinity;
  return std::nullopt;
}

ZeroCountReport count_zeros(const Couplings& c, double u, double x_lo, double x_hi,
                            const BoundaryData& init, std::optional<ZeroCountMode> mode) {
  if (!(x_lo > 0.0) || !(x_hi > x_lo) || !std::isfinite(x_hi)) {
    throw DomainError("count_zeros: need 0 < x_lo < x_hi");
  }
  if (!mode) mode = default_zero_count_mode(c);
  if (!mode) throw DomainError("count_zeros: couplings admit a positive solution; give a mode");

  ZeroCountReport rep;
  rep.x_lo = x_lo;
  rep.x_hi = x_hi;
  rep.u = u;
  rep.mode = *mode;

  std::size_t zeros = 0;
  double last = std::numeric_limits<double>::quiet_NaN();
  auto observe = [&](double, const ode::State& y, double) {
    if (y[0] != 0.0) {
      if (!std::isnan(last) && last * y[0] < 0.0) ++zeros;
      last = y[0];
    }
  };
  ode::Options opt;
  opt.rel_tol = 1e-10;

  if (*mode == ZeroCountMode::Origin) {
    if (c.g1 < -0.25) {
      rep.sigma_or_omega = std::sqrt(-0.25 - c.g1);
      rep.predicted_zeros = rep.sigma_or_omega * std::log(x_hi / x_lo) / kPi;
    }
    // ÿ = (g1 + 1/4 + g2 x⁴ + u x²) y,  x = e^s
    auto q = [&](double s) {
      const double x2 = std::exp(2.0 * s);
      return c.g1 + 0.25 + c.g2 * x2 * x2 + u * x2;
    };
    auto rhs = [&](double s, const ode::State& y, ode::State& dy) {
      dy[0] = y[1];
      dy[1] = q(s) * y[0];
    };
    const double s_hi = std::log(x_hi);
    const double s_lo = std::log(x_lo);
    auto cap = [&](double s) {
      const double aq = std::abs(q(s));
      return aq > 0.0 ? kPhaseCap / std::sqrt(aq) : std::numeric_limits<double>::infinity();
    };
    const double rx = std::sqrt(x_hi);
    const ode::State y0{init.value / rx, rx * init.derivative - 0.5 * init.value / rx};
    opt.initial_step = std::min(0.01, cap(s_hi));
    rep.steps = ode::integrate(rhs, y0, s_hi, s_lo, opt, cap, observe).steps;
  } else {
    if (c.g2 < 0.0) {
      rep.sigma_or_omega = std::sqrt(-c.g2);
      rep.predicted_zeros = rep.sigma_or_omega * (x_hi * x_hi - x_lo * x_lo) / (2.0 * kPi);
    }
    auto q = [&](double x) { return c.g1 / (x * x) + c.g2 * x * x + u; };
    auto rhs = [&](double x, const ode::State& y, ode::State& dy) {
      dy[0] = y[1];
      dy[1] = q(x) * y[0];
    };
    auto cap = [&](double x) {
      const double aq = std::abs(q(x));
      return aq > 0.0 ? kPhaseCap / std::sqrt(aq) : std::numeric_limits<double>::infinity();
    };
    opt.initial_step = std::min(0.01 * (x_hi - x_lo), cap(x_lo));
    const ode::State y0{init.value, init.derivative};
    rep.steps = ode::integrate(rhs, y0, x_lo, x_hi, opt, cap, observe).steps;
  }
  rep.observed_zeros = zeros;
  return rep;
}

}  // namespace calogero
