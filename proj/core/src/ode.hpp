#pragma once

// Second-order linear ODEs as 2-vectors, integrated with Boost.Odeint's controlled
// Dormand-Prince stepper driven step by step (step caps, observers, renormalization).

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

#include <boost/numeric/odeint.hpp>

#include "calogero/errors.hpp"

namespace calogero::ode {

using State = std::array<double, 2>;

struct Options {
  double rel_tol = 1e-10;
  double abs_tol = 1e-300;
  double initial_step = 1e-3;
  std::size_t max_steps = 2'000'000;
  double renormalize_above = 1e100;
};

struct Result {
  State y{};
  double log_scale = 0.0;  // true solution = y · e^{log_scale}
  std::size_t steps = 0;
};

struct NoCap {
  double operator()(double) const { return std::numeric_limits<double>::infinity(); }
};
struct NoObserver {
  void operator()(double, const State&, double) const {}
};

/// Integrates y′ = rhs(t, y) from t0 to t1 (either direction). `cap(t)` bounds |dt|;
/// `observe(t, y, log_scale)` sees every accepted step including the start.
template <class Rhs, class Cap = NoCap, class Observer = NoObserver>
Result integrate(Rhs&& rhs, State y, double t0, double t1, const Options& opt = {},
                 Cap&& cap = {}, Observer&& observe = {}) {
  namespace odeint = boost::numeric::odeint;
  auto stepper = odeint::make_controlled(opt.abs_tol, opt.rel_tol, odeint::runge_kutta_dopri5<State>());
  auto system = [&rhs](const State& x, State& dxdt, double t) { rhs(t, x, dxdt); };

  Result res;
  const double dir = t1 >= t0 ? 1.0 : -1.0;
  double t = t0;
  double dt = dir * std::min(std::abs(opt.initial_step), std::abs(t1 - t0));
  observe(t, y, res.log_scale);
  while (dir * (t1 - t) > 0.0) {
    if (res.steps >= opt.max_steps) throw IntegrationError("ode: step budget exhausted", t);
    const double remaining = std::abs(t1 - t);
    const double h = std::min({std::abs(dt), cap(t), remaining});
    const bool last = h >= remaining;
    dt = dir * h;
    const auto r = stepper.try_step(system, y, t, dt);
    if (r == odeint::fail) {
      if (std::abs(dt) <= 1e-15 * std::max(1.0, std::abs(t))) {
        throw IntegrationError("ode: step size underflow", t);
      }
      continue;
    }
    if (last) t = t1;  // avoid drift from t_before + dt rounding
    ++res.steps;
    const double mag = std::max(std::abs(y[0]), std::abs(y[1]));
    if (!std::isfinite(mag)) throw IntegrationError("ode: non-finite solution", t);
    if (mag > opt.renormalize_above) {
      y[0] /= opt.renormalize_above;
      y[1] /= opt.renormalize_above;
      res.log_scale += std::log(opt.renormalize_above);
    }
    observe(t, y, res.log_scale);
  }
  res.y = y;
  return res;
}

}  // namespace calogero::ode
