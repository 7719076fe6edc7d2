#include "calogero/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/tools/toms748_solve.hpp>

#include "calogero/errors.hpp"
#include "ode.hpp"

namespace calogero {

namespace {

struct Point {
  double value;
  double derivative;
};

// Frobenius solutions Σ c_k x^{s+k} of −y″ + (g1/x² + g2x²)y = E y, c₀ = 1, with
// c_k P(s+k) = g2 c_{k−4} − E c_{k−2}, P(r) = r(r−1) − g1. With `log_partner`, also returns
// ∂/∂s of the series at a double root (the logarithmic second solution).
struct Frobenius {
  Point regular;
  Point logarithmic;
};

Frobenius frobenius(double s, double g1, double g2, double energy, double x, bool log_partner) {
  constexpr int kMax = 600;
  // c_prev = c_{k−2}, c_prev2 = c_{k−4} when computing c_k; likewise for c′.
  double c_prev2 = 0.0, c_prev = 1.0;
  double d_prev2 = 0.0, d_prev = 0.0;
  double sum = 1.0, dsum = s;      // Σ c_k x^k, Σ c_k (s+k) x^k
  double lsum = 0.0, ldsum = 0.0;  // Σ c′_k x^k, Σ c′_k (s+k) x^k
  double xk = 1.0;
  const double x2 = x * x;
  int quiet = 0;
  for (int k = 2; k <= kMax; k += 2) {
    xk *= x2;
    const double r = s + k;
    const double P = r * (r - 1.0) - g1;
    const double Pp = 2.0 * r - 1.0;
    const double c_new = (g2 * c_prev2 - energy * c_prev) / P;
    double d_new = 0.0;
    if (log_partner) d_new = (g2 * d_prev2 - energy * d_prev - c_new * Pp) / P;
    c_prev2 = c_prev;
    c_prev = c_new;
    d_prev2 = d_prev;
    d_prev = d_new;
    const double t = c_new * xk;
    sum += t;
    dsum += t * r;
    if (log_partner) {
      lsum += d_new * xk;
      ldsum += d_new * xk * r;
    }
    const double mag = std::abs(t) + (log_partner ? std::abs(d_new * xk) : 0.0);
    if (mag <= 1e-18 * (std::abs(sum) + std::abs(lsum))) {
      if (++quiet >= 2) break;
    } else {
      quiet = 0;
    }
  }
  const double xs = std::pow(x, s);
  Frobenius f;
  f.regular = {xs * sum, xs / x * dsum};
  if (log_partner) {
    const double lx = std::log(x);
    f.logarithmic = {f.regular.value * lx + xs * lsum,
                     f.regular.derivative * lx + f.regular.value / x + xs / x * ldsum};
  }
  return f;
}

struct Problem {
  Couplings c;
  ReducedParams rp;
  ExtensionLabel ext;
  ShootingConfig cfg;
  double x_min, x_max, x_match;  // raw lengths
};

Problem make_problem(const Couplings& c, const ExtensionLabel& ext, const ShootingConfig& cfg) {
  cfg.validate();
  const auto rp = reduce(c);
  const auto r = resolve(rp, ext);
  const double inv_u = 1.0 / rp.upsilon;
  return {c, rp, r.label, cfg, cfg.x_min * inv_u, cfg.x_max * inv_u, cfg.x_match * inv_u};
}

// The boundary-condition solution near the origin:
//   κ ∈ (0,1): sin ν (υx)^{1/2+κ}[…] + cos ν (υx)^{1/2−κ}[…]
//   κ = 0:     (υx)^{1/2} sin ν + 2 (υx)^{1/2} ln(υx) cos ν, continued by the series
//   Friedrichs / unique: (υx)^{1/2+κ}[…]
Point left_data(const Problem& pb, double energy, double x) {
  const double kappa = pb.rp.kappa;
  const double ups = pb.rp.upsilon;
  const double g1 = pb.c.g1, g2 = pb.c.g2;
  if (pb.ext.is_friedrichs()) {
    const auto f = frobenius(0.5 + kappa, g1, g2, energy, x, false);
    const double k = std::pow(ups, 0.5 + kappa);
    return {k * f.regular.value, k * f.regular.derivative};
  }
  const double nu = pb.ext.nu_value();
  const double sn = std::sin(nu), cs = std::cos(nu);
  if (kappa > 0.0) {
    const auto fp = frobenius(0.5 + kappa, g1, g2, energy, x, false);
    const auto fm = frobenius(0.5 - kappa, g1, g2, energy, x, false);
    const double kp = sn * std::pow(ups, 0.5 + kappa);
    const double km = cs * std::pow(ups, 0.5 - kappa);
    return {kp * fp.regular.value + km * fm.regular.value,
            kp * fp.regular.derivative + km * fm.regular.derivative};
  }
  const auto f = frobenius(0.5, g1, g2, energy, x, true);
  const double k1 = std::sqrt(ups) * (sn + 2.0 * cs * std::log(ups));
  const double k2 = std::sqrt(ups) * 2.0 * cs;
  return {k1 * f.regular.value + k2 * f.logarithmic.value,
          k1 * f.regular.derivative + k2 * f.logarithmic.derivative};
}

// Decaying tail (υx)^{−1/2−2w} e^{−(υx)²/2}, w = −E/(4υ²), up to a constant.
Point right_data(const Problem& pb, double energy, double x) {
  const double u2 = pb.rp.energy_unit();
  const double p = -0.5 + energy / (2.0 * u2);
  return {1.0, p / x - u2 * x};
}

auto make_rhs(const Problem& pb, double energy) {
  return [g1 = pb.c.g1, g2 = pb.c.g2, energy](double x, const ode::State& y, ode::State& dy) {
    dy[0] = y[1];
    dy[1] = (g1 / (x * x) + g2 * x * x - energy) * y[0];
  };
}

ode::Options ode_options(const Problem& pb) {
  ode::Options o;
  o.rel_tol = pb.cfg.rel_tol;
  o.initial_step = 1e-3 / pb.rp.upsilon;
  return o;
}

double mismatch(const Problem& pb, double energy) {
  const auto rhs = make_rhs(pb, energy);
  const auto opt = ode_options(pb);
  const Point l0 = left_data(pb, energy, pb.x_min);
  const Point r0 = right_data(pb, energy, pb.x_max);
  const auto L = ode::integrate(rhs, ode::State{l0.value, l0.derivative}, pb.x_min, pb.x_match, opt);
  const auto R = ode::integrate(rhs, ode::State{r0.value, r0.derivative}, pb.x_max, pb.x_match, opt);
  const double w = L.y[0] * R.y[1] - L.y[1] * R.y[0];
  return w / (std::hypot(L.y[0], L.y[1]) * std::hypot(R.y[0], R.y[1]));
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return s;
}

}  // namespace

void ShootingConfig::validate() const {
  if (!(x_min > 0.0 && x_min < x_match && x_match < x_max && std::isfinite(x_max))) {
    throw DomainError("ShootingConfig: need 0 < x_min < x_match < x_max");
  }
  if (!(rel_tol > 0.0) || !(e_step > 0.0)) throw DomainError("ShootingConfig: tolerances must be > 0");
  if (e_floor && e_top && !(*e_floor < *e_top)) throw DomainError("ShootingConfig: e_floor >= e_top");
}

double wronskian_mismatch(const Couplings& c, const ExtensionLabel& ext, double energy,
                          const ShootingConfig& cfg) {
  return mismatch(make_problem(c, ext, cfg), energy);
}

OracleSpectrum shoot_spectrum(const Couplings& c, const ExtensionLabel& ext, std::size_t n_max,
                              const ShootingConfig& cfg_in, bool with_eigenfunctions) {
  ShootingConfig cfg = cfg_in;
  OracleSpectrum out;
  const double top = cfg.e_top.value_or(4.0 * static_cast<double>(n_max) + 12.0);
  const double floor = cfg.e_floor.value_or(-20.0);
  // Keep the right boundary well past the classical turning point of the scan top.
  if (top > 0.0 && cfg.x_max < std::sqrt(top) + 3.0) {
    cfg.x_max = std::sqrt(top) + 3.0;
    out.notes.push_back("x_max extended to " + std::to_string(cfg.x_max) + "/upsilon");
  }
  const Problem pb = make_problem(c, ext, cfg);
  const double u2 = pb.rp.energy_unit();
  auto W = [&](double e) { return mismatch(pb, e); };

  double e_prev = floor * u2;
  double w_prev = W(e_prev);
  const std::size_t steps = static_cast<std::size_t>(std::ceil((top - floor) / cfg.e_step));
  for (std::size_t i = 1; i <= steps && out.energies.size() < n_max; ++i) {
    const double e = (floor + cfg.e_step * static_cast<double>(i)) * u2;
    const double w = W(e);
    if (w == 0.0 || w_prev * w < 0.0) {
      double root = e;
      if (w != 0.0) {
        boost::math::tools::eps_tolerance<double> tol(48);
        std::uintmax_t iters = 100;
        const auto r = boost::math::tools::toms748_solve(W, e_prev, e, w_prev, w, tol, iters);
        root = 0.5 * (r.first + r.second);
      }
      out.energies.push_back(root);
      out.mismatch_residuals.push_back(std::abs(W(root)));
    }
    e_prev = e;
    w_prev = w;
  }
  if (out.energies.size() < n_max) {
    throw ConvergenceError("shoot_spectrum: only " + std::to_string(out.energies.size()) +
                           " eigenvalues below the scan top E = " + std::to_string(top * u2));
  }
  if (with_eigenfunctions) {
    for (double e : out.energies) out.eigenfunctions.push_back(shoot_eigenfunction(c, ext, e, cfg));
  }
  return out;
}

SampledFunction shoot_eigenfunction(const Couplings& c, const ExtensionLabel& ext, double energy,
                                    const ShootingConfig& cfg) {
  const Problem pb = make_problem(c, ext, cfg);
  const auto rhs = make_rhs(pb, energy);
  auto opt = ode_options(pb);
  opt.renormalize_above = std::numeric_limits<double>::infinity();

  SampledFunction out;
  // Series region below x_min on a log grid.
  const double x_tiny = 1e-12 / pb.rp.upsilon;
  const std::size_t n_log = 80;
  for (std::size_t i = 0; i < n_log; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n_log);
    const double x = x_tiny * std::pow(pb.x_min / x_tiny, t);
    out.grid.push_back(x);
    out.values.push_back(left_data(pb, energy, x).value);
  }
  // Uniform grid [x_min, x_max] with x_match inserted.
  const std::size_t n_lin = std::max<std::size_t>(cfg.eigenfunction_points, 10);
  std::vector<double> lin;
  for (std::size_t i = 0; i < n_lin; ++i) {
    lin.push_back(pb.x_min + (pb.x_max - pb.x_min) * static_cast<double>(i) /
                                 static_cast<double>(n_lin - 1));
  }
  lin.push_back(pb.x_match);
  std::sort(lin.begin(), lin.end());
  lin.erase(std::unique(lin.begin(), lin.end()), lin.end());
  const auto match_it = std::find(lin.begin(), lin.end(), pb.x_match);
  const std::size_t im = static_cast<std::size_t>(match_it - lin.begin());

  std::vector<double> left_vals(im + 1), right_vals(lin.size() - im);
  const Point l0 = left_data(pb, energy, pb.x_min);
  ode::State y{l0.value, l0.derivative};
  left_vals[0] = y[0];
  for (std::size_t i = 1; i <= im; ++i) {
    y = ode::integrate(rhs, y, lin[i - 1], lin[i], opt).y;
    left_vals[i] = y[0];
  }
  const ode::State left_match = y;
  const Point r0 = right_data(pb, energy, pb.x_max);
  y = {r0.value, r0.derivative};
  right_vals.back() = y[0];
  for (std::size_t i = lin.size() - 1; i > im; --i) {
    y = ode::integrate(rhs, y, lin[i], lin[i - 1], opt).y;
    right_vals[i - 1 - im] = y[0];
  }
  const ode::State right_match = y;
  const double factor = (left_match[0] * right_match[0] + left_match[1] * right_match[1]) /
                        (right_match[0] * right_match[0] + right_match[1] * right_match[1]);

  for (std::size_t i = 0; i < lin.size(); ++i) {
    out.grid.push_back(lin[i]);
    out.values.push_back(i <= im ? left_vals[i] : factor * right_vals[i - im]);
  }

  std::vector<double> sq(out.values.size());
  std::transform(out.values.begin(), out.values.end(), sq.begin(), [](double v) { return v * v; });
  const double norm = std::sqrt(trapezoid(out.grid, sq));
  double peak = 0.0;
  for (double v : out.values) peak = std::max(peak, std::abs(v));
  double sign = 1.0;
  for (double v : out.values) {
    if (std::abs(v) > 1e-6 * peak) {
      sign = v < 0.0 ? -1.0 : 1.0;
      break;
    }
  }
  for (double& v : out.values) v *= sign / norm;
  return out;
}

double eigenfunction_overlap(const SampledFunction& u1, const SampledFunction& u2) {
  if (u1.grid != u2.grid || u1.values.size() != u1.grid.size() ||
      u2.values.size() != u2.grid.size()) {
    throw DomainError("eigenfunction_overlap: grid mismatch");
  }
  const std::size_t n = u1.grid.size();
  std::vector<double> p(n), a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = u1.values[i] * u2.values[i];
    a[i] = u1.values[i] * u1.values[i];
    b[i] = u2.values[i] * u2.values[i];
  }
  return std::abs(trapezoid(u1.grid, p)) /
         std::sqrt(trapezoid(u1.grid, a) * trapezoid(u1.grid, b));
}

std::size_t count_nodes(const SampledFunction& u) {
  double peak = 0.0;
  for (double v : u.values) peak = std::max(peak, std::abs(v));
  const double floor = 1e-10 * peak;
  std::size_t nodes = 0;
  double last = 0.0;
  for (double v : u.values) {
    if (std::abs(v) < floor) continue;
    if (last != 0.0 && last * v < 0.0) ++nodes;
    last = v;
  }
  return nodes;
}

}  // namespace calogero
