#include "calogero/spectral.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include <boost/math/tools/toms748_solve.hpp>

#include "calogero/errors.hpp"
#include "calogero/specfun.hpp"
#include "quadrature.hpp"

namespace calogero {

namespace sf = specfun;

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr double kPsi1 = -0.57721566490153286060651209008240243;

// Γ(1−κ)Γ(α)/(Γ(1+κ)Γ(α−κ)); exactly zero where α − κ is a pole of Γ.
double gamma_quotient(double kappa, double alpha) {
  const double c = sf::gamma(1.0 - kappa) / sf::gamma(1.0 + kappa);
  if (alpha - kappa >= 0.5 || alpha < -100.0) return c * sf::gamma_ratio(alpha, alpha - kappa);
  return c * sf::gamma(alpha) * sf::rgamma(alpha - kappa);
}

void require_family(const ReducedParams& rp, const char* fn) {
  if (!(rp.kappa < 1.0)) throw DomainError(std::string(fn) + ": requires kappa < 1");
}

template <class F>
double solve_increasing(F&& f, double lo, double hi, double flo, double fhi) {
  boost::math::tools::eps_tolerance<double> tol(std::numeric_limits<double>::digits - 1);
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
  if (iters >= 200) throw ConvergenceError("root finder: iteration budget exhausted");
  // Pick whichever end of the final bracket has the smaller residual.
  return std::abs(f(r.first)) <= std::abs(f(r.second)) ? r.first : r.second;
}

double closed_form_level(const ReducedParams& rp, std::size_t n) {
  return 2.0 * rp.energy_unit() * (2.0 * static_cast<double>(n) + 1.0 + rp.kappa);
}

}  // namespace

std::string_view to_string(SpectrumMethod m) {
  return m == SpectrumMethod::ClosedForm ? "pole-enumeration" : "bracketed-root";
}

double energy_from_a(const ReducedParams& rp, double a) {
  return rp.energy_unit() * (2.0 * (1.0 + rp.kappa) - 4.0 * a);
}

double a_from_energy(const ReducedParams& rp, double energy) {
  return 0.5 * (1.0 + rp.kappa) - energy / (4.0 * rp.energy_unit());
}

double theta_of(double mu, double w, const ReducedParams& rp) {
  require_family(rp, "theta_of");
  if (!(mu >= 0.0 && mu < kHalfPi)) throw DomainError("theta_of: mu must lie in [0, pi/2)");
  if (!(w > rp.w0)) throw DomainError("theta_of: requires w > w0");
  const double alpha = rp.alpha(w);
  if (rp.kappa > 0.0) return std::atan(std::tan(mu) - gamma_quotient(rp.kappa, alpha));
  return std::atan(sf::digamma(alpha) - 2.0 * kPsi1 - std::tan(mu));
}

WSolution solve_w_detailed(double mu, double nu, const ReducedParams& rp) {
  require_family(rp, "solve_w");
  if (!(mu >= 0.0 && mu < kHalfPi)) throw DomainError("solve_w: mu must lie in [0, pi/2)");
  if (!(std::abs(nu) < kHalfPi)) throw DomainError("solve_w: nu must lie in (-pi/2, pi/2)");
  const double kappa = rp.kappa;
  const double tan_nu = std::tan(nu);
  // tan θ as a function of α, increasing in α on (0, ∞).
  const double target = kappa > 0.0 ? std::tan(mu) - tan_nu : std::tan(mu) + tan_nu;
  auto lhs = [&](double alpha) {
    return kappa > 0.0 ? gamma_quotient(kappa, alpha) : sf::digamma(alpha) - 2.0 * kPsi1;
  };
  const double atan_target = std::atan(target);
  auto g = [&](double alpha) { return std::atan(lhs(alpha)) - atan_target; };

  double lo = 1e-3, glo = g(lo);
  while (glo > 0.0) {
    lo *= 1e-3;
    if (lo < 1e-300) throw BracketError("solve_w: no lower bracket");
    glo = g(lo);
  }
  double hi = 1.0, ghi = g(hi);
  while (ghi < 0.0) {
    hi *= 2.0;
    if (hi > 1e300) throw BracketError("solve_w: root lies beyond the double range (alpha > 1e300)");
    ghi = g(hi);
  }
  WSolution s;
  s.alpha = (glo == 0.0) ? lo : (ghi == 0.0) ? hi : solve_increasing(g, lo, hi, glo, ghi);
  s.w = s.alpha - 0.5 * (1.0 + kappa);
  const double tan_theta =
      kappa > 0.0 ? std::tan(mu) - lhs(s.alpha) : lhs(s.alpha) - std::tan(mu);
  s.residual = std::abs(tan_theta - tan_nu) / (1.0 + std::abs(tan_nu));
  return s;
}

double solve_w(double mu, double nu, const ReducedParams& rp) {
  return solve_w_detailed(mu, nu, rp).w;
}

double spectral_function(const ReducedParams& rp, double nu, double a) {
  require_family(rp, "spectral_function");
  if (rp.kappa > 0.0) return std::atan(gamma_quotient(rp.kappa, a)) + nu;
  return std::atan(sf::digamma(a) - 2.0 * kPsi1) - nu;
}

double ground_state_energy(const ReducedParams& rp, const ExtensionLabel& ext) {
  const auto r = resolve(rp, ext);
  if (r.label.is_friedrichs()) return closed_form_level(rp, 0);
  const auto s = solve_w_detailed(0.0, r.label.nu_value(), rp);
  return energy_from_a(rp, s.alpha);
}

SpectrumResult spectrum(const ReducedParams& rp, const ExtensionLabel& ext, std::size_t n_max) {
  const auto r = resolve(rp, ext);
  SpectrumResult out;
  out.extension = r.label;
  if (r.warning) out.notes.push_back(*r.warning);
  out.energies.reserve(n_max);
  out.residuals.reserve(n_max);

  if (r.label.is_friedrichs()) {
    out.method = SpectrumMethod::ClosedForm;
    for (std::size_t n = 0; n < n_max; ++n) {
      out.energies.push_back(closed_form_level(rp, n));
      out.residuals.push_back(0.0);
    }
    return out;
  }

  out.method = SpectrumMethod::BracketedRoot;
  const double nu = r.label.nu_value();
  auto f = [&](double a) { return spectral_function(rp, nu, a); };

  for (std::size_t n = 0; n < n_max; ++n) {
    // Gap n in a: (0, ∞) for n = 0, (−n, −n+1) otherwise; poles of Γ(a) or ψ(a) at the ends.
    const double left = -static_cast<double>(n);
    const double right = n == 0 ? std::numeric_limits<double>::infinity() : left + 1.0;
    // Monotone structure check on 8 interior points.
    double prev = -std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 8; ++i) {
      const double a = n == 0 ? std::ldexp(1.0, i - 4) : left + i / 9.0;
      const double v = f(a);
      if (!(v > prev)) {
        throw BracketError("spectrum: spectral function not increasing in gap " +
                           std::to_string(n));
      }
      prev = v;
    }

    double delta = 1e-13;
    double lo = 0.0, hi = 0.0, flo = 0.0, fhi = 0.0;
    bool bracketed = false;
    while (delta > 1e-17) {
      lo = left + delta * std::max(1.0, std::abs(left));
      flo = f(lo);
      if (n == 0) {
        hi = 1.0;
        fhi = f(hi);
        while (fhi < 0.0 && hi < 1e300) {
          hi *= 2.0;
          fhi = f(hi);
        }
      } else {
        hi = right - delta * std::max(1.0, std::abs(right));
        fhi = f(hi);
      }
      if (flo <= 0.0 && fhi >= 0.0) {
        bracketed = true;
        break;
      }
      delta *= 0.1;
    }
    double a_root;
    if (bracketed) {
      a_root = flo == 0.0 ? lo : fhi == 0.0 ? hi : solve_increasing(f, lo, hi, flo, fhi);
    } else if (flo > 0.0) {
      a_root = left;
      out.notes.push_back("level " + std::to_string(n) +
                          ": root indistinguishable from the gap's left pole");
    } else if (n > 0) {
      a_root = right;
      out.notes.push_back("level " + std::to_string(n) +
                          ": root indistinguishable from the gap's right pole");
    } else {
      throw BracketError("spectrum: could not bracket the ground state");
    }

    // Newton distance with a centred difference kept inside the gap.
    double residual = 0.0;
    const double fr = f(a_root);
    if (fr != 0.0) {
      double h = 1e-6 * std::max(1.0, std::abs(a_root));
      const double room = std::min(a_root - left, right - a_root);
      h = std::min(h, 0.25 * room);
      const double slope = (f(a_root + h) - f(a_root - h)) / (2.0 * h);
      residual = std::abs(fr / slope);
    }
    out.energies.push_back(energy_from_a(rp, a_root));
    out.residuals.push_back(residual);
  }
  return out;
}

namespace {

struct NormKey {
  double kappa, upsilon, nu;
  bool operator<(const NormKey& o) const {
    return std::tie(kappa, upsilon, nu) < std::tie(o.kappa, o.upsilon, o.nu);
  }
};

std::mutex g_norm_mutex;
std::map<NormKey, double> g_norm_cache;

// ∫₀^∞ φ² dx for φ(μ=0, w): analytic origin piece below υx = 1e-4, quadrature in ln(υx) above.
double squared_norm(const EvaluableSolution& phi) {
  const auto& p = phi.params();
  const double ups = p.rp.upsilon;
  const double kappa = p.rp.kappa;
  const auto ac = asymptotic_coeffs(p);
  const double ya = 1e-4;
  double origin;
  if (kappa > 0.0) {
    const double A = ac.A_tilde, B = ac.B_tilde;
    origin = A * A * std::pow(ya, 2.0 + 2.0 * kappa) / (2.0 + 2.0 * kappa) +
             A * B * ya * ya + B * B * std::pow(ya, 2.0 - 2.0 * kappa) / (2.0 - 2.0 * kappa);
  } else {
    // ∫ y (A + B ln y)² dy = y²/2 [L² − B L + B²/2], L = A + B ln y
    const double A = ac.A_tilde, B = ac.B_tilde;
    const double L = A + B * std::log(ya);
    origin = 0.5 * ya * ya * (L * L - B * L + 0.5 * B * B);
  }
  origin /= ups;
  auto integrand = [&](double s) {
    const double x = std::exp(s) / ups;
    const double v = phi.value(x);
    return v * v * x;
  };
  quad::QuadOptions opt;
  opt.rel_tol = 1e-12;
  std::vector<double> breaks;
  for (double s = std::log(ya) + 1.0; s < std::log(12.0); s += 1.0) breaks.push_back(s);
  breaks.push_back(0.0);
  const auto body = quad::integrate(integrand, std::log(ya), std::log(12.0), opt, breaks);
  return origin + body.value;
}

}  // namespace

EvaluableSolution ground_state_wavefunction(const ReducedParams& rp, const ExtensionLabel& ext) {
  const auto r = resolve(rp, ext);
  if (r.label.is_friedrichs()) {
    // (υx)^{1/2+κ} e^{−(υx)²/2}, ∫ = Γ(1+κ)/(2υ)
    RepresentationParams p{0.0, rp.w0, rp};
    return EvaluableSolution(p, std::sqrt(2.0 * rp.upsilon / sf::gamma(1.0 + rp.kappa)));
  }
  const double nu = r.label.nu_value();
  const auto s = solve_w_detailed(0.0, nu, rp);
  EvaluableSolution phi(RepresentationParams{0.0, s.w, rp});
  const NormKey key{rp.kappa, rp.upsilon, nu};
  {
    std::lock_guard<std::mutex> lock(g_norm_mutex);
    if (auto it = g_norm_cache.find(key); it != g_norm_cache.end()) return phi.rescaled(it->second);
  }
  const double q = 1.0 / std::sqrt(squared_norm(phi));
  {
    std::lock_guard<std::mutex> lock(g_norm_mutex);
    g_norm_cache.emplace(key, q);
  }
  return phi.rescaled(q);
}

}  // namespace calogero
