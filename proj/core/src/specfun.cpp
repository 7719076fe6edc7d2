#include "calogero/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "calogero/errors.hpp"
#include "quadrature.hpp"

namespace calogero::specfun {
namespace {

thread_local double g_gamma_fault_shift = 0.0;

constexpr double kPi = std::numbers::pi;
constexpr double kLogSqrt2Pi = 0.91893853320467274178032973640562;

bool is_nonpositive_integer(double z) { return z <= 0.0 && z == std::floor(z); }

void require_not_pole(double z, const char* fn) {
  if (is_nonpositive_integer(z)) {
    throw PoleError(std::string(fn) + ": pole at z = " + std::to_string(z));
  }
}

// sin(πx), exactly zero at integers.
double sin_pi(double x) {
  double y = x - 2.0 * std::floor(0.5 * x);  // [0, 2)
  double sign = 1.0;
  if (y >= 1.0) {
    y -= 1.0;
    sign = -1.0;
  }
  if (y > 0.5) y = 1.0 - y;
  return sign * std::sin(kPi * y);
}

double cos_pi(double x) { return sin_pi(x + 0.5); }

// Lanczos approximation, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993227684700473478,  676.520368121885098567009190444019,
    -1259.13921672240287047156078755283, 771.3234287776530788486528258894,
    -176.61502916214059906584551354,     12.507343278686904814458936853,
    -0.13857109526572011689554707,       9.984369578019570859563e-6,
    1.50563273514931155834e-7};

double lanczos_series(double zm1) {
  double x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (zm1 + i);
  return x;
}

double gamma_impl(double z) {
  if (z < 0.5) return kPi / (sin_pi(z) * gamma_impl(1.0 - z));
  const double zm1 = z - 1.0;
  const double t = zm1 + kLanczosG + 0.5;
  // t^(zm1+0.5) split in two halves to delay overflow.
  const double half_pow = std::pow(t, 0.5 * (zm1 + 0.5));
  return std::sqrt(2.0 * kPi) * half_pow * (half_pow * std::exp(-t)) * lanczos_series(zm1);
}

SignedLogGamma log_gamma_impl(double z) {
  if (z < 0.5) {
    const double s = sin_pi(z);
    const auto refl = log_gamma_impl(1.0 - z);
    return {std::log(kPi) - std::log(std::abs(s)) - refl.log_abs, s < 0.0 ? -1 : 1};
  }
  const double zm1 = z - 1.0;
  const double t = zm1 + kLanczosG + 0.5;
  return {kLogSqrt2Pi + (zm1 + 0.5) * std::log(t) - t + std::log(lanczos_series(zm1)), 1};
}

// Γ(a)/Γ(b) for a, b ≥ 1/2 with the large Lanczos factors cancelled analytically, so the
// result stays accurate when a and b are huge and close.
double gamma_ratio_lanczos(double a, double b) {
  const double tb = b - 0.5 + kLanczosG;
  const double d = a - b;
  const double expo = (a - 0.5) * std::log1p(d / tb) + d * (std::log(tb) - 1.0);
  return std::exp(expo) * lanczos_series(a - 1.0) / lanczos_series(b - 1.0);
}

// ---- extended precision pieces for the Φ-combination route to Ψ --------------

using ld = long double;
constexpr ld kPiL = 3.141592653589793238462643383279502884L;

ld sin_pi_ld(ld x) {
  ld y = x - 2.0L * std::floor(0.5L * x);
  ld sign = 1.0L;
  if (y >= 1.0L) {
    y -= 1.0L;
    sign = -1.0L;
  }
  if (y > 0.5L) y = 1.0L - y;
  return sign * std::sin(kPiL * y);
}

// Γ(x) for x ≥ 25 by the Stirling series; relative error at the long double epsilon level.
ld gamma_stirling_ld(ld x) {
  // B_{2k} / (2k (2k-1)), k = 1..8
  static constexpr std::array<ld, 8> c = {
      1.0L / 12.0L,          -1.0L / 360.0L,          1.0L / 1260.0L,
      -1.0L / 1680.0L,       1.0L / 1188.0L,          -691.0L / 360360.0L,
      1.0L / 156.0L,         -3617.0L / 122400.0L};
  ld inv = 1.0L / x;
  ld inv2 = inv * inv;
  ld series = 0.0L;
  ld p = inv;
  for (ld ck : c) {
    series += ck * p;
    p *= inv2;
  }
  return std::sqrt(2.0L * kPiL / x) * std::pow(x / 2.718281828459045235360287471352662498L, x) *
         std::exp(series);
}

ld gamma_ld(ld z) {
  if (z <= 0.0L && z == std::floor(z)) throw PoleError("gamma: pole in extended-precision path");
  if (z < 0.5L) return kPiL / (sin_pi_ld(z) * gamma_ld(1.0L - z));
  ld prod = 1.0L;
  while (z < 25.0L) {
    prod *= z;
    z += 1.0L;
  }
  return gamma_stirling_ld(z) / prod;
}

ld rgamma_ld(ld z) {
  if (z <= 0.0L && z == std::floor(z)) return 0.0L;
  return 1.0L / gamma_ld(z);
}

template <class T>
T hyp1f1_series_t(T a, T b, T rho, const SeriesControl& ctrl) {
  if (b <= T(0) && b == std::floor(b)) {
    throw DomainError("hyp1f1 series: b is a nonpositive integer");
  }
  T term = 1;
  T sum = 1;
  int small_run = 0;
  for (std::size_t k = 0; k < ctrl.max_terms; ++k) {
    const T kk = static_cast<T>(k);
    term *= (a + kk) * rho / ((b + kk) * (kk + 1));
    sum += term;
    if (term == T(0)) return sum;  // terminating series (a a nonpositive integer)
    // Only trust the stagnation test once the term ratio ~ rho/k has dropped below one.
    if (std::abs(term) <= static_cast<T>(ctrl.rel_tol) * std::abs(sum) && kk + 1 > rho) {
      if (++small_run >= 3) return sum;
    } else {
      small_run = 0;
    }
  }
  throw ConvergenceError("hyp1f1 series: max_terms exceeded (rho = " +
                         std::to_string(static_cast<double>(rho)) + ")");
}

void check_series_control(const SeriesControl& ctrl) {
  if (!(ctrl.rel_tol > 0.0) || ctrl.max_terms == 0) {
    throw DomainError("SeriesControl: rel_tol must be > 0 and max_terms positive");
  }
}

}  // namespace

double gamma(double z) {
  z += g_gamma_fault_shift;
  require_not_pole(z, "gamma");
  return gamma_impl(z);
}

SignedLogGamma log_gamma(double z) {
  z += g_gamma_fault_shift;
  require_not_pole(z, "log_gamma");
  return log_gamma_impl(z);
}

double rgamma(double z) {
  z += g_gamma_fault_shift;
  if (is_nonpositive_integer(z)) return 0.0;
  if (z > 170.0) return std::exp(-log_gamma_impl(z).log_abs);
  return 1.0 / gamma_impl(z);
}

double gamma_ratio(double a, double b) {
  a += g_gamma_fault_shift;
  b += g_gamma_fault_shift;
  require_not_pole(a, "gamma_ratio");
  if (is_nonpositive_integer(b)) return 0.0;
  if (a >= 0.5 && b >= 0.5) return gamma_ratio_lanczos(a, b);
  if (a < 0.5 && b < 0.5) return sin_pi(b) / sin_pi(a) * gamma_ratio_lanczos(1.0 - b, 1.0 - a);
  const auto la = log_gamma_impl(a);
  const auto lb = log_gamma_impl(b);
  return la.sign * lb.sign * std::exp(la.log_abs - lb.log_abs);
}

double digamma(double z) {
  require_not_pole(z, "digamma");
  if (z < 0.0) {
    // ψ(z) = ψ(1 - z) - π cot(πz)
    return digamma(1.0 - z) - kPi * cos_pi(z) / sin_pi(z);
  }
  double result = 0.0;
  while (z < 10.0) {
    result -= 1.0 / z;
    z += 1.0;
  }
  const double inv = 1.0 / z;
  const double inv2 = inv * inv;
  // Asymptotic Bernoulli tail through z^-14.
  const double tail =
      inv2 * (1.0 / 12.0 -
              inv2 * (1.0 / 120.0 -
                      inv2 * (1.0 / 252.0 -
                              inv2 * (1.0 / 240.0 -
                                      inv2 * (1.0 / 132.0 -
                                              inv2 * (691.0 / 32760.0 - inv2 / 12.0))))));
  return result + std::log(z) - 0.5 * inv - tail;
}

double pochhammer(double a, unsigned k) {
  double p = 1.0;
  for (unsigned i = 0; i < k; ++i) p *= a + i;
  return p;
}

namespace detail {
double hyp1f1_series(double a, double b, double rho, const SeriesControl& ctrl) {
  check_series_control(ctrl);
  return hyp1f1_series_t<double>(a, b, rho, ctrl);
}
}  // namespace detail

double kummer_phi(double alpha, double beta, double rho, const SeriesControl& ctrl) {
  if (!(alpha >= 0.0) || !(beta >= 1.0) || !(rho >= 0.0)) {
    throw DomainError("kummer_phi: requires alpha >= 0, beta >= 1, rho >= 0");
  }
  check_series_control(ctrl);
  if (alpha == 0.0 || rho == 0.0) return 1.0;
  return hyp1f1_series_t<double>(alpha, beta, rho, ctrl);
}

double tricomi_psi_series(double alpha, double beta, double rho, const SeriesControl& ctrl) {
  if (!(alpha > 0.0) || !(rho > 0.0)) {
    throw DomainError("tricomi_psi: requires alpha > 0 and rho > 0");
  }
  if (std::abs(beta - std::round(beta)) < 1e-8) {
    throw DomainError("tricomi_psi_series: connection formula is indeterminate at integer beta");
  }
  check_series_control(ctrl);
  const ld a = alpha;
  const ld b = beta;
  const ld r = rho;
  const ld shift = g_gamma_fault_shift;
  SeriesControl tight = ctrl;
  tight.rel_tol = std::min(ctrl.rel_tol, 1e-19);
  const ld phi1 = hyp1f1_series_t<ld>(a, b, r, tight);
  const ld phi2 = hyp1f1_series_t<ld>(a - b + 1.0L, 2.0L - b, r, tight);
  const ld term1 = gamma_ld(1.0L - b + shift) * rgamma_ld(a - b + 1.0L + shift) * phi1;
  const ld term2 =
      gamma_ld(b - 1.0L + shift) * rgamma_ld(a + shift) * std::pow(r, 1.0L - b) * phi2;
  return static_cast<double>(term1 + term2);
}

double tricomi_psi_integral(double alpha, double beta, double rho) {
  if (!(alpha > 0.0) || !(rho > 0.0)) {
    throw DomainError("tricomi_psi: requires alpha > 0 and rho > 0");
  }
  // Ψ = ρ^{1-β}/Γ(α) ∫_0^∞ t^{α-1} (ρ+t)^{c} e^{-t} dt,  c = β-α-1,  with t = e^s.
  const double c = beta - alpha - 1.0;
  const double log_rho = std::log(rho);
  auto log_rho_plus = [&](double s) {
    return s > log_rho ? s + std::log1p(std::exp(log_rho - s)) : log_rho + std::log1p(std::exp(s - log_rho));
  };
  auto integrand = [&](double s) {
    return std::exp(alpha * s - std::exp(s) + c * log_rho_plus(s));
  };

  // Below s_a the integrand is e^{αs} ρ^c (1 + (c/ρ - 1) e^s + O(e^{2s})); integrate that exactly.
  const double s_a = std::min(log_rho, 0.0) - 20.0;
  const double ea = std::exp(s_a);
  const double tail = std::exp(c * log_rho + alpha * s_a) *
                      (1.0 / alpha + (c / rho - 1.0) * ea / (alpha + 1.0));

  const double s_hi = std::log(45.0 + 3.0 * (std::abs(alpha) + std::abs(beta)));
  std::vector<double> breaks;
  for (double s = s_a + 2.0; s < 1.0; s += 2.0) breaks.push_back(s);
  // e^{-e^s} falls off double-exponentially above s = 1; narrower pieces there.
  for (double s = 1.0; s < s_hi; s += 0.5) breaks.push_back(s);
  breaks.push_back(0.0);
  breaks.push_back(log_rho);
  quad::QuadOptions opt;
  opt.rel_tol = 1e-14;
  const auto body = quad::integrate(integrand, s_a, s_hi, opt, breaks);

  const auto lg = log_gamma(alpha);
  return std::exp((1.0 - beta) * log_rho - lg.log_abs) * (tail + body.value);
}

double tricomi_psi(double alpha, double beta, double rho) {
  if (!(alpha > 0.0)) {
    throw DomainError("tricomi_psi: alpha must be > 0 (route alpha = 0 to psi_exceptional)");
  }
  if (!(rho > 0.0)) throw DomainError("tricomi_psi: rho must be > 0");
  if (!(beta >= 1.0)) throw DomainError("tricomi_psi: beta must be >= 1");
  const bool well_separated = std::abs(beta - std::round(beta)) >= 0.05;
  if (well_separated && rho <= 4.0) return tricomi_psi_series(alpha, beta, rho);
  return tricomi_psi_integral(alpha, beta, rho);
}

double psi_exceptional(double beta, double rho, double a) {
  if (!(rho > 0.0) || !(a > 0.0)) throw DomainError("psi_exceptional: requires rho > 0 and a > 0");
  // τ = e^s
  auto integrand = [beta](double s) { return std::exp((1.0 - beta) * s + std::exp(s)); };
  const double lo = 2.0 * std::log(a);
  const double hi = std::log(rho);
  quad::QuadOptions opt;
  opt.rel_tol = 1e-13;
  return quad::integrate(integrand, lo, hi, opt).value;
}

namespace testing {
ScopedGammaFault::ScopedGammaFault(double shift) : previous_(g_gamma_fault_shift) {
  g_gamma_fault_shift = shift;
}
ScopedGammaFault::~ScopedGammaFault() { g_gamma_fault_shift = previous_; }
}  // namespace testing

}  // namespace calogero::specfun
