#include "calogero/factorization.hpp"

#include <cmath>
#include <numbers>

#include "calogero/errors.hpp"
#include "calogero/specfun.hpp"

namespace calogero {

namespace sf = specfun;

namespace {
constexpr double kHalfPi = 0.5 * std::numbers::pi;
// ψ(1) = −γ
constexpr double kPsi1 = -0.57721566490153286060651209008240243;
}  // namespace

void RepresentationParams::validate() const {
  if (!(mu >= 0.0 && mu <= kHalfPi + 1e-15)) throw DomainError("mu must lie in [0, pi/2]");
  if (!std::isfinite(w) || w < rp.w0) throw DomainError("w must be finite and >= w0");
}

EvaluableSolution::EvaluableSolution(const RepresentationParams& p, double scale)
    : p_(p), scale_(scale) {
  p_.validate();
  if (p_.exceptional()) return;
  const double alpha = p_.rp.alpha(p_.w);
  const bool pure_regular = std::abs(p_.mu - kHalfPi) <= 1e-15;
  sin_mu_ = pure_regular ? 1.0 : std::sin(p_.mu);
  const double cos_mu = pure_regular ? 0.0 : std::cos(p_.mu);
  if (cos_mu != 0.0) {
    psi_coef_ = p_.rp.kappa > 0.0 ? cos_mu * sf::gamma_ratio(alpha, p_.rp.kappa)
                                  : cos_mu * sf::gamma(alpha);
  }
}

EvaluableSolution EvaluableSolution::rescaled(double factor) const {
  return EvaluableSolution(p_, scale_ * factor);
}

EvaluableSolution::LogJet EvaluableSolution::log_jet(double x) const {
  if (!(x > 0.0)) throw DomainError("phi: x must be > 0");
  const auto& rp = p_.rp;
  const double two_u2 = 2.0 * rp.energy_unit();
  const double rho = rp.rho(x);
  const double p = 0.25 + 0.5 * rp.kappa;

  double F = 1.0, F1 = 0.0, F2 = 0.0;
  if (!p_.exceptional()) {
    const double a = rp.alpha(p_.w);
    const double b = rp.beta;
    F = 0.0;
    if (sin_mu_ != 0.0) {
      F += sin_mu_ * sf::kummer_phi(a, b, rho);
      F1 += sin_mu_ * (a / b) * sf::kummer_phi(a + 1.0, b + 1.0, rho);
      F2 += sin_mu_ * (a * (a + 1.0) / (b * (b + 1.0))) * sf::kummer_phi(a + 2.0, b + 2.0, rho);
    }
    if (psi_coef_ != 0.0) {
      F += psi_coef_ * sf::tricomi_psi(a, b, rho);
      F1 -= psi_coef_ * a * sf::tricomi_psi(a + 1.0, b + 1.0, rho);
      F2 += psi_coef_ * a * (a + 1.0) * sf::tricomi_psi(a + 2.0, b + 2.0, rho);
    }
  }
  const double q = p / rho - 0.5;
  const double L = F1 / F + q;                                        // φ_ρ / φ
  const double M = F2 / F + 2.0 * q * F1 / F + q * q - p / (rho * rho);  // φ_ρρ / φ
  const double dr = two_u2 * x;                                       // dρ/dx
  LogJet j;
  j.log_value = -0.5 * rho + p * std::log(rho) + std::log(std::abs(F));
  j.sign = F < 0.0 ? -1.0 : 1.0;
  j.l1 = dr * L;
  j.l2 = dr * dr * M + two_u2 * L;
  return j;
}

Jet EvaluableSolution::jet(double x) const {
  const auto lj = log_jet(x);
  const double v = scale_ * lj.sign * std::exp(lj.log_value);
  return {v, v * lj.l1, v * lj.l2};
}

double EvaluableSolution::superpotential(double x) const { return log_jet(x).l1; }

double EvaluableSolution::superpotential_derivative(double x) const {
  const auto lj = log_jet(x);
  return lj.l2 - lj.l1 * lj.l1;
}

EvaluableSolution make_phi(const RepresentationParams& p) { return EvaluableSolution(p); }

double superpotential(const RepresentationParams& p, double x) {
  return EvaluableSolution(p).superpotential(x);
}

std::vector<TestFunction> default_test_functions() {
  std::vector<TestFunction> fs;
  fs.push_back({"x^2 exp(-x^2)",
                [](double x) {
                  const double g = std::exp(-x * x);
                  const double x2 = x * x;
                  return Jet{x2 * g, (2.0 * x - 2.0 * x2 * x) * g, (2.0 - 10.0 * x2 + 4.0 * x2 * x2) * g};
                },
                0.0});
  fs.push_back({"x^3 exp(-x)",
                [](double x) {
                  const double g = std::exp(-x);
                  const double x2 = x * x;
                  return Jet{x2 * x * g, (3.0 * x2 - x2 * x) * g, (6.0 * x - 6.0 * x2 + x2 * x) * g};
                },
                0.0});
  fs.push_back({"sin^2(x) exp(-x^2)",
                [](double x) {
                  const double g = std::exp(-x * x);
                  const double g1 = -2.0 * x * g;
                  const double g2 = (4.0 * x * x - 2.0) * g;
                  const double s = std::sin(x);
                  const double s0 = s * s;
                  const double s1 = std::sin(2.0 * x);
                  const double s2 = 2.0 * std::cos(2.0 * x);
                  return Jet{s0 * g, s1 * g + s0 * g1, s2 * g + 2.0 * s1 * g1 + s0 * g2};
                },
                0.05});
  return fs;
}

double apply_a(const EvaluableSolution& phi, const Jet& f, double x) {
  return f.d1 - phi.superpotential(x) * f.value;
}

double apply_b(const EvaluableSolution& phi, const Jet& f, double x) {
  return -f.d1 - phi.superpotential(x) * f.value;
}

ResidualReport factorization_residual(const EvaluableSolution& phi, const TestFunction& f,
                                      const std::vector<double>& grid, double h_perturbation) {
  const auto& rp = phi.params().rp;
  const double g1 = rp.g1();
  const double g2 = rp.g2();
  const double u = phi.params().u();
  ResidualReport rep;
  for (double x : grid) {
    if (x <= f.lower) continue;
    const Jet fj = f.eval(x);
    const double h = phi.superpotential(x) + h_perturbation;
    const double hp = phi.superpotential_derivative(x);
    const double ba = -fj.d2 + (hp + h * h) * fj.value;
    const double pot = (g1 / (x * x) + g2 * x * x) * fj.value;
    const double target = -fj.d2 + pot + u * fj.value;
    const double denom = std::abs(fj.d2) + std::abs(pot) + std::abs(u * fj.value);
    if (denom == 0.0) continue;
    const double r = std::abs(ba - target) / denom;
    if (!(r <= rep.max_residual)) {
      rep.max_residual = r;
      rep.worst_x = x;
    }
  }
  return rep;
}

ResidualReport kernel_residual(const EvaluableSolution& phi, const std::vector<double>& grid) {
  ResidualReport rep;
  for (double x : grid) {
    const Jet j = phi.jet(x);
    const double h = phi.superpotential(x);
    const double denom = std::abs(j.d1) + std::abs(h * j.value);
    if (denom == 0.0) continue;
    const double r = std::abs(apply_a(phi, j, x)) / denom;
    if (!(r <= rep.max_residual)) {
      rep.max_residual = r;
      rep.worst_x = x;
    }
  }
  return rep;
}

std::vector<double> positivity_violations(const EvaluableSolution& phi,
                                          const std::vector<double>& grid) {
  std::vector<double> bad;
  for (double x : grid) {
    const double v = phi.value(x);
    if (!(v > 0.0) || !std::isfinite(v)) bad.push_back(x);
  }
  return bad;
}

AsymptoticCoefficients asymptotic_coeffs(const RepresentationParams& p) {
  p.validate();
  const double kappa = p.rp.kappa;
  if (kappa >= 1.0) throw DomainError("asymptotic_coeffs: only defined for kappa < 1");
  if (!(p.w > p.rp.w0)) throw DomainError("asymptotic_coeffs: requires w > w0");
  if (!(p.mu < kHalfPi - 1e-15)) throw DomainError("asymptotic_coeffs: requires mu < pi/2");
  const double alpha = p.rp.alpha(p.w);
  const double s = std::sin(p.mu);
  const double c = std::cos(p.mu);
  AsymptoticCoefficients a;
  if (kappa > 0.0) {
    const double ratio = sf::gamma(1.0 - kappa) / sf::gamma(1.0 + kappa) * sf::gamma(alpha) *
                         sf::rgamma(alpha - kappa);
    a.A_tilde = s - c * ratio;
    a.B_tilde = c;
    a.theta = std::atan(a.A_tilde / a.B_tilde);
    a.c_norm = c / std::cos(a.theta);
  } else {
    a.A_tilde = s + c * (2.0 * kPsi1 - sf::digamma(alpha));
    a.B_tilde = -2.0 * c;
    a.theta = std::atan(-a.A_tilde / c);
    a.c_norm = -c / std::cos(a.theta);
  }
  return a;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return g;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  auto g = linear_grid(std::log(lo), std::log(hi), n);
  for (double& v : g) v = std::exp(v);
  return g;
}

}  // namespace calogero
