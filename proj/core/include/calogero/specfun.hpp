#pragma once

// Real-argument special functions used throughout the library: Γ, ψ, Pochhammer,
// and the confluent hypergeometric pair Φ(α,β;ρ) (Kummer) / Ψ(α,β;ρ) (Tricomi).

#include <cstddef>

namespace calogero::specfun {

/// Truncation control for the Kummer series.
struct SeriesControl {
  double rel_tol = 1e-16;
  std::size_t max_terms = 5000;
};

/// log|Γ(z)| together with the sign of Γ(z).
struct SignedLogGamma {
  double log_abs;
  int sign;
};

/// Γ(z) by a Lanczos approximation (g = 7, 9 terms); reflection for z < 1/2.
/// Throws PoleError at nonpositive integers.
double gamma(double z);

/// log|Γ(z)| and sign(Γ(z)). Throws PoleError at nonpositive integers.
SignedLogGamma log_gamma(double z);

/// 1/Γ(z); entire, exactly zero at nonpositive integers.
double rgamma(double z);

/// Γ(a)/Γ(b) evaluated in the log domain. Returns 0 when b is a pole of Γ;
/// throws PoleError when a is.
double gamma_ratio(double a, double b);

/// Digamma ψ(z) = Γ'(z)/Γ(z). Throws PoleError at nonpositive integers.
double digamma(double z);

/// Rising factorial (a)_k.
double pochhammer(double a, unsigned k);

/// Kummer Φ(α,β;ρ) for α ≥ 0, β ≥ 1, ρ ≥ 0 by direct summation.
double kummer_phi(double alpha, double beta, double rho, const SeriesControl& ctrl = {});

/// Tricomi Ψ(α,β;ρ) for α > 0, β ≥ 1, ρ > 0. Uses the two-Φ connection formula when
/// β is well away from an integer and ρ is small, the integral representation otherwise.
double tricomi_psi(double alpha, double beta, double rho);

/// Ψ through the Φ-combination (non-integer β only). Exposed for cross-checks.
double tricomi_psi_series(double alpha, double beta, double rho, const SeriesControl& ctrl = {});

/// Ψ through its Laplace-type integral representation. Valid for any β.
double tricomi_psi_integral(double alpha, double beta, double rho);

/// Second solution at α = 0: ∫_{a²}^{ρ} τ^{-β} e^{τ} dτ.
double psi_exceptional(double beta, double rho, double a = 1.0);

namespace detail {
/// Raw hypergeometric 1F1 series for any real a and b ∉ {0,-1,-2,...}.
double hyp1f1_series(double a, double b, double rho, const SeriesControl& ctrl);
}  // namespace detail

namespace testing {
/// While alive, gamma()/log_gamma()/rgamma()/gamma_ratio() on this thread evaluate Γ at a
/// shifted argument. Used by mutation checks in the verification suite.
class ScopedGammaFault {
 public:
  explicit ScopedGammaFault(double shift);
  ~ScopedGammaFault();
  ScopedGammaFault(const ScopedGammaFault&) = delete;
  ScopedGammaFault& operator=(const ScopedGammaFault&) = delete;

 private:
  double previous_;
};
}  // namespace testing

}  // namespace calogero::specfun
