#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "calogero/extension.hpp"
#include "calogero/factorization.hpp"
#include "calogero/params.hpp"

namespace calogero {

enum class SpectrumMethod { ClosedForm, BracketedRoot };
std::string_view to_string(SpectrumMethod m);

struct SpectrumResult {
  std::vector<double> energies;   // raw units, (inverse length)²
  std::vector<double> residuals;  // Newton distance |f|/|f′| in a = (1+κ)/2 − E/(4υ²)
  SpectrumMethod method = SpectrumMethod::ClosedForm;
  ExtensionLabel extension = ExtensionLabel::friedrichs();
  std::vector<std::string> notes;
};

/// Angle θ(μ, w) ∈ (−π/2, π/2):
///   κ ∈ (0,1): tan θ = tan μ − Γ(1−κ)Γ(α)/(Γ(1+κ)Γ(α−κ))
///   κ = 0:     tan θ = ψ(α) − 2ψ(1) − tan μ
/// with α = (1+κ)/2 + w. Requires κ ∈ [0,1), w > w₀, μ ∈ [0, π/2).
double theta_of(double mu, double w, const ReducedParams& rp);

struct WSolution {
  double w = 0.0;
  double alpha = 0.0;     // (1+κ)/2 + w, carried at full precision
  double residual = 0.0;  // |tan θ − tan ν| / (1 + |tan ν|)
};

/// The unique w > w₀ with θ(μ, w) = ν. Requires κ ∈ [0,1), ν ∈ (−π/2, π/2).
WSolution solve_w_detailed(double mu, double nu, const ReducedParams& rp);
double solve_w(double mu, double nu, const ReducedParams& rp);

/// Lowest eigenvalue of the given extension.
double ground_state_energy(const ReducedParams& rp, const ExtensionLabel& ext);

/// First n_max eigenvalues, strictly increasing.
SpectrumResult spectrum(const ReducedParams& rp, const ExtensionLabel& ext, std::size_t n_max);

/// The spectral function whose zeros in a are the eigenvalues of the ν extension:
///   κ ∈ (0,1): atan(Γ(1−κ)Γ(a)/(Γ(1+κ)Γ(a−κ))) + ν
///   κ = 0:     atan(ψ(a) − 2ψ(1)) − ν
double spectral_function(const ReducedParams& rp, double nu, double a);

/// Energy ↔ a conversion, a = (1+κ)/2 − E/(4υ²).
double energy_from_a(const ReducedParams& rp, double a);
double a_from_energy(const ReducedParams& rp, double energy);

/// L²(0,∞)-normalized ground state.
EvaluableSolution ground_state_wavefunction(const ReducedParams& rp, const ExtensionLabel& ext);

}  // namespace calogero
