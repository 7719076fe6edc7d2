#pragma once

#include <functional>
#include <string>
#include <vector>

#include "calogero/params.hpp"

namespace calogero {

/// One member (μ, w) of the factorization family. μ ∈ [0, π/2], w ≥ w₀; μ is ignored at w = w₀.
struct RepresentationParams {
  double mu = 0.0;
  double w = 0.0;
  ReducedParams rp;

  /// Throws DomainError when μ or w is out of range.
  void validate() const;
  bool exceptional() const { return w == rp.w0; }
  double u() const { return 4.0 * rp.energy_unit() * w; }
};

/// Value and first two x-derivatives at one point.
struct Jet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// The positive solution φ(μ, w; x) = e^{−ρ/2} ρ^{1/4+κ/2} F(ρ), ρ = (υx)², with
///   F = sin μ Φ(α,β;ρ) + cos μ Γ(α)/Γ(κ) Ψ(α,β;ρ)   (κ > 0)
///   F = sin μ Φ(α,1;ρ) + cos μ Γ(α) Ψ(α,1;ρ)         (κ = 0)
///   F = 1                                              (w = w₀)
/// times a constant `scale`. Derivatives are analytic.
class EvaluableSolution {
 public:
  explicit EvaluableSolution(const RepresentationParams& p, double scale = 1.0);

  const RepresentationParams& params() const { return p_; }
  double scale() const { return scale_; }
  EvaluableSolution rescaled(double factor) const;

  Jet jet(double x) const;
  double value(double x) const { return jet(x).value; }
  double derivative(double x) const { return jet(x).d1; }
  double second_derivative(double x) const { return jet(x).d2; }
  /// h = φ′/φ.
  double superpotential(double x) const;
  /// h′ = φ″/φ − h².
  double superpotential_derivative(double x) const;

 private:
  struct LogJet {
    double log_value;  // log φ/scale
    double l1;         // φ′/φ
    double l2;         // φ″/φ
    double sign;
  };
  LogJet log_jet(double x) const;

  RepresentationParams p_;
  double scale_;
  double sin_mu_ = 0.0;
  double psi_coef_ = 0.0;
};

EvaluableSolution make_phi(const RepresentationParams& p);
double superpotential(const RepresentationParams& p, double x);

/// A smooth test function with analytic derivatives, supported (numerically) in x > lower.
struct TestFunction {
  std::string name;
  std::function<Jet(double)> eval;
  double lower = 0.0;
};

/// {x²e^{−x²}, x³e^{−x}, sin²(x)e^{−x²} on x > 0.05}.
std::vector<TestFunction> default_test_functions();

/// ǎf = f′ − h f.
double apply_a(const EvaluableSolution& phi, const Jet& f, double x);
/// b̌f = −f′ − h f.
double apply_b(const EvaluableSolution& phi, const Jet& f, double x);

struct ResidualReport {
  double max_residual = 0.0;
  double worst_x = 0.0;
};

/// max over the grid of |b̌ǎf − (Ȟ + u) f| / (|f″| + |(g1/x² + g2x²) f| + |u f|).
/// b̌ǎf is formed from h and h′ as −f″ + (h′ + h²) f; `h_perturbation` adds a constant to h.
ResidualReport factorization_residual(const EvaluableSolution& phi, const TestFunction& f,
                                      const std::vector<double>& grid, double h_perturbation = 0.0);

/// max over the grid of |ǎφ| / (|φ′| + |hφ|).
ResidualReport kernel_residual(const EvaluableSolution& phi, const std::vector<double>& grid);

/// First grid point with φ ≤ 0 (or non-finite); empty when φ > 0 everywhere.
std::vector<double> positivity_violations(const EvaluableSolution& phi,
                                          const std::vector<double>& grid);

/// Leading behaviour at the origin, φ ≈ c[(υx)^{1/2+κ} sin θ + (υx)^{1/2−κ} cos θ] (κ ∈ (0,1))
/// or c[(υx)^{1/2} sin θ + 2 (υx)^{1/2} ln(υx) cos θ] (κ = 0).
struct AsymptoticCoefficients {
  double A_tilde = 0.0;
  double B_tilde = 0.0;
  double theta = 0.0;
  double c_norm = 0.0;
};

/// Requires κ ∈ [0, 1), w > w₀, μ ∈ [0, π/2).
AsymptoticCoefficients asymptotic_coeffs(const RepresentationParams& p);

std::vector<double> linear_grid(double lo, double hi, std::size_t n);
std::vector<double> log_grid(double lo, double hi, std::size_t n);

}  // namespace calogero
