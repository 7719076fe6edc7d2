#pragma once

#include <string>
#include <string_view>

namespace calogero {

/// Physical couplings of −d²/dx² + g1/x² + g2·x² on the half-line.
struct Couplings {
  double g1 = 0.0;
  double g2 = 1.0;
};

/// Region of the (g1, g2) plane.
enum class RegionClass {
  NoRepresentationFallToCenter,    // g1 < -1/4
  NoRepresentationFallToInfinity,  // g2 < 0 (g1 >= -1/4)
  CalogeroOnly,                    // g2 == 0, not computed
  UniqueExtension,                 // g1 >= 3/4, g2 > 0
  FamilyKappaPositive,             // -1/4 < g1 < 3/4, g2 > 0
  FamilyKappaZero,                 // g1 == -1/4, g2 > 0
};

std::string_view to_string(RegionClass r);

/// Both non-existence conditions, reported independently.
struct RegionFlags {
  bool fall_to_center = false;
  bool fall_to_infinity = false;
  bool calogero_only = false;
};

/// Dimensionless reduction: κ = √(g1 + 1/4), υ = g2^{1/4}, w₀ = −(1+κ)/2, u₀ = 4υ²w₀, β = 1 + κ.
struct ReducedParams {
  double kappa = 0.0;
  double upsilon = 1.0;
  double w0 = -0.5;
  double u0 = -2.0;
  double beta = 1.0;

  /// α(w) = (1+κ)/2 + w.
  double alpha(double w) const { return 0.5 * (1.0 + kappa) + w; }
  /// ρ(x) = (υx)².
  double rho(double x) const { return (upsilon * x) * (upsilon * x); }
  /// Energy scale υ².
  double energy_unit() const { return upsilon * upsilon; }
  double g1() const { return kappa * kappa - 0.25; }
  double g2() const { return energy_unit() * energy_unit(); }
  Couplings couplings() const { return {g1(), g2()}; }
  /// The same κ with υ = 1; spectra scale as υ².
  ReducedParams unit_scaled() const;
};

/// Builds ReducedParams from (κ, υ) directly. Throws DomainError for κ < 0 or υ ≤ 0.
ReducedParams from_reduced(double kappa, double upsilon);

/// Throws DomainError outside g1 ≥ −1/4, g2 > 0.
ReducedParams reduce(const Couplings& c);

RegionClass classify(const Couplings& c);
RegionFlags region_flags(const Couplings& c);

/// Human-readable reason no positive solution exists; empty inside the existence region.
std::string nonexistence_reason(const Couplings& c);

}  // namespace calogero
