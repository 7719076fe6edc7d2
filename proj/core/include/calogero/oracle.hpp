#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "calogero/extension.hpp"
#include "calogero/params.hpp"

namespace calogero {

/// Shooting parameters. Lengths are in units of 1/υ, energies in units of υ².
struct ShootingConfig {
  double x_min = 0.02;
  double x_max = 8.0;
  double x_match = 1.0;
  double rel_tol = 1e-10;
  double e_step = 0.4;
  std::optional<double> e_floor;  // default −20
  std::optional<double> e_top;    // default 4·n_max + 12
  std::size_t eigenfunction_points = 2000;

  /// Throws DomainError unless 0 < x_min < x_match < x_max and tolerances are positive.
  void validate() const;
};

struct SampledFunction {
  std::vector<double> grid;
  std::vector<double> values;
};

struct OracleSpectrum {
  std::vector<double> energies;            // raw units
  std::vector<double> mismatch_residuals;  // |W(E)| of the normalized Wronskian at each root
  std::vector<SampledFunction> eigenfunctions;  // L²-normalized, filled on request
  std::vector<std::string> notes;
};

/// Normalized Wronskian (χ_L χ_R′ − χ_L′ χ_R)/(|(χ_L,χ_L′)| |(χ_R,χ_R′)|) at x_match.
double wronskian_mismatch(const Couplings& c, const ExtensionLabel& ext, double energy,
                          const ShootingConfig& cfg = {});

/// First n_max eigenvalues of −χ″ + (g1/x² + g2x²)χ = Eχ under the extension's boundary
/// condition at the origin, by sign changes of the Wronskian mismatch.
OracleSpectrum shoot_spectrum(const Couplings& c, const ExtensionLabel& ext, std::size_t n_max,
                              const ShootingConfig& cfg = {}, bool with_eigenfunctions = false);

/// Eigenfunction at a known eigenvalue, sampled on a grid reaching down to 1e-12/υ.
SampledFunction shoot_eigenfunction(const Couplings& c, const ExtensionLabel& ext, double energy,
                                    const ShootingConfig& cfg = {});

/// |∫u1 u2| / √(∫u1² ∫u2²) by the trapezoid rule. Throws DomainError on grid mismatch.
double eigenfunction_overlap(const SampledFunction& u1, const SampledFunction& u2);

/// Samples f on g's grid.
template <class F>
SampledFunction sample_like(const SampledFunction& g, F&& f) {
  SampledFunction s{g.grid, {}};
  s.values.reserve(g.grid.size());
  for (double x : g.grid) s.values.push_back(f(x));
  return s;
}

/// Interior sign changes, ignoring samples below 1e-10 of the maximum magnitude.
std::size_t count_nodes(const SampledFunction& u);

}  // namespace calogero
