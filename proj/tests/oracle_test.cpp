#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "calogero/errors.hpp"
#include "calogero/oracle.hpp"
#include "calogero/spectral.hpp"
#include "reference/reference_values.hpp"

using namespace calogero;
namespace ref = calogero::reference;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST(Oracle, UniqueLevels) {
  const auto s = shoot_spectrum({0.75, 1.0}, ExtensionLabel::unique(), 3);
  ASSERT_EQ(s.energies.size(), 3u);
  for (int n = 0; n < 3; ++n) EXPECT_NEAR(s.energies[n], 4.0 * (n + 1), 1e-3);
}

TEST(Oracle, FriedrichsKappaHalf) {
  const auto s = shoot_spectrum({0.0, 1.0}, ExtensionLabel::nu(std::numbers::pi / 2), 1);
  EXPECT_NEAR(s.energies[0], 3.0, 1e-3);
}

TEST(Oracle, KappaZeroNuZeroMatchesDigammaRoot) {
  const auto s = shoot_spectrum({-0.25, 1.0}, ExtensionLabel::nu(0.0), 1);
  const double e = ground_state_energy(from_reduced(0.0, 1.0), ExtensionLabel::nu(0.0));
  EXPECT_LE(std::abs(s.energies[0] - e) / std::abs(e), 1e-3);
}

TEST(Oracle, AgreesWithFrozenSpectra) {
  for (const auto& p : ref::kSpectrumPoints) {
    if (std::abs(p.nu) > 1.0) continue;
    const double g1 = p.kappa * p.kappa - 0.25;
    const auto s = shoot_spectrum({g1, 1.0}, ExtensionLabel::nu(p.nu), 5);
    for (int n = 0; n < 5; ++n) {
      EXPECT_LE(rel(s.energies[n], p.energies[n]), 1e-6) << "kappa=" << p.kappa << " nu=" << p.nu << " n=" << n;
    }
  }
}

TEST(Oracle, StrictlyIncreasingWithSmallMismatch) {
  const auto s = shoot_spectrum({0.1, 2.0}, ExtensionLabel::nu(-0.8), 6);
  for (std::size_t n = 1; n < s.energies.size(); ++n) EXPECT_GT(s.energies[n], s.energies[n - 1]);
  for (double r : s.mismatch_residuals) EXPECT_LE(r, 1e-8);
}

TEST(Oracle, ScalesWithUpsilonSquared) {
  const auto one = shoot_spectrum({0.3, 1.0}, ExtensionLabel::nu(0.4), 3);
  const auto two = shoot_spectrum({0.3, 16.0}, ExtensionLabel::nu(0.4), 3);
  for (int n = 0; n < 3; ++n) EXPECT_LE(rel(two.energies[n], 4.0 * one.energies[n]), 1e-6);
}

TEST(Oracle, BoundaryTruncationInsensitive) {
  const Couplings c{0.1, 1.0};
  const auto ext = ExtensionLabel::nu(0.6);
  const auto base = shoot_spectrum(c, ext, 3);
  ShootingConfig wide;
  wide.x_min = 0.01;
  wide.x_max = 16.0;
  const auto moved = shoot_spectrum(c, ext, 3, wide);
  for (int n = 0; n < 3; ++n) EXPECT_LE(rel(moved.energies[n], base.energies[n]), 1e-4);
}

TEST(Oracle, MatchPointInvariance) {
  const Couplings c{-0.25, 1.0};
  const auto ext = ExtensionLabel::nu(-0.5);
  const auto base = shoot_spectrum(c, ext, 3);
  for (double xm : {0.5, 0.8, 1.5, 2.0}) {
    ShootingConfig cfg;
    cfg.x_match = xm;
    const auto s = shoot_spectrum(c, ext, 3, cfg);
    for (int n = 0; n < 3; ++n) EXPECT_LE(rel(s.energies[n], base.energies[n]), 1e-6) << xm;
  }
}

TEST(Oracle, NodeCountFollowsLevelIndex) {
  for (const auto& [g1, ext] : {std::pair{0.0, ExtensionLabel::nu(0.3)}, std::pair{2.0, ExtensionLabel::unique()},
                                 std::pair{-0.25, ExtensionLabel::nu(-1.0)}}) {
    const auto s = shoot_spectrum({g1, 1.0}, ext, 4, {}, true);
    ASSERT_EQ(s.eigenfunctions.size(), 4u);
    for (std::size_t n = 0; n < 4; ++n) EXPECT_EQ(count_nodes(s.eigenfunctions[n]), n) << g1 << " n=" << n;
  }
}

TEST(Oracle, OverlapsAndOrthogonality) {
  const auto s = shoot_spectrum({0.75, 1.0}, ExtensionLabel::unique(), 3, {}, true);
  const auto& u0 = s.eigenfunctions[0];
  EXPECT_NEAR(eigenfunction_overlap(u0, u0), 1.0, 1e-8);
  EXPECT_LE(eigenfunction_overlap(u0, s.eigenfunctions[1]), 1e-4);
  EXPECT_LE(eigenfunction_overlap(s.eigenfunctions[1], s.eigenfunctions[2]), 1e-4);
  // Analytic ground state for κ = 1: √2 x^{3/2} e^{−x²/2}.
  const auto exact = sample_like(u0, [](double x) { return std::sqrt(2.0) * std::pow(x, 1.5) * std::exp(-0.5 * x * x); });
  EXPECT_GE(eigenfunction_overlap(exact, u0), 0.9999);
}

TEST(Oracle, EigenfunctionMatchesWavefunctionForNuFamily) {
  const auto rp = from_reduced(0.5, 1.0);
  const auto ext = ExtensionLabel::nu(0.0);
  const auto s = shoot_eigenfunction(rp.couplings(), ext, ground_state_energy(rp, ext));
  const auto u = ground_state_wavefunction(rp, ext);
  EXPECT_GE(eigenfunction_overlap(sample_like(s, [&](double x) { return u.value(x); }), s), 0.9999);
}

TEST(Oracle, WronskianChangesSignAcrossLevel) {
  const Couplings c{0.75, 1.0};
  const auto ext = ExtensionLabel::unique();
  EXPECT_LT(wronskian_mismatch(c, ext, 3.9) * wronskian_mismatch(c, ext, 4.1), 0.0);
}

TEST(Oracle, ConfigValidationAndErrors) {
  ShootingConfig bad;
  bad.x_min = 2.0;
  EXPECT_THROW(bad.validate(), DomainError);
  ShootingConfig neg;
  neg.rel_tol = -1.0;
  EXPECT_THROW(neg.validate(), DomainError);
  EXPECT_THROW(shoot_spectrum({-0.5, 1.0}, ExtensionLabel::nu(0.0), 1), DomainError);
  EXPECT_THROW(shoot_spectrum({0.0, -1.0}, ExtensionLabel::nu(0.0), 1), DomainError);
  ShootingConfig low;
  low.e_top = 5.0;
  EXPECT_THROW(shoot_spectrum({0.75, 1.0}, ExtensionLabel::unique(), 3, low), ConvergenceError);
}
