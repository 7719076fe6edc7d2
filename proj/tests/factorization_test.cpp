#include <cmath>
#include <numbers>

#include <boost/math/special_functions/hypergeometric_1F1.hpp>
#include <gtest/gtest.h>

#include "calogero/errors.hpp"
#include "calogero/factorization.hpp"
#include "calogero/spectral.hpp"
#include "reference/reference_values.hpp"

using namespace calogero;
namespace ref = calogero::reference;

namespace {

constexpr double kPi = std::numbers::pi;

RepresentationParams rep(double kappa, double mu, double w, double upsilon = 1.0) {
  return {mu, w, from_reduced(kappa, upsilon)};
}

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

// Fourth-order central difference for φ″.
double fd_second(const EvaluableSolution& phi, double x, double h) {
  return (-phi.value(x + 2 * h) + 16 * phi.value(x + h) - 30 * phi.value(x) + 16 * phi.value(x - h) -
          phi.value(x - 2 * h)) /
         (12 * h * h);
}

double ode_residual(const EvaluableSolution& phi, double x, double d2) {
  const auto& p = phi.params();
  const double g1 = p.rp.g1(), g2 = p.rp.g2();
  const double v = phi.value(x);
  const double pot = (g1 / (x * x) + g2 * x * x + p.u()) * v;
  return std::abs(-d2 + pot) / (std::abs(d2) + std::abs(pot));
}

}  // namespace

TEST(Phi, MatchesFrozenValues) {
  for (const auto& r : ref::kPhiPoints) {
    const auto phi = make_phi(rep(r.kappa, r.mu, r.w));
    EXPECT_LT(rel_err(phi.value(r.x), r.value), 1e-10)
        << "kappa=" << r.kappa << " mu=" << r.mu << " w=" << r.w << " x=" << r.x;
    EXPECT_NEAR(phi.superpotential(r.x), r.log_derivative, 1e-9 * std::max(1.0, std::abs(r.log_derivative)))
        << "kappa=" << r.kappa << " mu=" << r.mu << " w=" << r.w << " x=" << r.x;
  }
}

TEST(Phi, MatchesFrozenValuesAtOtherUpsilon) {
  for (const auto& r : ref::kPhiPointUpsilons) {
    const auto phi = make_phi(rep(r.kappa, r.mu, r.w, ref::kPhiUpsilon));
    EXPECT_LT(rel_err(phi.value(r.x), r.value), 1e-10) << "x=" << r.x;
    EXPECT_NEAR(phi.superpotential(r.x), r.log_derivative, 1e-9 * std::abs(r.log_derivative)) << "x=" << r.x;
  }
}

TEST(Phi, ExceptionalClosedForms) {
  const auto one = make_phi(rep(1.0, 0.0, -1.0));
  EXPECT_NEAR(one.value(1.0), std::exp(-0.5), 1e-15);
  for (double x : {0.1, 0.7, 2.0}) {
    EXPECT_NEAR(one.value(x), std::pow(x, 1.5) * std::exp(-0.5 * x * x), 1e-14);
  }
  EXPECT_NEAR(make_phi(rep(0.0, 0.3, -0.5)).superpotential(1.0), -0.5, 1e-14);
  EXPECT_NEAR(superpotential(rep(1.0, 0.0, -1.0), 1.0), 0.5, 1e-14);
  for (double kappa : {0.0, 0.5, 1.0, 2.5}) {
    const auto p = rep(kappa, 0.0, -0.5 * (1.0 + kappa));
    EXPECT_NEAR(superpotential(p, 1e-7) * 1e-7, 0.5 + kappa, 1e-12);
  }
}

TEST(Phi, PureRegularBranch) {
  for (double kappa : {0.0, 0.5, 1.7}) {
    for (double w : {-0.2, 0.0, 1.3}) {
      const auto phi = make_phi(rep(kappa, kPi / 2, w));
      for (double x : {0.2, 1.0, 3.0}) {
        const double rho = x * x;
        const double want = std::exp(-rho / 2) * std::pow(rho, 0.25 + kappa / 2) *
                            boost::math::hypergeometric_1F1(0.5 * (1 + kappa) + w, 1 + kappa, rho);
        EXPECT_LT(rel_err(phi.value(x), want), 1e-12);
      }
      // Leading power at the origin.
      EXPECT_NEAR(phi.superpotential(1e-6) * 1e-6, 0.5 + kappa, 1e-9);
    }
  }
}

TEST(Phi, RescaledKeepsSuperpotential) {
  const auto phi = make_phi(rep(0.5, 0.4, 0.2));
  const auto big = phi.rescaled(3.0);
  EXPECT_NEAR(big.value(0.8), 3.0 * phi.value(0.8), 1e-14);
  EXPECT_EQ(big.superpotential(0.8), phi.superpotential(0.8));
}

TEST(Phi, SecondDerivativeAgreesWithFiniteDifferences) {
  for (double kappa : {0.0, 0.5, 2.0}) {
    for (double mu : {0.0, 0.7}) {
      const auto phi = make_phi(rep(kappa, mu, 0.4));
      for (double x : {0.3, 1.0, 2.2}) {
        const double fd = fd_second(phi, x, 1e-3);
        EXPECT_NEAR(phi.second_derivative(x), fd, 1e-7 * std::max(1.0, std::abs(fd)));
      }
    }
  }
}

TEST(Phi, OdeResidualConvergesUnderRefinement) {
  for (double kappa : {0.0, 0.25, 0.5, 1.0}) {
    for (double mu : {0.0, kPi / 8, kPi / 4}) {
      for (double w : {-0.5 * (1 + kappa) + 0.1, 0.0, 1.0}) {
        const auto phi = make_phi(rep(kappa, mu, w));
        for (double x : {0.5, 1.0, 2.0, 3.5}) {
          const double coarse = ode_residual(phi, x, fd_second(phi, x, 2e-2));
          const double fine = ode_residual(phi, x, fd_second(phi, x, 1e-2));
          EXPECT_LE(fine, 1e-6) << kappa << " " << mu << " " << w << " " << x;
          // O(h^4) truncation: halving h gains at least a factor 4 until round-off.
          EXPECT_TRUE(fine <= coarse / 4 || fine <= 1e-9) << coarse << " vs " << fine;
          EXPECT_LE(ode_residual(phi, x, phi.second_derivative(x)), 1e-10);
        }
      }
    }
  }
}

TEST(Phi, PositiveOnLogGrid) {
  const auto grid = log_grid(1e-6, 10.0, 120);
  for (double kappa : {0.0, 0.25, 0.5, 0.99, 1.0, 2.0}) {
    const double w0 = -0.5 * (1 + kappa);
    for (int k = 0; k <= 4; ++k) {
      const double mu = k * kPi / 8;
      for (double w : {w0, w0 + 0.1, 0.0, 1.0, 5.0}) {
        const auto phi = make_phi(rep(kappa, mu, w));
        EXPECT_TRUE(positivity_violations(phi, grid).empty()) << kappa << " " << mu << " " << w;
        for (double x : grid) {
          const double v = phi.value(x);
          ASSERT_TRUE(std::isfinite(v) && v > 0.0) << kappa << " " << mu << " " << w << " x=" << x;
        }
      }
    }
  }
}

TEST(Phi, OriginAsymptotics) {
  for (double kappa : {0.25, 0.5, 0.75}) {
    for (double mu : {0.0, 0.4, 1.2}) {
      for (double w : {-0.5 * (1 + kappa) + 0.1, 0.3, 2.0}) {
        const auto p = rep(kappa, mu, w, 1.3);
        const auto c = asymptotic_coeffs(p);
        const double y = 1e-4, x = y / 1.3;
        const double lead = c.A_tilde * std::pow(y, 0.5 + kappa) + c.B_tilde * std::pow(y, 0.5 - kappa);
        EXPECT_NEAR(make_phi(p).value(x) / lead, 1.0, 1e-3) << kappa << " " << mu << " " << w;
      }
    }
  }
  for (double mu : {0.0, 0.4, 1.2}) {
    const auto p = rep(0.0, mu, 0.3);
    const auto c = asymptotic_coeffs(p);
    const double y = 1e-4;
    const double lead = std::sqrt(y) * (c.A_tilde + c.B_tilde * std::log(y));
    EXPECT_NEAR(make_phi(p).value(y) / lead, 1.0, 1e-3) << mu;
  }
}

TEST(Phi, InfinityAsymptotics) {
  // Correction is α(α−β+1)/ρ; the chosen w keep it under 1% at υx = 6.
  for (double kappa : {0.0, 0.25, 0.5, 0.75}) {
    for (double w : {-0.5 * (1 + kappa) + 0.1, 0.0}) {
      const auto p = rep(kappa, 0.0, w, 0.8);
      const double y = 6.0, x = y / 0.8;
      const double alpha = p.rp.alpha(w);
      const double norm = kappa > 0 ? std::tgamma(kappa) / std::tgamma(alpha) : 1.0 / std::tgamma(alpha);
      const double law = make_phi(p).value(x) * std::pow(y, 0.5 + 2 * w) * std::exp(0.5 * y * y) * norm;
      EXPECT_NEAR(law, 1.0, 1e-2) << kappa << " " << w;
    }
  }
}

TEST(AsymptoticCoeffs, Examples) {
  const auto near_pole = asymptotic_coeffs(rep(0.5, 0.0, -0.25 + 1e-10));
  EXPECT_NEAR(near_pole.A_tilde, 0.0, 1e-8);
  EXPECT_NEAR(near_pole.theta, 0.0, 1e-8);
  EXPECT_NEAR(asymptotic_coeffs(rep(0.0, kPi / 4, 0.3)).B_tilde, -std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(asymptotic_coeffs(rep(0.5, kPi / 2 - 1e-9, 0.3)).B_tilde, 0.0, 1e-8);
  EXPECT_THROW(asymptotic_coeffs(rep(1.0, 0.2, 0.3)), DomainError);
  EXPECT_THROW(asymptotic_coeffs(rep(0.5, kPi / 2, 0.3)), DomainError);
}

TEST(AsymptoticCoeffs, ThetaAgreesWithSpectralAngle) {
  for (double kappa : {0.0, 0.3, 0.6, 0.9}) {
    for (double mu : {0.0, 0.5, 1.3}) {
      for (double w : {-0.5 * (1 + kappa) + 0.05, -0.1, 0.7, 3.0}) {
        const auto p = rep(kappa, mu, w);
        const auto c = asymptotic_coeffs(p);
        EXPECT_NEAR(c.theta, theta_of(mu, w, p.rp), 1e-12);
        EXPECT_GT(c.theta, -kPi / 2);
        EXPECT_LT(c.theta, kPi / 2);
        if (kappa > 0) EXPECT_NEAR(std::tan(c.theta), c.A_tilde / c.B_tilde, 1e-9 * (1 + std::abs(std::tan(c.theta))));
      }
    }
  }
}

TEST(Ladder, KernelAndProductForms) {
  for (double kappa : {0.0, 0.5, 1.5}) {
    const auto phi = make_phi(rep(kappa, 0.6, 0.2));
    for (double x : {0.05, 0.5, 1.0, 4.0}) {
      const auto j = phi.jet(x);
      const double h = phi.superpotential(x);
      EXPECT_NEAR(apply_a(phi, j, x), 0.0, 1e-12 * (std::abs(j.d1) + std::abs(h * j.value)));
      const Jet inv{1.0 / j.value, -j.d1 / (j.value * j.value), 0.0};
      EXPECT_NEAR(apply_a(phi, inv, x), -2.0 * h / j.value, 1e-12 * std::abs(2.0 * h / j.value));
      EXPECT_NEAR(apply_b(phi, inv, x), 0.0, 1e-12 * std::abs(h / j.value));
      EXPECT_DOUBLE_EQ(apply_b(phi, j, x), -j.d1 - h * j.value);
      // a − b = 2 d/dx on any function.
      const Jet f{std::sin(x), std::cos(x), -std::sin(x)};
      EXPECT_NEAR(apply_a(phi, f, x) - apply_b(phi, f, x), 2.0 * std::cos(x), 1e-12);
    }
  }
}

TEST(Factorization, IdentityHoldsOnDefaultSuite) {
  const auto grid = linear_grid(0.1, 5.0, 200);
  for (double kappa : {0.0, 0.25, 0.5, 1.0, 2.0}) {
    const double w0 = -0.5 * (1 + kappa);
    for (double mu : {0.0, kPi / 6, kPi / 2}) {
      for (double w : {w0, w0 + 0.1, 0.0, 1.0}) {
        const auto phi = make_phi(rep(kappa, mu, w));
        for (const auto& f : default_test_functions()) {
          EXPECT_LE(factorization_residual(phi, f, grid).max_residual, 1e-8)
              << kappa << " " << mu << " " << w << " " << f.name;
        }
      }
    }
  }
}

TEST(Factorization, PhiItselfSolvesTheEquation) {
  const auto grid = linear_grid(0.1, 5.0, 200);
  for (double kappa : {0.0, 0.5, 1.0}) {
    const auto phi = make_phi(rep(kappa, 0.3, 0.5));
    const TestFunction self{"phi", [&](double x) { return phi.jet(x); }, 0.0};
    EXPECT_LE(factorization_residual(phi, self, grid).max_residual, 1e-8);
    EXPECT_LE(kernel_residual(phi, grid).max_residual, 1e-10);
  }
}

TEST(Factorization, PerturbedSuperpotentialIsDetected) {
  const auto grid = linear_grid(0.1, 5.0, 200);
  const auto phi = make_phi(rep(0.5, kPi / 2, 0.0));
  const auto f = default_test_functions().front();
  const double clean = factorization_residual(phi, f, grid).max_residual;
  const double eps1 = factorization_residual(phi, f, grid, 1e-3).max_residual;
  const double eps2 = factorization_residual(phi, f, grid, 2e-3).max_residual;
  EXPECT_GT(eps1, 10.0 * clean);
  EXPECT_GT(eps1, 1e-8);
  EXPECT_NEAR(eps2 / eps1, 2.0, 0.5);
}

TEST(Factorization, Validation) {
  EXPECT_THROW(rep(0.5, -0.1, 0.0).validate(), DomainError);
  EXPECT_THROW(rep(0.5, 1.6, 0.0).validate(), DomainError);
  EXPECT_THROW(rep(0.5, 0.3, -0.8).validate(), DomainError);
  EXPECT_THROW(make_phi(rep(0.5, 0.3, -0.8)), DomainError);
  EXPECT_THROW(make_phi(rep(0.5, 0.3, 0.0)).value(0.0), DomainError);
  EXPECT_TRUE(rep(0.5, 0.3, -0.75).exceptional());
  EXPECT_DOUBLE_EQ(rep(0.5, 0.3, 0.25, 2.0).u(), 4.0);
}

TEST(Grids, Shapes) {
  const auto g = linear_grid(0.1, 5.0, 200);
  ASSERT_EQ(g.size(), 200u);
  EXPECT_DOUBLE_EQ(g.front(), 0.1);
  EXPECT_DOUBLE_EQ(g.back(), 5.0);
  const auto l = log_grid(1e-6, 10.0, 8);
  ASSERT_EQ(l.size(), 8u);
  EXPECT_NEAR(l.front(), 1e-6, 1e-20);
  EXPECT_NEAR(l.back(), 10.0, 1e-13);
  EXPECT_NEAR(l[1] / l[0], l[7] / l[6], 1e-12);
}
