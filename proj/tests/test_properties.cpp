// Randomized invariants. Each test draws from a fixed seed so failures replay.
#include <numbers>
#include <random>

#include "squeezelab/analytic.hpp"
#include "squeezelab/models.hpp"
#include "squeezelab/ordering.hpp"
#include "squeezelab/solver.hpp"
#include "test_support.hpp"

using namespace squeezelab;
using namespace std::complex_literals;

namespace {

cdouble random_lambda(std::mt19937_64& rng, double re_max = 6.0) {
  std::uniform_real_distribution<double> mod(0.3, re_max), arg(-1.2, 1.2);
  return std::polar(mod(rng), arg(rng));
}

cdouble random_beta(std::mt19937_64& rng) {
  std::normal_distribution<double> d(0.0, 0.8);
  return {d(rng), d(rng)};
}

}  // namespace

TEST(Properties, QuadratureDispersionsAtAdaptiveDim) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    const auto p = analytic::QuadratureParams::make(random_lambda(rng), random_beta(rng));
    const auto psi = analytic::quad_state(p, analytic::quad_dim_for_tail(p));
    const auto u = uncertainty::uncertainty_report(psi.fock(), std::vector<double>{0.0, 1.0});
    const auto d = analytic::quad_dispersions(p);
    EXPECT_NEAR(u.var_F, d.var_x, 1e-8 * d.var_x) << p.lambda;
    EXPECT_NEAR(u.var_G, d.var_p, 1e-8 * d.var_p) << p.lambda;
    EXPECT_NEAR(u.defect, std::sqrt(d.var_x * d.var_p) - 1.0, 1e-8) << p.lambda;
  }
}

TEST(Properties, QuadratureDefectIsTanSquared) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    const cdouble lambda = random_lambda(rng, 10.0);
    const auto p = analytic::QuadratureParams::make(lambda, random_beta(rng));
    const auto psi = analytic::quad_state(p, analytic::quad_dim_for_tail(p));
    const auto u = uncertainty::uncertainty_report(psi.fock(), std::vector<double>{0.0, 1.0});
    const double t2 = std::tan(std::arg(lambda));
    EXPECT_NEAR(u.var_F * u.var_G - 1.0, t2 * t2, 1e-6) << lambda;
  }
}

TEST(Properties, DefectGrowsWithArgLambda) {
  // Along a ray of fixed |lambda| the defect var_x var_p - 1 = tan^2(arg lambda) increases with |arg|.
  for (double m : {0.5, 2.0, 5.0}) {
    double prev = -1.0;
    for (double a = 0.0; a < 1.35; a += 0.15) {
      const auto p = analytic::QuadratureParams::make(std::polar(m, a), 0.3);
      const auto psi = analytic::quad_state(p, analytic::quad_dim_for_tail(p));
      const auto u = uncertainty::uncertainty_report(psi.fock(), std::vector<double>{0.0, 1.0});
      EXPECT_GT(u.defect, prev - 1e-12) << m << " " << a;
      prev = u.defect;
    }
  }
}

TEST(Properties, AmpSquaredBranchInvariance) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 8; ++t) {
    const cdouble lambda = random_lambda(rng, 8.0) + 0.2;
    if (std::abs(lambda - 1.0) < 0.05) continue;
    const cdouble beta = random_beta(rng);
    const auto p = analytic::AmpSquaredParams::make(lambda, beta, +1);
    const auto q = analytic::AmpSquaredParams::make(lambda, beta, -1);
    for (auto par : {analytic::Parity::even, analytic::Parity::odd})
      for (int k = 0; k < 5; ++k) {
        const cdouble z = random_beta(rng) * 1.5;
        EXPECT_CREL(analytic::amp2_fb_value(q, par, z), analytic::amp2_fb_value(p, par, z), 1e-10) << lambda;
      }
  }
}

TEST(Properties, AmpSquaredEigenResidual) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 6; ++t) {
    const cdouble lambda = 1.5 + std::abs(random_lambda(rng, 3.0)) + 0.5i * double(t % 2);
    const cdouble beta = random_beta(rng);
    const auto p = analytic::AmpSquaredParams::make(lambda, beta);
    const models::PolyFSpec spec{{0.0, 0.0, 1.0}, lambda, beta};
    for (auto par : {analytic::Parity::even, analytic::Parity::odd}) {
      const auto psi = analytic::amp2_fb_solution(p, par, 100);
      EXPECT_LE(models::pencil_residual(spec, psi.fock()), 1e-8) << lambda << " " << analytic::parity_name(par);
    }
  }
}

TEST(Properties, SeriesEigenResidualAtDim100) {
  std::mt19937_64 rng(4);
  const std::vector<std::vector<double>> fs{{0.0, 1.0}, {0.0, 1.0, 0.0, 1.0}, {0.5, 1.0, 1.0}};
  for (int t = 0; t < 12; ++t) {
    const auto& f = fs[t % fs.size()];
    const models::PolyFSpec spec{f, random_lambda(rng), random_beta(rng)};
    solver::InitialData init;
    for (std::size_t k = 0; k + 1 < f.size(); ++k) init.c.push_back(random_beta(rng));
    const auto psi = solver::solve_series(models::build_poly_f_ode(spec), init, 99);
    EXPECT_LE(models::pencil_residual(spec, psi.fock()), 1e-9) << spec.lambda;
  }
}

TEST(Properties, HalvingToleranceConverges) {
  // Ray values at tol and tol/2 agree to about tol, and both agree with the series.
  const models::PolyFSpec spec{{0.0, 1.0, 0.0, 1.0}, 2.0 + 0.5i, 0.4};
  const auto ode = models::build_poly_f_ode(spec);
  const solver::InitialData init{{1.0, 0.0, 1.0}};
  const auto series = solver::solve_series(ode, init, 400);
  std::vector<double> rs;
  for (int i = 0; i <= 20; ++i) rs.push_back(0.1 * i);
  for (double phi : {0.3, 2.0, 4.0}) {
    solver::RayOptions a, b;
    a.tol = 1e-8;
    b.tol = 5e-9;
    const auto ra = solver::integrate_ray(ode, init, phi, rs, a);
    const auto rb = solver::integrate_ray(ode, init, phi, rs, b);
    for (std::size_t i = 0; i < rs.size(); ++i) {
      const cdouble ref = series.evaluate(std::polar(rs[i], -phi));
      const double scale = std::max(1.0, std::abs(ref));
      EXPECT_LE(std::abs(ra.values[i] - rb.values[i]), 1e-6 * scale);
      EXPECT_LE(std::abs(rb.values[i] - ref), 1e-6 * scale);
    }
    EXPECT_GE(rb.steps, ra.steps);
  }
}

TEST(Properties, RaysShareTheGerm) {
  // Every ray starts from the same function: the derivatives at 0 rotate as e^{-ik phi}.
  const models::PolyFSpec spec{{0.0, 1.0, 0.0, 1.0}, 3.0, 0.0};
  const auto ode = models::build_poly_f_ode(spec);
  solver::FieldOptions fo;
  fo.n_phi = 64;
  fo.n_r = 30;
  fo.r_max = 1.5;
  const auto field = solver::assemble_field(ode, solver::InitialData{{1.0, 0.0, 1.0}}, fo);
  const auto rep = solver::analyticity_check(field, 6);
  EXPECT_LE(rep.origin_spread, 1e-15);
  EXPECT_LE(rep.max_positive, 1e-7);
  EXPECT_LE(rep.max_profile, 1e-7);
}

TEST(Properties, NormalOrderedExpectationMatchesMatrix) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> d;
  for (int t = 0; t < 10; ++t) {
    fock::FockVector psi(12);
    for (std::size_t n = 0; n < 12; ++n) psi[n] = {d(rng), d(rng)};
    ordering::NormallyOrderedPoly p;
    for (int k = 0; k < 4; ++k) p.add(rng() % 4, rng() % 4, {d(rng), d(rng)});
    const auto m = p.to_matrix(12);
    EXPECT_CNEAR(p.expectation(bargmann::EntireState(psi)), fock::expectation(psi, m) / psi.norm_squared(), 1e-10);
  }
}

TEST(Properties, CommutatorNonNegative) {
  // <[f(a), f(a)^dag]> >= 0 for f with nonnegative Taylor coefficients.
  std::mt19937_64 rng(6);
  std::normal_distribution<double> d;
  for (int t = 0; t < 50; ++t) {
    fock::FockVector psi(15);
    for (std::size_t n = 0; n < 15; ++n) psi[n] = {d(rng), d(rng)};
    const auto r = uncertainty::uncertainty_report(psi.normalized(), std::vector<double>{0.0, 1.0, 0.5, 0.25});
    EXPECT_GE(r.commutator, -1e-10);
  }
}

TEST(Properties, SqueezingImpliesNegativeNormalOrderedVariance) {
  std::mt19937_64 rng(7);
  int squeezed = 0;
  for (int t = 0; t < 30; ++t) {
    const auto p = analytic::QuadratureParams::make(random_lambda(rng), random_beta(rng));
    const auto psi = analytic::quad_state(p, analytic::quad_dim_for_tail(p));
    const auto r = uncertainty::uncertainty_report(psi.fock(), std::vector<double>{0.0, 1.0});
    if (r.var_F < r.commutator - 1e-9) {
      ++squeezed;
      EXPECT_LT(r.no_var_F, 0.0);
    }
    if (r.var_G < r.commutator - 1e-9) {
      ++squeezed;
      EXPECT_LT(r.no_var_G, 0.0);
    }
  }
  EXPECT_GT(squeezed, 0);
}

TEST(Properties, QFunctionNonNegativeAndBounded) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> d;
  fock::FockVector psi(20);
  for (std::size_t n = 0; n < 20; ++n) psi[n] = {d(rng), d(rng)};
  const bargmann::EntireState s(psi.normalized());
  const auto q = bargmann::q_grid(s, {}, true);
  for (double v : q.values) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0 / std::numbers::pi + 1e-12);
  }
}
