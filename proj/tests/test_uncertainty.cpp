#include "squeezelab/uncertainty.hpp"

#include "squeezelab/fock.hpp"
#include "test_support.hpp"

using namespace squeezelab;
using namespace squeezelab::uncertainty;
using namespace std::complex_literals;

TEST(Uncertainty, CoherentStateIsMinimal) {
  const auto psi = fock::FockVector::coherent(60, 0.7 - 0.2i);
  const auto r = uncertainty_report(psi, std::vector<double>{0.0, 1.0});
  EXPECT_NEAR(r.var_F, 1.0, 1e-12);
  EXPECT_NEAR(r.var_G, 1.0, 1e-12);
  EXPECT_NEAR(r.commutator, 1.0, 1e-12);
  EXPECT_NEAR(r.defect, 0.0, 1e-12);
  ASSERT_TRUE(r.has_normal_order);
  EXPECT_NEAR(r.no_var_F, 0.0, 1e-12);
  EXPECT_NEAR(r.no_var_G, 0.0, 1e-12);
  EXPECT_FALSE(r.generalized_squeezed(1e-9));
}

TEST(Uncertainty, SqueezedVacuum) {
  const double s = 0.4;
  const auto psi = fock::apply_squeeze(fock::FockVector::vacuum(1), s, 160);
  const auto r = uncertainty_report(psi, std::vector<double>{0.0, 1.0});
  EXPECT_NEAR(r.var_F, std::exp(-2.0 * s), 1e-11);
  EXPECT_NEAR(r.var_G, std::exp(2.0 * s), 1e-11);
  EXPECT_NEAR(r.defect, 0.0, 1e-11);
  EXPECT_TRUE(r.generalized_squeezed(1e-9));
  EXPECT_LT(r.no_var_F, 0.0);
}

TEST(Uncertainty, NumberStateAmplitudeSquared) {
  // A = a^2 on |2>: <[A, A^dag]> = 4n + 2 = 10, <F> = <G> = 0.
  const auto psi = fock::FockVector::basis(3, 2);
  const auto r = uncertainty_report(psi, std::vector<double>{0.0, 0.0, 1.0});
  EXPECT_NEAR(r.commutator, 10.0, 1e-12);
  EXPECT_NEAR(r.var_F, 14.0, 1e-12);
  EXPECT_NEAR(r.var_G, 14.0, 1e-12);
  EXPECT_NEAR(r.defect, 4.0, 1e-12);
}

TEST(Uncertainty, DeformedWithUnitGIsQuadrature) {
  const auto psi = fock::FockVector::coherent(60, 0.3 + 0.9i);
  const auto a = uncertainty_report(psi, std::vector<double>{0.0, 1.0});
  const auto b = deformed_uncertainty_report(psi, [](std::size_t) { return 1.0; });
  EXPECT_NEAR(a.var_F, b.var_F, 1e-12);
  EXPECT_NEAR(a.var_G, b.var_G, 1e-12);
  EXPECT_NEAR(a.commutator, b.commutator, 1e-12);
}

TEST(Uncertainty, GenericOperatorPath) {
  const auto psi = fock::FockVector::coherent(50, 0.5);
  const VectorOp a = [](const fock::FockVector& v) { return fock::apply_annihilator_poly(std::vector<cdouble>{0.0, 1.0}, v); };
  const VectorOp ad = [](const fock::FockVector& v) { return fock::apply_creator_poly(std::vector<cdouble>{0.0, 1.0}, v); };
  const auto r = uncertainty_report(psi, a, ad, 2);
  EXPECT_NEAR(r.var_F, 1.0, 1e-12);
  EXPECT_FALSE(r.has_normal_order);
}
