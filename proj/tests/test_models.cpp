#include "squeezelab/models.hpp"

#include "squeezelab/roots.hpp"
#include "test_support.hpp"

using namespace squeezelab;
using namespace squeezelab::models;
using namespace std::complex_literals;

namespace {
const std::vector<double> kCubic{0.0, 1.0, 0.0, 1.0};
}

TEST(PolyF, ValidationAndOde) {
  EXPECT_THROW((PolyFSpec{{1.0}, 2.0, 0.0}.validate()), DomainError);
  EXPECT_THROW((PolyFSpec{{0.0, 1.0}, -1.0, 0.0}.validate()), DomainError);
  const PolyFSpec s{kCubic, 2.0, 1.0};
  EXPECT_EQ(s.degree(), 3u);
  const auto ode = build_poly_f_ode(s);
  EXPECT_EQ(ode.order(), 3u);
  // f(d/dz) psi - w f(z) psi - u psi with w = 1/3, u = 1/3.
  EXPECT_CNEAR(ode.p[1][0], 1.0, 1e-15);
  EXPECT_CNEAR(ode.p[3][0], 1.0, 1e-15);
  EXPECT_CNEAR(ode.p[0][1], -1.0 / 3.0, 1e-15);
  EXPECT_CNEAR(ode.p[0][3], -1.0 / 3.0, 1e-15);
  EXPECT_CNEAR(ode.p[0][0], -1.0 / 3.0, 1e-15);
}

TEST(PolyF, SeriesSatisfiesPencil) {
  const PolyFSpec s{kCubic, 2.0 + 1.0i, 0.5};
  const auto psi = solver::solve_series(build_poly_f_ode(s), {{1.0, 0.0, 1.0}}, 120);
  EXPECT_LE(pencil_residual(s, psi.fock()), 1e-10);
}

TEST(Roots, CubicAndClusters) {
  const auto r = find_roots(kCubic, 0.0);
  ASSERT_EQ(r.roots.size(), 3u);
  EXPECT_EQ(r.total_multiplicity(), 3u);
  for (const auto z : r.roots) EXPECT_LE(std::abs(z * z * z + z), 1e-13);
  // z^2 = 0 has one double root.
  const std::vector<double> sq{0.0, 0.0, 1.0};
  const auto d = find_roots(sq, 0.0);
  ASSERT_EQ(d.roots.size(), 1u);
  EXPECT_EQ(d.multiplicity[0], 2u);
  const std::vector<cdouble> p{-6.0, 11.0, -6.0, 1.0};
  auto rr = poly::roots(p);
  std::sort(rr.begin(), rr.end(), [](cdouble a, cdouble b) { return a.real() < b.real(); });
  EXPECT_CNEAR(rr[0], 1.0, 1e-12);
  EXPECT_CNEAR(rr[2], 3.0, 1e-12);
}

TEST(Roots, Separability) {
  // disc(z^3 + z - gamma) = -4 - 27 gamma^2.
  const auto a = separability_check(kCubic, 0.5 + 0.25i);
  EXPECT_TRUE(a.separable);
  EXPECT_CNEAR(a.discriminant, cdouble(-9.0625, -6.75), 1e-12);
  EXPECT_CNEAR(separability_check(kCubic, 0.0).discriminant, -4.0, 1e-14);
  EXPECT_FALSE(a.resultant_text.empty());
  const std::vector<double> sq{0.0, 0.0, 1.0};
  const auto b = separability_check(sq, 0.0);
  EXPECT_FALSE(b.separable);
  EXPECT_EQ(b.resultant_exact, cdouble(0.0));
  EXPECT_TRUE(separability_check(sq, 1.0).separable);
  // z^3 + z - gamma has a double root where 27 gamma^2 = -4: gamma = 2i / (3 sqrt 3).
  // Rounded to binary the exact resultant is tiny but nonzero.
  const auto c = separability_check(kCubic, cdouble(0.0, 2.0 / (3.0 * std::sqrt(3.0))));
  EXPECT_LE(std::abs(c.discriminant), 1e-14);
}

TEST(LambdaOne, PolyFSolutionSpace) {
  const PolyFSpec s{kCubic, 1.0, 0.6};
  const auto roots = find_roots(kCubic, s.gamma());
  const std::vector<std::vector<cdouble>> w(roots.roots.size(), std::vector<cdouble>{1.0});
  const auto sol = lambda_one_solution_poly_f(s, w, 80);
  EXPECT_NEAR(sol.state.fock().norm(), 1.0, 1e-13);
  EXPECT_LE(pencil_residual(s, sol.state.fock()), 1e-12);
  const auto basis = lambda_one_basis(roots, 80);
  EXPECT_EQ(basis.size(), 3u);
  for (const auto& b : basis) EXPECT_LE(pencil_residual(s, b), 1e-12);
  EXPECT_THROW(lambda_one_solution_poly_f(PolyFSpec{kCubic, 2.0, 0.6}, w, 80), DomainError);
  EXPECT_THROW(lambda_one_solution_poly_f(s, {{1.0, 1.0}, {1.0}, {1.0}}, 80), DomainError);
}

TEST(LambdaOne, DoubleRootUsesDerivativeBasis) {
  // f = a^2, gamma = 0: solutions |0> and |1>.
  const PolyFSpec s{{0.0, 0.0, 1.0}, 1.0, 0.0};
  const auto roots = find_roots(s.coeffs, 0.0);
  const auto basis = lambda_one_basis(roots, 10);
  ASSERT_EQ(basis.size(), 2u);
  for (const auto& b : basis) EXPECT_LE(pencil_residual(s, b), 1e-14);
}

TEST(Deformed, SpecAndOde) {
  const auto g = DeformedGSpec::from_polynomial(std::vector<double>{0.0, 1.0}, 2.0, 1.0);
  EXPECT_DOUBLE_EQ(g.g(7), 7.0);
  EXPECT_EQ(g.table().last_nonzero(), 1);
  const auto ode = build_deformed_ode(g);
  EXPECT_TRUE(ode.warnings.empty());
  EXPECT_EQ(ode.order(), 2u);
  const auto e = DeformedGSpec::from_function([](std::size_t n) { return std::ldexp(1.0, int(n)); }, 8, 2.0, 1.0);
  EXPECT_FALSE(build_deformed_ode(e, 8).warnings.empty());
  // Newton extrapolation through samples of n^2.
  DeformedGSpec h;
  h.g_values = {0.0, 1.0, 4.0};
  EXPECT_DOUBLE_EQ(h.g(5), 25.0);
}

TEST(Deformed, InitialConditionRecurrence) {
  const auto spec = DeformedGSpec::from_polynomial(std::vector<double>{0.0, 1.0}, 2.0, 1.0);
  // g(0) = 0 forces beta psi(0) = 0.
  try {
    initial_condition_recurrence(spec, std::vector<cdouble>{1.0}, 5);
    FAIL() << "expected RecurrenceBreakdown";
  } catch (const RecurrenceBreakdown& e) {
    EXPECT_EQ(e.kind(), RecurrenceBreakdown::Kind::inconsistent);
    EXPECT_EQ(e.index(), 1u);
  }
  try {
    initial_condition_recurrence(spec, std::vector<cdouble>{0.0}, 5);
    FAIL() << "expected RecurrenceBreakdown";
  } catch (const RecurrenceBreakdown& e) {
    EXPECT_EQ(e.kind(), RecurrenceBreakdown::Kind::underdetermined);
    EXPECT_EQ(e.free_dimension(), 2u);
  }
  const auto ic = initial_condition_recurrence(spec, std::vector<cdouble>{0.0, 1.0}, 6);
  EXPECT_EQ(ic.free_indices, (std::vector<std::size_t>{0, 1}));
  // k = 1: 3 psi''(0) = psi'(0) + (1-2) * 1 * 0 => 1/3.
  EXPECT_CNEAR(ic.derivatives[2], 1.0 / 3.0, 1e-15);
  const auto bad = detail::initial_condition_recurrence(spec, std::vector<cdouble>{0.0, 1.0}, 6, -1.0);
  EXPECT_NE(bad.derivatives[3], ic.derivatives[3]);
}

TEST(Deformed, ClosedFormGn) {
  // mpmath reference amplitudes at beta = 1.
  const auto psi = g_n_closed_form(1.0, 30);
  const double ref[] = {0.0, 0.94171214304866858, 0.33294552113771482, 0.048056546563584971,
                        0.0040047122136320809};
  for (std::size_t n = 0; n < 5; ++n) EXPECT_CNEAR(psi.fock()[n], ref[n], 1e-14) << n;
  EXPECT_NEAR(psi.fock().norm(), 1.0, 1e-14);
  const auto spec = DeformedGSpec::from_polynomial(std::vector<double>{0.0, 1.0}, 1.0, 1.0);
  EXPECT_LE(pencil_residual(spec, psi.fock()), 1e-13);
  EXPECT_THROW(g_n_closed_form(0.0, 10), DomainError);
}

TEST(Deformed, NonlinearCoherentState) {
  const cdouble beta = 0.8 - 0.4i;
  // g = 1 reduces to the coherent state with alpha = beta / 2.
  const auto one = DeformedGSpec::from_polynomial(std::vector<double>{1.0}, 1.0, beta);
  const auto psi = nonlinear_coherent_state(one, 40);
  const auto coh = fock::FockVector::coherent(40, beta / 2.0);
  EXPECT_NEAR(std::abs(fock::dot(psi.fock(), coh)), 1.0, 1e-13);
  const auto gn = DeformedGSpec::from_polynomial(std::vector<double>{0.0, 1.0}, 1.0, beta);
  EXPECT_THROW(nonlinear_coherent_state(gn, 10), DomainError);
  const auto sq = DeformedGSpec::from_polynomial(std::vector<double>{1.0, 1.0}, 1.0, beta);
  EXPECT_LE(pencil_residual(sq, nonlinear_coherent_state(sq, 40).fock()), 1e-13);
}
