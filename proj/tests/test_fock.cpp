#include "squeezelab/fock.hpp"

#include <random>

#include "test_support.hpp"

using namespace squeezelab;
using namespace squeezelab::fock;
using namespace std::complex_literals;

TEST(FockVector, BasisAndCoherent) {
  const auto b = FockVector::basis(5, 3);
  EXPECT_EQ(b.dim(), 5u);
  EXPECT_EQ(b[3], cdouble(1.0));
  EXPECT_DOUBLE_EQ(b.norm(), 1.0);
  EXPECT_THROW(FockVector::basis(3, 3), DomainError);

  const cdouble alpha = 0.8 - 0.3i;
  const auto c = FockVector::coherent(60, alpha);
  EXPECT_NEAR(c.norm_squared(), 1.0, 1e-14);
  EXPECT_CNEAR(c[2], std::exp(-std::norm(alpha) / 2.0) * alpha * alpha / std::sqrt(2.0), 1e-15);
  // The truncated coherent state is an eigenvector of a away from the edge.
  EXPECT_LE(eigen_residual(annihilator(60), c, alpha, 1), 1e-14);
}

TEST(FockVector, ResizeNormalizeTail) {
  FockVector v(std::vector<cdouble>{3.0, 0.0, 4.0i});
  EXPECT_DOUBLE_EQ(v.norm(), 5.0);
  EXPECT_NEAR(v.normalized().norm(), 1.0, 1e-15);
  EXPECT_EQ(v.resized(5).dim(), 5u);
  EXPECT_EQ(v.resized(1).dim(), 1u);
  EXPECT_NEAR(v.tail_mass(0.1), 16.0 / 25.0, 1e-15);
  EXPECT_THROW(FockVector(3).normalized(), DomainError);
}

TEST(FockVector, ArithmeticPadsShorter) {
  FockVector a(std::vector<cdouble>{1.0});
  FockVector b(std::vector<cdouble>{0.0, 2.0});
  const auto s = a + b;
  EXPECT_EQ(s.dim(), 2u);
  EXPECT_CNEAR(dot(a, b), 0.0, 0);
  EXPECT_CNEAR(dot(s, s), 5.0, 1e-15);
  EXPECT_CNEAR(dot(FockVector(std::vector<cdouble>{1i}), FockVector(std::vector<cdouble>{1.0})), -1i, 0);
}

TEST(Operators, LadderAlgebra) {
  const std::size_t d = 12;
  const auto a = annihilator(d), ad = creator(d);
  EXPECT_CNEAR(a(2, 3), std::sqrt(3.0), 1e-15);
  const auto n = number_op(d);
  EXPECT_TRUE(n.is_hermitian());
  EXPECT_LE(((ad * a) - n).matrix().norm(), 1e-13);
  // [a, a^dag] = 1 except in the last row of the truncation.
  const auto comm = a * ad - ad * a;
  for (std::size_t i = 0; i + 1 < d; ++i) EXPECT_CNEAR(comm(i, i), 1.0, 1e-13);
  EXPECT_CNEAR(comm(d - 1, d - 1), -static_cast<double>(d - 1), 1e-12);
}

TEST(Operators, PolyOfOpAndExpectation) {
  const std::size_t d = 10;
  const std::vector<double> c{1.0, 0.0, 2.0};
  const auto p = poly_of_op(c, number_op(d));
  for (std::size_t i = 0; i < d; ++i) EXPECT_CNEAR(p(i, i), 1.0 + 2.0 * double(i * i), 1e-12);
  const auto psi = FockVector::coherent(40, 1.1);
  EXPECT_CNEAR(expectation(psi, number_op(40)), 1.21, 1e-13);
}

TEST(Operators, Variance) {
  const auto psi = FockVector::coherent(50, 0.5 + 0.5i);
  const auto x = annihilator(50) + creator(50);
  const auto r = variance(psi, x);
  EXPECT_NEAR(r.value, 1.0, 1e-12);
  EXPECT_FALSE(r.leakage_warning);
  EXPECT_THROW(variance(psi, annihilator(50)), DomainError);
  EXPECT_THROW(variance(2.0 * psi, x), DomainError);
}

TEST(Operators, ExpmOfDiagonal) {
  OperatorMatrix d(3);
  d.matrix()(0, 0) = 1.0;
  d.matrix()(1, 1) = 1i;
  const auto e = expm(d);
  EXPECT_CNEAR(e(0, 0), std::exp(1.0), 1e-14);
  EXPECT_CNEAR(e(1, 1), std::exp(1i), 1e-14);
  EXPECT_CNEAR(e(2, 2), 1.0, 1e-14);
}

TEST(Squeeze, VacuumAmplitudes) {
  // S(xi)|0> = (cosh r)^(-1/2) sum (-e^{i theta} tanh r / 2)^n sqrt((2n)!)/n! |2n>.
  const cdouble xi = std::polar(0.6, 0.4);
  const double r = std::abs(xi);
  const cdouble t = -std::polar(std::tanh(r), std::arg(xi)) / 2.0;
  const auto s = apply_squeeze(FockVector::vacuum(1), xi, 160);
  const auto m = squeeze_operator(80, xi).apply(FockVector::vacuum(80));
  EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
  double coef = 1.0;  // sqrt((2n)!)/n!
  cdouble tn = 1.0;
  for (std::size_t n = 0; n < 10; ++n) {
    const cdouble expected = tn * coef / std::sqrt(std::cosh(r));
    EXPECT_CNEAR(s[2 * n], expected, 1e-12) << n;
    EXPECT_CNEAR(m[2 * n], expected, 1e-10) << n;
    EXPECT_CNEAR(s[2 * n + 1], 0.0, 1e-14);
    tn *= t;
    coef *= std::sqrt((2.0 * n + 1.0) * (2.0 * n + 2.0)) / (n + 1.0);
  }
  EXPECT_THROW(apply_squeeze(FockVector::vacuum(10), xi, 5), DomainError);
}

TEST(Squeeze, QuadratureVariances) {
  // For real xi = r: var(x) = e^{-2r}, var(p) = e^{2r}.
  const double r = 0.5;
  const auto s = apply_squeeze(FockVector::vacuum(1), r, 200);
  const auto a = annihilator(200), ad = creator(200);
  EXPECT_NEAR(variance(s, a + ad).value, std::exp(-2.0 * r), 1e-10);
  EXPECT_NEAR(variance(s, cdouble(0, -1) * (a - ad)).value, std::exp(2.0 * r), 1e-10);
}

TEST(LadderPolynomials, MatchMatrices) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  FockVector psi(20);
  for (std::size_t n = 0; n < 20; ++n) psi[n] = {g(rng), g(rng)};
  const std::vector<cdouble> f{0.5, -1.0, 0.0, 2.0i};
  const auto fa = apply_annihilator_poly(f, psi);
  const auto fad = apply_creator_poly(f, psi);
  EXPECT_EQ(fa.dim(), 20u);
  EXPECT_EQ(fad.dim(), 23u);
  const auto ma = poly_of_op(f, annihilator(23)).apply(psi.resized(23));
  const auto mad = poly_of_op(f, creator(23)).apply(psi.resized(23));
  for (std::size_t n = 0; n < 20; ++n) EXPECT_CNEAR(fa[n], ma[n], 1e-12);
  for (std::size_t n = 0; n < 23; ++n) EXPECT_CNEAR(fad[n], mad[n], 1e-12);
}
