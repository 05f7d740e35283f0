#include "squeezelab/ordering.hpp"

#include <random>

#include "test_support.hpp"

using namespace squeezelab;
using namespace squeezelab::ordering;
using namespace std::complex_literals;

TEST(Stirling, KnownValues) {
  EXPECT_EQ(stirling_second(0, 0), 1);
  EXPECT_EQ(stirling_second(5, 2), 15);
  EXPECT_EQ(stirling_second(10, 4), 34105);
  EXPECT_EQ(stirling_second(3, 5), 0);
  EXPECT_EQ(stirling_first_signed(5, 2), -50);
  EXPECT_EQ(stirling_first_signed(6, 3), -225);
  EXPECT_EQ(stirling_first_signed(4, 4), 1);
}

TEST(Stirling, ExplicitSumAgreesAndInverseRelation) {
  for (std::size_t m = 0; m <= 12; ++m)
    for (std::size_t k = 0; k <= m; ++k) EXPECT_EQ(stirling_second(m, k), stirling_second_explicit(m, k)) << m << "," << k;
  // sum_j S(m, j) s(j, k) = delta_mk.
  for (std::size_t m = 0; m <= 10; ++m)
    for (std::size_t k = 0; k <= 10; ++k) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j <= 10; ++j) s += stirling_second(m, j) * stirling_first_signed(j, k);
      EXPECT_EQ(s, m == k ? 1 : 0);
    }
}

TEST(Stirling, OverflowThrows) { EXPECT_THROW(stirling_second(60, 8), DomainError); }

TEST(NormalOrder, CommutatorAndProduct) {
  // a a^dag = a^dag a + 1.
  const std::vector<cdouble> g{0.0, 1.0}, f{0.0, 1.0};
  const auto p = normal_order_product(g, f);
  EXPECT_CNEAR(p.coeff(1, 1), 1.0, 0);
  EXPECT_CNEAR(p.coeff(0, 0), 1.0, 0);
  EXPECT_EQ(p.terms().size(), 2u);
  // a^2 a^dag^2 = a^dag^2 a^2 + 4 a^dag a + 2.
  const auto q = a_pow_times_f(2, std::vector<cdouble>{0.0, 0.0, 1.0});
  EXPECT_CNEAR(q.coeff(2, 2), 1.0, 1e-15);
  EXPECT_CNEAR(q.coeff(1, 1), 4.0, 1e-15);
  EXPECT_CNEAR(q.coeff(0, 0), 2.0, 1e-15);
}

TEST(NormalOrder, MatchesMatrixProduct) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> d;
  for (std::size_t deg = 0; deg <= 4; ++deg) {
    std::vector<cdouble> g(deg + 1), f(deg + 1);
    for (auto& x : g) x = {d(rng), d(rng)};
    for (auto& x : f) x = {d(rng), d(rng)};
    // Exact on the top-left block once the truncation is larger by deg.
    const std::size_t dim = 16, big = 24;
    const auto lhs = normal_order_product(g, f).to_matrix(big);
    const auto rhs = fock::poly_of_op(g, fock::annihilator(big)) * fock::poly_of_op(f, fock::creator(big));
    const auto diff = (lhs.matrix() - rhs.matrix()).topLeftCorner(dim, dim).norm();
    EXPECT_LE(diff, 1e-10 * (1.0 + rhs.matrix().topLeftCorner(dim, dim).norm())) << deg;
  }
}

TEST(NormalOrder, PolyAlgebra) {
  const auto a = NormallyOrderedPoly::of_annihilator(std::vector<cdouble>{0.0, 1.0});
  const auto ad = NormallyOrderedPoly::of_creator(std::vector<cdouble>{0.0, 1.0});
  const auto comm = a * ad - ad * a;
  auto c = comm;
  c.prune();
  ASSERT_EQ(c.terms().size(), 1u);
  EXPECT_CNEAR(c.coeff(0, 0), 1.0, 0);
  EXPECT_TRUE((a + ad).is_hermitian());
  EXPECT_FALSE(a.is_hermitian());
  EXPECT_CNEAR(a.adjoint().coeff(1, 0), 1.0, 0);
  // Inside colons a and a^dag commute.
  EXPECT_CNEAR(a.symbol_product(ad).coeff(1, 1), 1.0, 0);
  EXPECT_CNEAR(a.symbol_product(ad).coeff(0, 0), 0.0, 0);
  EXPECT_CNEAR(a.scaled(2i).coeff(0, 1), 2i, 0);
}

TEST(NormalOrder, ExpectationOnCoherentState) {
  const cdouble alpha = 0.6 + 0.3i;
  const auto psi = bargmann::coherent_state(60, alpha);
  const auto x = NormallyOrderedPoly::of_annihilator(std::vector<cdouble>{0.0, 1.0}) +
                 NormallyOrderedPoly::of_creator(std::vector<cdouble>{0.0, 1.0});
  const auto x2 = x * x;
  // <x^2> = (2 Re alpha)^2 + 1.
  EXPECT_CNEAR(x2.expectation(psi), 4.0 * alpha.real() * alpha.real() + 1.0, 1e-12);
}

TEST(NumberFunctions, DifferenceTables) {
  const auto t = ordered_number_function([](std::size_t n) { return double(n * n); }, 6);
  EXPECT_EQ(t.last_nonzero(), 2);
  EXPECT_DOUBLE_EQ(t.deltas[1], 1.0);
  EXPECT_DOUBLE_EQ(t.deltas[2], 2.0);
  const std::vector<double> poly{3.0, 0.0, 0.0, 1.0};
  const auto tp = ordered_number_function(poly);
  EXPECT_EQ(tp.order(), 3u);
  EXPECT_EQ(tp.last_nonzero(), 3);
  EXPECT_EQ(difference_table({0.0, 0.0}).last_nonzero(), -1);
}

TEST(NumberFunctions, NormalFormIsDiagonal) {
  for (const auto& [name, g, K] :
       std::vector<std::tuple<std::string, std::function<double(std::size_t)>, std::size_t>>{
           {"n", [](std::size_t n) { return double(n); }, 4},
           {"n^2", [](std::size_t n) { return double(n * n); }, 4},
           {"2^n", [](std::size_t n) { return std::ldexp(1.0, int(n)); }, 12}}) {
    const auto form = number_function_normal_form(ordered_number_function(g, K));
    const auto m = form.to_matrix(K + 1);
    for (std::size_t i = 0; i <= K; ++i)
      for (std::size_t j = 0; j <= K; ++j)
        EXPECT_NEAR(std::abs(m(i, j) - (i == j ? g(i) : 0.0)), 0.0, 1e-10 * std::max(1.0, g(i))) << name;
  }
}
