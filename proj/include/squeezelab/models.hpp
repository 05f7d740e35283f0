#pragma once

// Problem builders for the eigenvalue problem (F + i lambda G)|psi> = beta|psi>
// with F = A + A^dag, G = -i(A - A^dag), and lambda = 1 closed forms.
//
//   A = f(a):      (1+lambda) f(a) + (1-lambda) f(a^dag)
//   A = g(n) a:    (1+lambda) g(n) a + (1-lambda) a^dag g(n)

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "squeezelab/bargmann.hpp"
#include "squeezelab/ordering.hpp"
#include "squeezelab/solver.hpp"

namespace squeezelab::models {

struct PolyFSpec {
  /// f(z) = sum coeffs[k] z^k, real coefficients, degree >= 1.
  std::vector<double> coeffs;
  cdouble lambda{1.0};
  cdouble beta{};

  void validate() const;
  std::size_t degree() const;
  cdouble gamma() const { return beta / 2.0; }
};

struct DeformedGSpec {
  /// g(0..K); values beyond K come from g_fn when set, otherwise from the
  /// Newton forward-difference polynomial through the samples.
  std::vector<double> g_values;
  std::function<double(std::size_t)> g_fn;
  cdouble lambda{1.0};
  cdouble beta{};

  static DeformedGSpec from_function(std::function<double(std::size_t)> g, std::size_t K, cdouble lambda,
                                     cdouble beta);
  static DeformedGSpec from_polynomial(std::span<const double> coeffs, cdouble lambda, cdouble beta);

  void validate() const;
  double g(std::size_t n) const;
  ordering::DifferenceTable table() const;
  cdouble gamma() const { return beta / 2.0; }
};

/// f(d/dz) psi - w f(z) psi - u psi = 0 with w = (lambda-1)/(lambda+1), u = beta/(lambda+1).
solver::RayOde build_poly_f_ode(const PolyFSpec& spec);

/// sum_j P_j(z) psi^(j) = 0 with
///   P_j = (1+lambda) D_{j-1}/(j-1)! z^(j-1) + (1-lambda) D_j/j! z^(j+1) - beta delta_{j0},
/// D_k = (Delta^k g)(0). Adds a warning when the difference table does not
/// terminate within K_max or within the supplied samples.
solver::RayOde build_deformed_ode(const DeformedGSpec& spec, std::size_t K_max = 16);

struct ICResult {
  /// psi^(k)(0) at phi = 0, k = 0..n.
  std::vector<cdouble> derivatives;
  /// Indices whose value was not fixed by the recurrence.
  std::vector<std::size_t> free_indices;
};

/// (1+lambda) g(k) psi^(k+1)(0) = beta psi^(k)(0) - k (1-lambda) g(k-1) psi^(k-1)(0).
/// free_values[0] is psi(0); each further free index consumes the next entry.
/// Throws RecurrenceBreakdown (inconsistent) when g(k) = 0 with a nonzero
/// right-hand side, and (underdetermined) when free values run out.
ICResult initial_condition_recurrence(const DeformedGSpec& spec, std::span<const cdouble> free_values,
                                      std::size_t n);

namespace detail {
/// fault_sign = -1 flips the sign of the k(1-lambda) term (mutation fixture).
ICResult initial_condition_recurrence(const DeformedGSpec& spec, std::span<const cdouble> free_values,
                                      std::size_t n, double fault_sign);
}  // namespace detail

struct RootSet {
  cdouble gamma{};
  std::vector<cdouble> roots;
  std::vector<std::size_t> multiplicity;

  std::size_t total_multiplicity() const;
};

/// Roots of f(z) = gamma; roots closer than cluster_tol are merged.
RootSet find_roots(std::span<const double> coeffs, cdouble gamma, double cluster_tol = 1e-7);

struct SeparabilityResult {
  bool separable = false;
  /// Discriminant of f - gamma; exact value rounded to double.
  cdouble discriminant{};
  /// Sylvester resultant Res(f - gamma, f'), exact and in floating point.
  cdouble resultant_exact{};
  cdouble resultant_float{};
  /// Exact resultant as "re + im i" with rational parts.
  std::string resultant_text;
};

/// All roots of f(z) = gamma are simple iff Res(f - gamma, f') != 0. The
/// decision uses exact rational arithmetic on the binary coefficient values.
SeparabilityResult separability_check(std::span<const double> coeffs, cdouble gamma = {});

struct LambdaOneSolution {
  RootSet roots;
  bargmann::EntireState state;
};

/// lambda = 1: sum over roots alpha of P_alpha(a^dag - conj(alpha)) |alpha>, with
/// weights[i] the coefficients of P for roots.roots[i] (at most its
/// multiplicity many). The state is normalized.
LambdaOneSolution lambda_one_solution_poly_f(const PolyFSpec& spec, const std::vector<std::vector<cdouble>>& weights,
                                             std::size_t dim);

/// Unnormalized basis vectors a^dag^j|alpha> spanning the lambda = 1 solution space.
std::vector<fock::FockVector> lambda_one_basis(const RootSet& roots, std::size_t dim);

/// lambda = 1: c_n proportional to gamma^n / (sqrt(n!) g(0)...g(n-1)), normalized.
/// Throws DomainError when some g(n) = 0 (use the ODE path instead).
bargmann::EntireState nonlinear_coherent_state(const DeformedGSpec& spec, std::size_t dim);

/// lambda = 1, g(n) = n, beta != 0: 0F2(;1,2;|beta|^2/4)^(-1/2) 0F1~(;2;beta a^dag/2)|1>.
bargmann::EntireState g_n_closed_form(cdouble beta, std::size_t dim);

/// ((1+lambda) f(a) + (1-lambda) f(a^dag)) psi, exact (padded by deg f).
fock::FockVector apply_pencil(const PolyFSpec& spec, const fock::FockVector& psi);
/// ((1+lambda) g(n) a + (1-lambda) a^dag g(n)) psi, exact (padded by 1).
fock::FockVector apply_pencil(const DeformedGSpec& spec, const fock::FockVector& psi);

/// |(T - beta) psi| over rows unaffected by truncation, relative to |psi|.
double pencil_residual(const PolyFSpec& spec, const fock::FockVector& psi);
double pencil_residual(const DeformedGSpec& spec, const fock::FockVector& psi);

}  // namespace squeezelab::models
