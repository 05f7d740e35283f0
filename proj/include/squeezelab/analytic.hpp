#pragma once

// Closed-form squeezed states for f(a) = a (quadrature) and f(a) = a^2
// (amplitude-squared) with complex lambda, Re lambda > 0.

#include <cstddef>
#include <optional>
#include <string>

#include "squeezelab/bargmann.hpp"
#include "squeezelab/numerics.hpp"
#include "squeezelab/uncertainty.hpp"

namespace squeezelab::analytic {

struct QuadratureParams {
  cdouble lambda{1.0};
  cdouble beta{};
  cdouble w{};    ///< (lambda - 1)/(lambda + 1)
  cdouble u{};    ///< beta/(lambda + 1)
  double phi = 0; ///< arg lambda

  /// Throws DomainError for Re lambda <= 0 (not normalizable).
  static QuadratureParams make(cdouble lambda, cdouble beta);
};

/// Closed-form N^2 of N exp(w z^2/2 + u z).
double quad_norm_sq(const QuadratureParams& p);

/// Fock amplitudes of the normalized state N exp(w a^dag^2/2 + u a^dag)|0>.
bargmann::EntireState quad_state(const QuadratureParams& p, std::size_t dim);

/// Smallest dim (>= 32) at which quad_state has tail mass below tail_tol.
std::size_t quad_dim_for_tail(const QuadratureParams& p, double tail_tol = 1e-20);

/// exp(w z^2/2 + u z).
cdouble quad_value(const QuadratureParams& p, cdouble z);

struct QuadDispersions {
  double var_x = 0.0;  ///< |lambda|^2 / Re lambda
  double var_p = 0.0;  ///< 1 / Re lambda
  double defect = 0.0; ///< var_x var_p - 1 = tan^2(arg lambda)
  double min_no_quad_variance = 0.0;  ///< -2|lambda-1| / (|lambda+1| + |lambda-1|)
};

QuadDispersions quad_dispersions(const QuadratureParams& p);

/// min over theta of <:(Delta x_theta)^2:> with x_theta = a e^{-i theta} + a^dag e^{i theta},
/// from the state's normally ordered moments.
double min_normally_ordered_quadrature_variance(const bargmann::EntireState& psi);

/// <a^n a^dag^m> = N^2 (conj(lambda)+1)^n (lambda+1)^m d^(n+m) N^-2 / d conj(beta)^n d beta^m.
cdouble quad_antinormal_moment(const QuadratureParams& p, std::size_t n, std::size_t m);

/// Normally ordered <a^dag^n a^m>, converted from the antinormal route.
cdouble quad_moment(const QuadratureParams& p, std::size_t n, std::size_t m);

enum class Parity { even, odd };

std::string parity_name(Parity p);

struct AmpSquaredParams {
  cdouble lambda{1.0};
  cdouble beta{};
  int branch = +1;    ///< sign of the square root sqrt((lambda-1)/(lambda+1))
  cdouble s{};        ///< branch * sqrt((lambda-1)/(lambda+1))
  cdouble c{};        ///< s / 2
  cdouble sqrt_l2m1{};///< (lambda - 1)/s
  cdouble b{};        ///< (1 + beta / sqrt(lambda^2 - 1)) / 4
  cdouble xi{};       ///< e^{i arg xi} tanh|xi| = s
  double mu = 1.0;    ///< cosh|xi|
  cdouble nu{};       ///< e^{i arg xi} sinh|xi|
  cdouble zeta{};     ///< nu / mu
  cdouble v{};        ///< s / (1 + |s|^2)

  /// lambda = 1 is accepted only with beta = 0 (then b = 1/4, c = 0).
  static AmpSquaredParams make(cdouble lambda, cdouble beta, int branch = +1);
  double four_v_sq() const { return 4.0 * std::norm(v); }
  double four_c_sq() const { return 4.0 * std::norm(c); }
};

/// psi_e(z) = exp(-c z^2) 1F1(b; 1/2; 2c z^2), psi_o(z) = z exp(-c z^2) 1F1(b+1/2; 3/2; 2c z^2).
cdouble amp2_fb_value(const AmpSquaredParams& p, Parity parity, cdouble z);

struct Amp2FbResult {
  bargmann::EntireState state;  ///< unnormalized, psi(0) = 1 (even) or psi'(0) = 1 (odd)
  unsigned digits = 16;         ///< working precision used
  double loss_digits = 0.0;     ///< digits lost in the worst coefficient
};
/// Taylor data of the closed form. The z^(2m) coefficient of the even state is
/// (-c)^m/m! 2F1(-m, b; 1/2; 2) (odd: b+1/2 and 3/2), generated by the
/// contiguous-relation recurrence in m. The recurrence is run at two
/// precisions and accepted once they agree to 17 digits.
Amp2FbResult amp2_fb_solution_detail(const AmpSquaredParams& p, Parity parity, std::size_t dim);
/// Same coefficients from the Cauchy product of exp(-c z^2) and the Kummer
/// series. Each coefficient is an alternating sum that cancels about
/// m log10(3) digits, so the precision grows with dim; used as a cross-check.
Amp2FbResult amp2_fb_solution_cauchy(const AmpSquaredParams& p, Parity parity, std::size_t dim);
bargmann::EntireState amp2_fb_solution(const AmpSquaredParams& p, Parity parity, std::size_t dim);

/// Smallest dim (even, >= 16) at which the normalized closed-form state has
/// tail mass below tail_tol.
std::size_t amp2_dim_for_tail(const AmpSquaredParams& p, Parity parity, double tail_tol = 1e-16);

/// 1F1(b; 1/2; v a^dag^2)|0> or 1F1(b+1/2; 3/2; v a^dag^2)|1>, truncated where
/// the amplitudes fall below 1e-18 of the peak.
fock::FockVector amp2_presqueeze(const AmpSquaredParams& p, Parity parity);

struct Amp2SqueezedResult {
  bargmann::EntireState state;  ///< N S(xi) F|0 or 1>, truncated to dim
  double presqueeze_norm_sq = 0.0; ///< discrete-sum |S F|^2 before multiplying by N
  std::size_t work_dim = 0;
};

Amp2SqueezedResult amp2_squeezed_form_detail(const AmpSquaredParams& p, Parity parity, std::size_t dim);
bargmann::EntireState amp2_squeezed_form(const AmpSquaredParams& p, Parity parity, std::size_t dim);

/// N^-2 from the 2F1 closed forms, evaluated in the given precision.
double amp2_norm_inv_sq(const AmpSquaredParams& p, Parity parity,
                        numerics::Precision prec = numerics::Precision::extended);

struct MeanPhotonReport {
  double printed = 0.0;   ///< 2F1 arguments 4|c|^2
  double variant = 0.0;   ///< 2F1 arguments 4|v|^2
  double numeric = 0.0;   ///< <n> of the squeezed-form state
  /// "squeezed_form", or "fb_series" when the presqueeze sum is too long.
  std::string numeric_source;
  bool printed_matches = false;
  bool variant_matches = false;
  /// "4|c|^2" or "4|v|^2".
  std::string matched;
  double value = 0.0;
};

/// Evaluates both forms of the even-state mean photon number and compares them
/// with <a^dag a> on the squeezed-form state (relative tolerance rel_tol).
/// `matched` is "both" if the two forms coincide there. Throws Error with all
/// three values when neither matches.
MeanPhotonReport amp2_mean_photon_even(const AmpSquaredParams& p, double rel_tol = 1e-4);

/// Closed form only, with the 2F1 argument chosen by `use_v`.
double amp2_mean_photon_formula(const AmpSquaredParams& p, bool use_v);

/// Uncertainty report for F = a^2 + a^dag^2, G = -i(a^2 - a^dag^2) on the
/// closed-form state; dim = 0 picks it from the tail estimate.
uncertainty::UncertaintyReport amp2_uncertainty(const AmpSquaredParams& p, Parity parity, std::size_t dim = 0);

}  // namespace squeezelab::analytic
