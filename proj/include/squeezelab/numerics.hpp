#pragma once

// Special-function kernel: Pochhammer, complex gamma, Hermite polynomials and
// the hypergeometric family 0F1, 0F2, 1F1, 2F1 for complex arguments.
//
// The series evaluators are templates over the complex scalar so that the
// same code runs in double precision and in the boost multiprecision types
// used by the extended-precision paths.

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "squeezelab/error.hpp"

namespace squeezelab::numerics {

using real50 = boost::multiprecision::cpp_bin_float_50;
using real100 = boost::multiprecision::cpp_bin_float_100;
using complex50 = boost::multiprecision::cpp_complex_50;
using complex100 = boost::multiprecision::cpp_complex_100;

enum class Precision { double_precision, extended };

template <class C>
struct ComplexTraits;

template <>
struct ComplexTraits<cdouble> {
  using real_type = double;
  static constexpr double epsilon = 2.220446049250313e-16;
};

template <>
struct ComplexTraits<complex50> {
  using real_type = real50;
  static constexpr double epsilon = 1e-49;
};

template <>
struct ComplexTraits<complex100> {
  using real_type = real100;
  static constexpr double epsilon = 1e-99;
};

template <class C>
using real_t = typename ComplexTraits<C>::real_type;

template <class C>
cdouble to_cdouble(const C& z) {
  using std::imag;
  using std::real;
  return {static_cast<double>(real(z)), static_cast<double>(imag(z))};
}

template <class C>
C from_cdouble(cdouble z) {
  return C(z.real(), z.imag());
}

/// Truncation rule for the hypergeometric-type series.
struct SeriesControl {
  std::size_t max_terms = 20000;
  /// Stop once two consecutive terms satisfy |term| <= rel_tol * |partial sum|.
  double rel_tol = 1e-16;

  void validate() const;

  /// Control tuned to the working precision of C.
  template <class C>
  static SeriesControl for_scalar() {
    SeriesControl ctl;
    ctl.rel_tol = 0.5 * ComplexTraits<C>::epsilon;
    return ctl;
  }
};

template <class C>
bool is_nonpositive_integer(const C& z) {
  using std::floor;
  using std::imag;
  using std::real;
  const auto re = real(z);
  return imag(z) == 0 && re <= 0 && floor(re) == re;
}

namespace detail {

// Sums 1 + t_1 + t_2 + ... with t_{k+1} = t_k * ratio(k).
template <class C, class Ratio>
C sum_ratio_series(Ratio&& ratio, const SeriesControl& ctl, const char* name) {
  using std::abs;
  ctl.validate();
  C term(1);
  C sum(1);
  int quiet = 0;
  for (std::size_t k = 0; k + 1 < ctl.max_terms; ++k) {
    term *= ratio(k);
    sum += term;
    if (term == C(0)) return sum;
    if (abs(term) <= ctl.rel_tol * abs(sum)) {
      if (++quiet == 2) return sum;
    } else {
      quiet = 0;
    }
  }
  throw ConvergenceError(std::string(name) + ": series did not converge within max_terms",
                         to_cdouble(sum), static_cast<double>(abs(term)), ctl.max_terms);
}

}  // namespace detail

/// Rising factorial (b)_k = b (b+1) ... (b+k-1).
template <class C>
C pochhammer(const C& b, std::size_t k) {
  C out(1);
  for (std::size_t i = 0; i < k; ++i) out *= b + C(static_cast<double>(i));
  return out;
}

/// Kummer function 1F1(b; c; z).
template <class C>
C hyp1f1(const C& b, const C& c, const C& z, const SeriesControl& ctl = SeriesControl::for_scalar<C>()) {
  if (is_nonpositive_integer(c)) throw PoleError("hyp1f1: c is a nonpositive integer");
  return detail::sum_ratio_series<C>(
      [&](std::size_t k) {
        const C kk(static_cast<double>(k));
        return (b + kk) / ((c + kk) * (kk + C(1))) * z;
      },
      ctl, "hyp1f1");
}

/// Gauss series 2F1(a, b; c; z) for |z| < 1.
template <class C>
C hyp2f1(const C& a, const C& b, const C& c, const C& z,
         const SeriesControl& ctl = SeriesControl::for_scalar<C>()) {
  using std::abs;
  if (!(abs(z) < 1)) throw DomainError("hyp2f1: requires |z| < 1");
  if (is_nonpositive_integer(c)) throw PoleError("hyp2f1: c is a nonpositive integer");
  return detail::sum_ratio_series<C>(
      [&](std::size_t k) {
        const C kk(static_cast<double>(k));
        return (a + kk) * (b + kk) / ((c + kk) * (kk + C(1))) * z;
      },
      ctl, "hyp2f1");
}

/// 0F1(; b; z).
template <class C>
C hyp0f1(const C& b, const C& z, const SeriesControl& ctl = SeriesControl::for_scalar<C>()) {
  if (is_nonpositive_integer(b)) throw PoleError("hyp0f1: b is a nonpositive integer");
  return detail::sum_ratio_series<C>(
      [&](std::size_t k) {
        const C kk(static_cast<double>(k));
        return z / ((b + kk) * (kk + C(1)));
      },
      ctl, "hyp0f1");
}

/// 0F2(; b1, b2; z).
template <class C>
C hyp0f2(const C& b1, const C& b2, const C& z,
         const SeriesControl& ctl = SeriesControl::for_scalar<C>()) {
  if (is_nonpositive_integer(b1) || is_nonpositive_integer(b2))
    throw PoleError("hyp0f2: lower parameter is a nonpositive integer");
  return detail::sum_ratio_series<C>(
      [&](std::size_t k) {
        const C kk(static_cast<double>(k));
        return z / ((b1 + kk) * (b2 + kk) * (kk + C(1)));
      },
      ctl, "hyp0f2");
}

/// Gamma function; relative error about 1e-14 on |z| <= 20. Throws PoleError
/// at the nonpositive integers.
cdouble gamma_complex(cdouble z);

/// Principal branch of log Gamma.
cdouble log_gamma_complex(cdouble z);

/// 0F1(; b; z) / Gamma(b), defined for every b.
cdouble hyp0f1_regularized(cdouble b, cdouble z, const SeriesControl& ctl = {});

/// Physicists' Hermite polynomial by the three-term recurrence.
cdouble hermite(unsigned n, cdouble x);

/// Sum_n H_n(x) H_n(y) (z/2)^n / n!, |z| < 1.
cdouble mehler_sum(cdouble x, cdouble y, cdouble z, const SeriesControl& ctl = {});

/// (1 - z^2)^(-1/2) exp[(2xyz - (x^2 + y^2) z^2) / (1 - z^2)].
cdouble mehler_closed_form(cdouble x, cdouble y, cdouble z);

}  // namespace squeezelab::numerics
