#include "squeezelab/numerics.hpp"

#include <array>
#include <numbers>

namespace squeezelab::numerics {

void SeriesControl::validate() const {
  if (max_terms < 1) throw DomainError("SeriesControl: max_terms must be >= 1");
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw DomainError("SeriesControl: rel_tol must lie in (0, 1)");
}

namespace {

// Lanczos approximation, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

void check_pole(cdouble z) {
  if (is_nonpositive_integer(z)) throw PoleError("gamma_complex: pole at nonpositive integer");
}

cdouble lanczos_log_gamma(cdouble z) {
  // Valid for Re z >= 0.5.
  z -= 1.0;
  cdouble x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const cdouble t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace

cdouble gamma_complex(cdouble z) {
  check_pole(z);
  if (z.real() < 0.5) {
    const double pi = std::numbers::pi;
    return pi / (std::sin(pi * z) * gamma_complex(1.0 - z));
  }
  if (z.imag() == 0.0 && z.real() == std::floor(z.real()) && z.real() <= 171.0) {
    double f = 1.0;
    for (int k = 2; k < static_cast<int>(z.real()); ++k) f *= k;
    return f;
  }
  return std::exp(lanczos_log_gamma(z));
}

cdouble log_gamma_complex(cdouble z) {
  check_pole(z);
  if (z.real() < 0.5) {
    const double pi = std::numbers::pi;
    return std::log(pi) - std::log(std::sin(pi * z)) - log_gamma_complex(1.0 - z);
  }
  return lanczos_log_gamma(z);
}

cdouble hyp0f1_regularized(cdouble b, cdouble z, const SeriesControl& ctl) {
  if (!is_nonpositive_integer(b)) return hyp0f1(b, z, ctl) / gamma_complex(b);
  // 1/Gamma(b+k) vanishes for k < 1-b; the sum starts at k0 = 1-b and
  // reduces to z^k0 * 0F1~(; 2-b; z).
  const auto k0 = static_cast<unsigned>(1.0 - b.real());
  cdouble lead = 1.0;
  for (unsigned k = 1; k <= k0; ++k) lead *= z;
  const cdouble shifted = 2.0 - b;
  return lead * hyp0f1(shifted, z, ctl) / gamma_complex(shifted);
}

cdouble hermite(unsigned n, cdouble x) {
  if (n == 0) return 1.0;
  cdouble prev = 1.0;
  cdouble cur = 2.0 * x;
  for (unsigned k = 1; k < n; ++k) {
    const cdouble next = 2.0 * x * cur - 2.0 * static_cast<double>(k) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

cdouble mehler_sum(cdouble x, cdouble y, cdouble z, const SeriesControl& ctl) {
  if (!(std::abs(z) < 1.0)) throw DomainError("mehler_sum: requires |z| < 1");
  ctl.validate();
  // h_n = H_n / sqrt(2^n n!) keeps the terms h_n(x) h_n(y) z^n in range.
  cdouble hx_prev = 1.0, hy_prev = 1.0;
  cdouble hx = std::sqrt(2.0) * x, hy = std::sqrt(2.0) * y;
  cdouble zp = z;
  cdouble sum = 1.0 + hx * hy * zp;
  int quiet = 0;
  for (std::size_t n = 1; n + 1 < ctl.max_terms; ++n) {
    const double nn = static_cast<double>(n);
    const double a = std::sqrt(2.0 / (nn + 1.0));
    const double c = std::sqrt(nn / (nn + 1.0));
    const cdouble hx_next = a * x * hx - c * hx_prev;
    const cdouble hy_next = a * y * hy - c * hy_prev;
    hx_prev = hx;
    hy_prev = hy;
    hx = hx_next;
    hy = hy_next;
    zp *= z;
    const cdouble term = hx * hy * zp;
    sum += term;
    if (std::abs(term) <= ctl.rel_tol * std::abs(sum)) {
      if (++quiet == 2) return sum;
    } else {
      quiet = 0;
    }
  }
  throw ConvergenceError("mehler_sum: series did not converge within max_terms", sum, 0.0,
                         ctl.max_terms);
}

cdouble mehler_closed_form(cdouble x, cdouble y, cdouble z) {
  const cdouble one_minus = 1.0 - z * z;
  return std::exp((2.0 * x * y * z - (x * x + y * y) * z * z) / one_minus) / std::sqrt(one_minus);
}

}  // namespace squeezelab::numerics
