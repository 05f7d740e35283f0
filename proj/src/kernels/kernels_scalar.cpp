#include <cmath>

#include "squeezelab/kernels.hpp"

namespace squeezelab::kernels::scalar {

namespace {

inline cdouble horner(std::span<const cdouble> coeffs, cdouble z) {
  // Explicit complex arithmetic: std::complex operator* carries NaN recovery
  // branches that the vector variant does not reproduce.
  double pr = 0.0, pi = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    const double nr = pr * z.real() - pi * z.imag() + coeffs[k].real();
    const double ni = pr * z.imag() + pi * z.real() + coeffs[k].imag();
    pr = nr;
    pi = ni;
  }
  return {pr, pi};
}

}  // namespace

void poly_eval(std::span<const cdouble> coeffs, std::span<const cdouble> z, std::span<cdouble> out) {
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = horner(coeffs, z[i]);
}

void husimi(std::span<const cdouble> coeffs, std::span<const cdouble> alpha, std::span<double> out) {
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const cdouble a = alpha[i];
    const cdouble p = horner(coeffs, std::conj(a));
    const double r2 = a.real() * a.real() + a.imag() * a.imag();
    out[i] = (p.real() * p.real() + p.imag() * p.imag()) * std::exp(-r2);
  }
}

void matvec(std::span<const cdouble> a, std::size_t rows, std::size_t cols,
            std::span<const cdouble> x, std::span<cdouble> y) {
  for (std::size_t i = 0; i < rows; ++i) {
    double sr = 0.0, si = 0.0;
    const cdouble* row = a.data() + i * cols;
    for (std::size_t j = 0; j < cols; ++j) {
      sr += row[j].real() * x[j].real() - row[j].imag() * x[j].imag();
      si += row[j].real() * x[j].imag() + row[j].imag() * x[j].real();
    }
    y[i] = {sr, si};
  }
}

}  // namespace squeezelab::kernels::scalar
