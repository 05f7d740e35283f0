#include <immintrin.h>

#include <cmath>

#include "squeezelab/kernels.hpp"

namespace squeezelab::kernels::avx2 {

namespace {

// Four complex numbers starting at p, split into real and imaginary lanes.
// Lane order is (0, 2, 1, 3); interleave() undoes it.
inline void deinterleave(const cdouble* p, __m256d& re, __m256d& im) {
  const __m256d lo = _mm256_loadu_pd(reinterpret_cast<const double*>(p));
  const __m256d hi = _mm256_loadu_pd(reinterpret_cast<const double*>(p + 2));
  re = _mm256_unpacklo_pd(lo, hi);
  im = _mm256_unpackhi_pd(lo, hi);
}

inline void interleave(__m256d re, __m256d im, cdouble* p) {
  _mm256_storeu_pd(reinterpret_cast<double*>(p), _mm256_unpacklo_pd(re, im));
  _mm256_storeu_pd(reinterpret_cast<double*>(p + 2), _mm256_unpackhi_pd(re, im));
}

inline void horner4(std::span<const cdouble> coeffs, __m256d zr, __m256d zi, __m256d& pr,
                    __m256d& pi) {
  pr = _mm256_setzero_pd();
  pi = _mm256_setzero_pd();
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    const __m256d cr = _mm256_set1_pd(coeffs[k].real());
    const __m256d ci = _mm256_set1_pd(coeffs[k].imag());
    const __m256d nr = _mm256_fmadd_pd(pr, zr, _mm256_fnmadd_pd(pi, zi, cr));
    const __m256d ni = _mm256_fmadd_pd(pr, zi, _mm256_fmadd_pd(pi, zr, ci));
    pr = nr;
    pi = ni;
  }
}

}  // namespace

void poly_eval(std::span<const cdouble> coeffs, std::span<const cdouble> z, std::span<cdouble> out) {
  const std::size_t n = z.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d zr, zi, pr, pi;
    deinterleave(z.data() + i, zr, zi);
    horner4(coeffs, zr, zi, pr, pi);
    interleave(pr, pi, out.data() + i);
  }
  if (i < n) scalar::poly_eval(coeffs, z.subspan(i), out.subspan(i));
}

void husimi(std::span<const cdouble> coeffs, std::span<const cdouble> alpha, std::span<double> out) {
  const std::size_t n = alpha.size();
  std::size_t i = 0;
  alignas(32) double mod2[4];
  alignas(32) double r2[4];
  for (; i + 4 <= n; i += 4) {
    __m256d ar, ai, pr, pi;
    deinterleave(alpha.data() + i, ar, ai);
    const __m256d zi = _mm256_sub_pd(_mm256_setzero_pd(), ai);
    horner4(coeffs, ar, zi, pr, pi);
    _mm256_store_pd(mod2, _mm256_fmadd_pd(pr, pr, _mm256_mul_pd(pi, pi)));
    _mm256_store_pd(r2, _mm256_fmadd_pd(ar, ar, _mm256_mul_pd(ai, ai)));
    // lanes are in (0, 2, 1, 3) order
    out[i + 0] = mod2[0] * std::exp(-r2[0]);
    out[i + 2] = mod2[1] * std::exp(-r2[1]);
    out[i + 1] = mod2[2] * std::exp(-r2[2]);
    out[i + 3] = mod2[3] * std::exp(-r2[3]);
  }
  if (i < n) scalar::husimi(coeffs, alpha.subspan(i), out.subspan(i));
}

void matvec(std::span<const cdouble> a, std::size_t rows, std::size_t cols,
            std::span<const cdouble> x, std::span<cdouble> y) {
  for (std::size_t r = 0; r < rows; ++r) {
    const double* row = reinterpret_cast<const double*>(a.data() + r * cols);
    const double* xv = reinterpret_cast<const double*>(x.data());
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 2 <= cols; j += 2) {
      const __m256d av = _mm256_loadu_pd(row + 2 * j);
      const __m256d xs = _mm256_loadu_pd(xv + 2 * j);
      const __m256d xr = _mm256_movedup_pd(xs);
      const __m256d xi = _mm256_permute_pd(xs, 0b1111);
      acc_re = _mm256_fmadd_pd(av, xr, acc_re);
      acc_im = _mm256_fmadd_pd(_mm256_permute_pd(av, 0b0101), xi, acc_im);
    }
    const __m256d acc = _mm256_addsub_pd(acc_re, acc_im);
    const __m128d sum = _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
    alignas(16) double s[2];
    _mm_store_pd(s, sum);
    for (; j < cols; ++j) {
      const cdouble& av = a[r * cols + j];
      s[0] += av.real() * x[j].real() - av.imag() * x[j].imag();
      s[1] += av.real() * x[j].imag() + av.imag() * x[j].real();
    }
    y[r] = {s[0], s[1]};
  }
}

}  // namespace squeezelab::kernels::avx2
