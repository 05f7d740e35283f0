#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference version and,
// on x86-64 builds with AVX2/FMA available, a vectorized variant. The
// dispatching entry points pick the variant once per process from CPUID; the
// SQUEEZELAB_ISA environment variable ("scalar" or "avx2") overrides it.

#include <cstddef>
#include <span>
#include <string_view>

#include "squeezelab/error.hpp"

namespace squeezelab::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

/// Best variant available on this machine and build.
Isa detected_isa();

/// Variant used by the dispatching entry points.
Isa active_isa();

/// Overrides the dispatch choice (tests and benchmarking). Requesting avx2 on
/// a machine without it throws.
void set_active_isa(Isa isa);

bool avx2_compiled();

/// out[i] = p(z[i]) for p(z) = sum_k coeffs[k] z^k.
void poly_eval(std::span<const cdouble> coeffs, std::span<const cdouble> z, std::span<cdouble> out);

/// out[i] = |p(conj(alpha[i]))|^2 exp(-|alpha[i]|^2), the unnormalized Husimi
/// density of the entire function with Taylor coefficients `coeffs`.
void husimi(std::span<const cdouble> coeffs, std::span<const cdouble> alpha, std::span<double> out);

/// y = A x for a row-major rows x cols matrix.
void matvec(std::span<const cdouble> a, std::size_t rows, std::size_t cols,
            std::span<const cdouble> x, std::span<cdouble> y);

namespace scalar {
void poly_eval(std::span<const cdouble> coeffs, std::span<const cdouble> z, std::span<cdouble> out);
void husimi(std::span<const cdouble> coeffs, std::span<const cdouble> alpha, std::span<double> out);
void matvec(std::span<const cdouble> a, std::size_t rows, std::size_t cols,
            std::span<const cdouble> x, std::span<cdouble> y);
}  // namespace scalar

namespace avx2 {
void poly_eval(std::span<const cdouble> coeffs, std::span<const cdouble> z, std::span<cdouble> out);
void husimi(std::span<const cdouble> coeffs, std::span<const cdouble> alpha, std::span<double> out);
void matvec(std::span<const cdouble> a, std::size_t rows, std::size_t cols,
            std::span<const cdouble> x, std::span<cdouble> y);
}  // namespace avx2

}  // namespace squeezelab::kernels
