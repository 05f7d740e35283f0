#include <atomic>
#include <cstdlib>
#include <string>

#include "squeezelab/kernels.hpp"

namespace squeezelab::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(SQUEEZELAB_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa initial_isa() {
  const Isa best = detected_isa();
  if (const char* env = std::getenv("SQUEEZELAB_ISA")) {
    const std::string v(env);
    if (v == "scalar") return Isa::scalar;
    if (v == "avx2" && best == Isa::avx2) return Isa::avx2;
  }
  return best;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool avx2_compiled() {
#if defined(SQUEEZELAB_HAVE_AVX2)
  return true;
#else
  return false;
#endif
}

Isa detected_isa() {
  static const Isa best = cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
  return best;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (isa == Isa::avx2 && detected_isa() != Isa::avx2)
    throw DomainError("kernels: AVX2 variant not available on this machine or build");
  current().store(isa, std::memory_order_relaxed);
}

#if defined(SQUEEZELAB_HAVE_AVX2)
#define SQUEEZELAB_DISPATCH(fn, ...)                            \
  do {                                                          \
    if (active_isa() == Isa::avx2) return avx2::fn(__VA_ARGS__); \
    return scalar::fn(__VA_ARGS__);                             \
  } while (false)
#else
#define SQUEEZELAB_DISPATCH(fn, ...) return scalar::fn(__VA_ARGS__)
#endif

void poly_eval(std::span<const cdouble> coeffs, std::span<const cdouble> z, std::span<cdouble> out) {
  if (out.size() != z.size()) throw DomainError("poly_eval: output size differs from input size");
  SQUEEZELAB_DISPATCH(poly_eval, coeffs, z, out);
}

void husimi(std::span<const cdouble> coeffs, std::span<const cdouble> alpha, std::span<double> out) {
  if (out.size() != alpha.size()) throw DomainError("husimi: output size differs from input size");
  SQUEEZELAB_DISPATCH(husimi, coeffs, alpha, out);
}

void matvec(std::span<const cdouble> a, std::size_t rows, std::size_t cols,
            std::span<const cdouble> x, std::span<cdouble> y) {
  if (a.size() != rows * cols || x.size() != cols || y.size() != rows)
    throw DomainError("matvec: inconsistent dimensions");
  SQUEEZELAB_DISPATCH(matvec, a, rows, cols, x, y);
}

#if !defined(SQUEEZELAB_HAVE_AVX2)
namespace avx2 {
void poly_eval(std::span<const cdouble>, std::span<const cdouble>, std::span<cdouble>) {
  throw DomainError("kernels: AVX2 variant not compiled");
}
void husimi(std::span<const cdouble>, std::span<const cdouble>, std::span<double>) {
  throw DomainError("kernels: AVX2 variant not compiled");
}
void matvec(std::span<const cdouble>, std::size_t, std::size_t, std::span<const cdouble>,
            std::span<cdouble>) {
  throw DomainError("kernels: AVX2 variant not compiled");
}
}  // namespace avx2
#endif

}  // namespace squeezelab::kernels
