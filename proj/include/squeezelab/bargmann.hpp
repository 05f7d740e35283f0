#pragma once

// Fock-Bargmann representation: a pure state |psi> = psi(a^dag)|0> is the
// entire function psi(z) = sum_n c_n z^n / sqrt(n!). Truncated states are
// polynomials, so every sum below is finite and exact at fixed truncation.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "squeezelab/fock.hpp"

namespace squeezelab::bargmann {

using fock::FockVector;

class EntireState {
 public:
  EntireState() = default;
  explicit EntireState(FockVector fock) : fock_(std::move(fock)) {}
  /// Builds the state from Taylor coefficients a_n = psi^(n)(0)/n!.
  static EntireState from_taylor(std::span<const cdouble> a);

  const FockVector& fock() const noexcept { return fock_; }
  std::size_t dim() const noexcept { return fock_.dim(); }
  /// a_n = c_n / sqrt(n!).
  cdouble taylor(std::size_t n) const;
  std::vector<cdouble> taylor() const;
  /// psi(z).
  cdouble evaluate(cdouble z) const;
  /// psi^(k)(z).
  cdouble derivative(std::size_t k, cdouble z) const;

 private:
  FockVector fock_;
};

/// <psi1|psi2>, padding the shorter state.
cdouble inner(const EntireState& psi1, const EntireState& psi2);

/// N with |N psi| = 1. Throws DomainError for the zero state.
double normalization(const EntireState& psi);

/// <a^dag^n a^m> / <psi|psi>.
cdouble moment(const EntireState& psi, std::size_t n, std::size_t m);

/// sum_k conj(c_{n+k}) c_{m+k} sqrt((n+k)!(m+k)!)/k!, the unnormalized moment,
/// in any complex scalar type.
template <class C>
C moment_fock(const std::vector<C>& c, std::size_t n, std::size_t m) {
  using std::abs;
  using std::conj;
  using std::sqrt;
  using R = decltype(abs(c[0]));
  C sum(0);
  if (c.size() <= std::max(n, m)) return sum;
  R w(1);
  for (std::size_t i = 2; i <= n; ++i) w *= R(static_cast<double>(i));
  for (std::size_t i = 2; i <= m; ++i) w *= R(static_cast<double>(i));
  w = sqrt(w);
  for (std::size_t k = 0; n + k < c.size() && m + k < c.size(); ++k) {
    sum += conj(c[n + k]) * c[m + k] * C(w);
    w *= sqrt(R(static_cast<double>(n + k + 1)) * R(static_cast<double>(m + k + 1))) /
         R(static_cast<double>(k + 1));
  }
  return sum;
}

/// Normally ordered characteristic function <exp(beta a^dag) exp(-conj(beta) a)>.
cdouble char_fn(const EntireState& psi, cdouble beta);

/// Characteristic function of S(xi)|psi> with S(xi) = exp((conj(xi) a^2 - xi a^dag^2)/2),
/// obtained from that of psi at mu beta + nu conj(beta).
cdouble squeezed_char_fn(const EntireState& psi, cdouble xi, cdouble beta);

/// |psi(conj(alpha))|^2 exp(-|alpha|^2); divided by pi |psi|^2 when normalized.
double q_function(const EntireState& psi, cdouble alpha, bool normalized = false);

struct GridSpec {
  double x_min = -3.0, x_max = 3.0;
  double y_min = -3.0, y_max = 3.0;
  std::size_t nx = 61, ny = 61;

  void validate() const;
  double x(std::size_t i) const;
  double y(std::size_t j) const;
};

struct QGrid {
  GridSpec grid;
  bool normalized = false;
  /// Row-major: index j * nx + i holds Q(x_i + i y_j).
  std::vector<double> values;

  double at(std::size_t i, std::size_t j) const { return values[j * grid.nx + i]; }
};

/// Q-function on a rectangular grid; rows are evaluated in parallel.
QGrid q_grid(const EntireState& psi, const GridSpec& grid, bool normalized = false);

/// Taylor coefficients of psi(z + alpha), i.e. exp(alpha a) psi.
EntireState shift_state(const EntireState& psi, cdouble alpha);

/// psi(mu z), i.e. mu^n a.
EntireState scale_state(const EntireState& psi, cdouble mu);

EntireState coherent_state(std::size_t dim, cdouble alpha);

}  // namespace squeezelab::bargmann
