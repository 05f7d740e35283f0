#include "squeezelab/bargmann.hpp"

#include <algorithm>
#include <numbers>

#include "squeezelab/kernels.hpp"
#include "squeezelab/parallel.hpp"

namespace squeezelab::bargmann {

namespace {

double inv_sqrt_factorial(std::size_t n) { return std::exp(-0.5 * std::lgamma(static_cast<double>(n) + 1.0)); }

}  // namespace

EntireState EntireState::from_taylor(std::span<const cdouble> a) {
  FockVector v(a.size());
  for (std::size_t n = 0; n < a.size(); ++n) v[n] = a[n] / inv_sqrt_factorial(n);
  return EntireState(std::move(v));
}

cdouble EntireState::taylor(std::size_t n) const {
  return n < dim() ? fock_[n] * inv_sqrt_factorial(n) : cdouble{};
}

std::vector<cdouble> EntireState::taylor() const {
  std::vector<cdouble> a(dim());
  for (std::size_t n = 0; n < dim(); ++n) a[n] = taylor(n);
  return a;
}

cdouble EntireState::evaluate(cdouble z) const {
  // t_n = z^n / sqrt(n!) by recurrence stays representable far beyond n = 170.
  cdouble sum{}, t = 1.0;
  for (std::size_t n = 0; n < dim(); ++n) {
    sum += fock_[n] * t;
    t *= z / std::sqrt(static_cast<double>(n + 1));
  }
  return sum;
}

cdouble EntireState::derivative(std::size_t k, cdouble z) const {
  // psi^(k)(z) = sum_{n>=k} c_n sqrt(n!)/(n-k)! z^(n-k); the weight
  // sqrt(n!)/(n-k)! is updated by the ratio for n -> n+1.
  if (k >= dim()) return {};
  double w = std::exp(0.5 * std::lgamma(static_cast<double>(k) + 1.0));
  cdouble sum{}, zp = 1.0;
  for (std::size_t n = k; n < dim(); ++n) {
    sum += fock_[n] * w * zp;
    w *= std::sqrt(static_cast<double>(n + 1)) / static_cast<double>(n + 1 - k);
    zp *= z;
  }
  return sum;
}

cdouble inner(const EntireState& psi1, const EntireState& psi2) { return fock::dot(psi1.fock(), psi2.fock()); }

double normalization(const EntireState& psi) {
  const double n = psi.fock().norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("normalization: zero or non-finite state");
  return 1.0 / n;
}

cdouble moment(const EntireState& psi, std::size_t n, std::size_t m) {
  const double nsq = psi.fock().norm_squared();
  if (!(nsq > 0.0)) throw DomainError("moment: zero state");
  return moment_fock(psi.fock().amps(), n, m) / nsq;
}

cdouble char_fn(const EntireState& psi, cdouble beta) {
  const double nsq = psi.fock().norm_squared();
  if (!(nsq > 0.0)) throw DomainError("char_fn: zero state");
  const EntireState left = shift_state(psi, std::conj(beta));
  const EntireState right = shift_state(psi, -std::conj(beta));
  return inner(left, right) / nsq;
}

cdouble squeezed_char_fn(const EntireState& psi, cdouble xi, cdouble beta) {
  const double r = std::abs(xi);
  const double mu = std::cosh(r);
  const cdouble nu = r > 0.0 ? std::polar(std::sinh(r), std::arg(xi)) : cdouble{};
  const cdouble beta_p = mu * beta + nu * std::conj(beta);
  const double expo = -std::norm(nu) * std::norm(beta) - mu * (std::conj(nu) * beta * beta).real();
  return char_fn(psi, beta_p) * std::exp(expo);
}

double q_function(const EntireState& psi, cdouble alpha, bool normalized) {
  double q = std::norm(psi.evaluate(std::conj(alpha))) * std::exp(-std::norm(alpha));
  if (normalized) q /= std::numbers::pi * psi.fock().norm_squared();
  return q;
}

void GridSpec::validate() const {
  if (nx < 2 || ny < 2) throw DomainError("grid: nx and ny must be >= 2");
  if (!(x_max > x_min) || !(y_max > y_min)) throw DomainError("grid: extents must be increasing");
}

double GridSpec::x(std::size_t i) const {
  return x_min + (x_max - x_min) * static_cast<double>(i) / static_cast<double>(nx - 1);
}

double GridSpec::y(std::size_t j) const {
  return y_min + (y_max - y_min) * static_cast<double>(j) / static_cast<double>(ny - 1);
}

QGrid q_grid(const EntireState& psi, const GridSpec& grid, bool normalized) {
  grid.validate();
  QGrid out{grid, normalized, std::vector<double>(grid.nx * grid.ny)};
  const std::vector<cdouble> a = psi.taylor();
  const double scale = normalized ? 1.0 / (std::numbers::pi * psi.fock().norm_squared()) : 1.0;
  parallel::parallel_for(grid.ny, [&](std::size_t j) {
    std::vector<cdouble> alpha(grid.nx);
    for (std::size_t i = 0; i < grid.nx; ++i) alpha[i] = {grid.x(i), grid.y(j)};
    std::span<double> row(out.values.data() + j * grid.nx, grid.nx);
    kernels::husimi(a, alpha, row);
    if (normalized)
      for (auto& q : row) q *= scale;
  });
  return out;
}

EntireState shift_state(const EntireState& psi, cdouble alpha) {
  const std::size_t d = psi.dim();
  if (alpha == cdouble{}) return psi;
  // c'_n = sum_{k>=n} c_k sqrt(k!/n!) alpha^(k-n)/(k-n)!, weights in log space.
  std::vector<double> lf(d + 1);
  for (std::size_t n = 0; n <= d; ++n) lf[n] = std::lgamma(static_cast<double>(n) + 1.0);
  const double la = std::log(std::abs(alpha));
  const double ph = std::arg(alpha);
  FockVector out(d);
  for (std::size_t n = 0; n < d; ++n) {
    cdouble s{};
    for (std::size_t k = n; k < d; ++k) {
      const double j = static_cast<double>(k - n);
      const double lw = 0.5 * (lf[k] - lf[n]) - lf[k - n] + j * la;
      s += psi.fock()[k] * std::polar(std::exp(lw), j * ph);
    }
    out[n] = s;
  }
  return EntireState(std::move(out));
}

EntireState scale_state(const EntireState& psi, cdouble mu) {
  FockVector out(psi.fock());
  cdouble p = 1.0;
  for (std::size_t n = 0; n < out.dim(); ++n) {
    out[n] *= p;
    p *= mu;
  }
  return EntireState(std::move(out));
}

EntireState coherent_state(std::size_t dim, cdouble alpha) { return EntireState(FockVector::coherent(dim, alpha)); }

}  // namespace squeezelab::bargmann
