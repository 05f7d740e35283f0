#include "squeezelab/ordering.hpp"

#include <cmath>

namespace squeezelab::ordering {

namespace {

// i! / (i - k)!
double falling(std::size_t i, std::size_t k) {
  double r = 1.0;
  for (std::size_t j = 0; j < k; ++j) r *= static_cast<double>(i - j);
  return r;
}

double binom(std::size_t n, std::size_t k) { return falling(n, k) / falling(k, k); }

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw DomainError("stirling: int64 overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw DomainError("stirling: int64 overflow");
  return r;
}

}  // namespace

NormallyOrderedPoly NormallyOrderedPoly::of_annihilator(std::span<const cdouble> f) {
  NormallyOrderedPoly p;
  for (std::size_t k = 0; k < f.size(); ++k) p.add(0, k, f[k]);
  return p;
}

NormallyOrderedPoly NormallyOrderedPoly::of_creator(std::span<const cdouble> f) {
  NormallyOrderedPoly p;
  for (std::size_t k = 0; k < f.size(); ++k) p.add(k, 0, f[k]);
  return p;
}

void NormallyOrderedPoly::add(std::size_t n, std::size_t m, cdouble c) {
  if (c == cdouble{}) return;
  terms_[{n, m}] += c;
}

cdouble NormallyOrderedPoly::coeff(std::size_t n, std::size_t m) const {
  const auto it = terms_.find({n, m});
  return it == terms_.end() ? cdouble{} : it->second;
}

void NormallyOrderedPoly::prune(double tol) {
  std::erase_if(terms_, [tol](const auto& kv) { return std::abs(kv.second) <= tol; });
}

NormallyOrderedPoly NormallyOrderedPoly::adjoint() const {
  NormallyOrderedPoly p;
  for (const auto& [key, c] : terms_) p.add(key.second, key.first, std::conj(c));
  return p;
}

bool NormallyOrderedPoly::is_hermitian(double tol) const {
  for (const auto& [key, c] : terms_)
    if (std::abs(c - std::conj(coeff(key.second, key.first))) > tol * std::max(1.0, std::abs(c))) return false;
  return true;
}

NormallyOrderedPoly NormallyOrderedPoly::operator*(const NormallyOrderedPoly& o) const {
  NormallyOrderedPoly p;
  for (const auto& [k1, c1] : terms_) {
    const auto [n1, q] = k1;
    for (const auto& [k2, c2] : o.terms_) {
      const auto [r, m2] = k2;
      for (std::size_t k = 0; k <= std::min(q, r); ++k)
        p.add(n1 + r - k, q - k + m2, c1 * c2 * binom(q, k) * falling(r, k));
    }
  }
  return p;
}

NormallyOrderedPoly NormallyOrderedPoly::symbol_product(const NormallyOrderedPoly& o) const {
  NormallyOrderedPoly p;
  for (const auto& [k1, c1] : terms_)
    for (const auto& [k2, c2] : o.terms_) p.add(k1.first + k2.first, k1.second + k2.second, c1 * c2);
  return p;
}

NormallyOrderedPoly NormallyOrderedPoly::operator+(const NormallyOrderedPoly& o) const {
  NormallyOrderedPoly p(*this);
  for (const auto& [key, c] : o.terms_) p.add(key.first, key.second, c);
  return p;
}

NormallyOrderedPoly NormallyOrderedPoly::operator-(const NormallyOrderedPoly& o) const {
  return *this + o.scaled(-1.0);
}

NormallyOrderedPoly NormallyOrderedPoly::scaled(cdouble s) const {
  NormallyOrderedPoly p;
  for (const auto& [key, c] : terms_) p.add(key.first, key.second, s * c);
  return p;
}

fock::OperatorMatrix NormallyOrderedPoly::to_matrix(std::size_t dim) const {
  fock::OperatorMatrix out(dim);
  std::vector<double> lf(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) lf[i] = std::lgamma(static_cast<double>(i) + 1.0);
  // <j| a^dag^n a^m |k> = sqrt(k! j!) / l! with l = k - m = j - n >= 0.
  for (const auto& [key, c] : terms_) {
    const auto [n, m] = key;
    for (std::size_t l = 0; l + std::max(n, m) < dim; ++l) {
      const std::size_t j = l + n, k = l + m;
      out.matrix()(j, k) += c * std::exp(0.5 * (lf[j] + lf[k]) - lf[l]);
    }
  }
  return out;
}

cdouble NormallyOrderedPoly::expectation(const bargmann::EntireState& psi) const {
  cdouble s{};
  for (const auto& [key, c] : terms_) s += c * bargmann::moment(psi, key.first, key.second);
  return s;
}

NormallyOrderedPoly normal_order_product(std::span<const cdouble> g, std::span<const cdouble> f) {
  NormallyOrderedPoly p;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      for (std::size_t k = 0; k <= std::min(i, j); ++k)
        p.add(i - k, j - k, f[i] * g[j] * falling(i, k) * falling(j, k) / falling(k, k));
  return p;
}

NormallyOrderedPoly a_pow_times_f(std::size_t n, std::span<const cdouble> f) {
  NormallyOrderedPoly p;
  for (std::size_t k = 0; k <= n; ++k)
    for (std::size_t i = k; i < f.size(); ++i) p.add(i - k, n - k, binom(n, k) * f[i] * falling(i, k));
  return p;
}

std::int64_t stirling_second(std::size_t m, std::size_t k) {
  if (k > m) return 0;
  std::vector<std::int64_t> row(k + 1, 0);
  row[0] = 1;  // S(0,0)
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = std::min(i, k); j >= 1; --j)
      row[j] = checked_add(checked_mul(static_cast<std::int64_t>(j), row[j]), row[j - 1]);
    row[0] = 0;
  }
  return row[k];
}

std::int64_t stirling_first_signed(std::size_t m, std::size_t k) {
  if (k > m) return 0;
  std::vector<std::int64_t> row(k + 1, 0);
  row[0] = 1;
  for (std::size_t i = 1; i <= m; ++i) {
    const auto im1 = static_cast<std::int64_t>(i - 1);
    for (std::size_t j = std::min(i, k); j >= 1; --j)
      row[j] = checked_add(row[j - 1], checked_mul(-im1, row[j]));
    row[0] = checked_mul(-im1, row[0]);
  }
  return row[k];
}

std::int64_t stirling_second_explicit(std::size_t m, std::size_t k) {
  if (k > m) return 0;
  __int128 sum = 0;
  __int128 c = 1;  // C(k, i)
  for (std::size_t i = 0; i <= k; ++i) {
    __int128 p = 1;
    for (std::size_t e = 0; e < m; ++e) p *= static_cast<__int128>(i);
    sum += ((k - i) % 2 == 0 ? c : -c) * p;
    c = c * static_cast<__int128>(k - i) / static_cast<__int128>(i + 1);
  }
  __int128 kf = 1;
  for (std::size_t i = 2; i <= k; ++i) kf *= static_cast<__int128>(i);
  return static_cast<std::int64_t>(sum / kf);
}

std::ptrdiff_t DifferenceTable::last_nonzero() const {
  for (std::size_t k = deltas.size(); k-- > 0;)
    if (deltas[k] != 0.0) return static_cast<std::ptrdiff_t>(k);
  return -1;
}

DifferenceTable difference_table(std::vector<double> g_values) {
  DifferenceTable t;
  t.g_values = std::move(g_values);
  // Forward differences; the leading entry of each row is (Delta^k g)(0).
  std::vector<double> row = t.g_values;
  for (std::size_t k = 0; k < t.g_values.size(); ++k) {
    t.deltas.push_back(row[0]);
    for (std::size_t i = 0; i + 1 < row.size(); ++i) row[i] = row[i + 1] - row[i];
    row.pop_back();
  }
  return t;
}

DifferenceTable ordered_number_function(const std::function<double(std::size_t)>& g, std::size_t K) {
  std::vector<double> v(K + 1);
  for (std::size_t i = 0; i <= K; ++i) v[i] = g(i);
  return difference_table(std::move(v));
}

DifferenceTable ordered_number_function(std::span<const double> poly_coeffs) {
  std::size_t deg = poly_coeffs.size();
  while (deg > 1 && poly_coeffs[deg - 1] == 0.0) --deg;
  const std::size_t K = deg == 0 ? 0 : deg - 1;
  return ordered_number_function(
      [&](std::size_t n) {
        double s = 0.0;
        for (std::size_t k = poly_coeffs.size(); k-- > 0;) s = s * static_cast<double>(n) + poly_coeffs[k];
        return s;
      },
      K);
}

NormallyOrderedPoly number_function_normal_form(const DifferenceTable& t) {
  NormallyOrderedPoly p;
  for (std::size_t k = 0; k < t.deltas.size(); ++k) p.add(k, k, t.deltas[k] / falling(k, k));
  return p;
}

}  // namespace squeezelab::ordering
