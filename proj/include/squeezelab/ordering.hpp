#pragma once

// Normal-ordering algebra for polynomials in a and a^dag.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "squeezelab/bargmann.hpp"
#include "squeezelab/fock.hpp"

namespace squeezelab::ordering {

/// sum coeffs[(n, m)] a^dag^n a^m.
class NormallyOrderedPoly {
 public:
  using Key = std::pair<std::size_t, std::size_t>;

  static NormallyOrderedPoly of_annihilator(std::span<const cdouble> f);
  static NormallyOrderedPoly of_creator(std::span<const cdouble> f);

  void add(std::size_t n, std::size_t m, cdouble c);
  cdouble coeff(std::size_t n, std::size_t m) const;
  const std::map<Key, cdouble>& terms() const noexcept { return terms_; }

  /// Drops entries with |c| <= tol.
  void prune(double tol = 0.0);
  NormallyOrderedPoly adjoint() const;
  bool is_hermitian(double tol = 1e-12) const;

  /// Operator product, re-ordered with a^q a^dag^r = sum_k C(q,k) r!/(r-k)! a^dag^(r-k) a^(q-k).
  NormallyOrderedPoly operator*(const NormallyOrderedPoly& o) const;
  /// Product inside normal-ordering colons (creators and annihilators commute).
  NormallyOrderedPoly symbol_product(const NormallyOrderedPoly& o) const;
  NormallyOrderedPoly operator+(const NormallyOrderedPoly& o) const;
  NormallyOrderedPoly operator-(const NormallyOrderedPoly& o) const;
  NormallyOrderedPoly scaled(cdouble s) const;

  /// Exact matrix elements on a dim-state truncation.
  fock::OperatorMatrix to_matrix(std::size_t dim) const;
  /// Expectation value from normally ordered moments.
  cdouble expectation(const bargmann::EntireState& psi) const;

 private:
  std::map<Key, cdouble> terms_;
};

/// g(a) f(a^dag) = sum_k f^(k)(a^dag) g^(k)(a) / k!.
NormallyOrderedPoly normal_order_product(std::span<const cdouble> g, std::span<const cdouble> f);

/// a^n f(a^dag) = sum_k C(n,k) f^(k)(a^dag) a^(n-k).
NormallyOrderedPoly a_pow_times_f(std::size_t n, std::span<const cdouble> f);

/// Stirling numbers of the second kind by the recurrence S(m,k) = k S(m-1,k) + S(m-1,k-1).
/// Throws DomainError on int64 overflow.
std::int64_t stirling_second(std::size_t m, std::size_t k);

/// Signed Stirling numbers of the first kind, s(m,k) = s(m-1,k-1) - (m-1) s(m-1,k).
std::int64_t stirling_first_signed(std::size_t m, std::size_t k);

/// S(m,k) from the alternating sum (1/k!) sum_i (-1)^(k-i) C(k,i) i^m; cross-check only.
std::int64_t stirling_second_explicit(std::size_t m, std::size_t k);

struct DifferenceTable {
  std::vector<double> g_values;  ///< g(0..K)
  std::vector<double> deltas;    ///< (Delta^k g)(0), k = 0..K

  std::size_t order() const noexcept { return deltas.empty() ? 0 : deltas.size() - 1; }
  /// Largest k with a nonzero delta, or -1 for g = 0.
  std::ptrdiff_t last_nonzero() const;
};

/// Difference table of g sampled at 0..K.
DifferenceTable ordered_number_function(const std::function<double(std::size_t)>& g, std::size_t K);
/// Difference table of the polynomial g(n) = sum coeffs[k] n^k; K = degree.
DifferenceTable ordered_number_function(std::span<const double> poly_coeffs);
DifferenceTable difference_table(std::vector<double> g_values);

/// g(n) = sum_k deltas[k]/k! a^dag^k a^k.
NormallyOrderedPoly number_function_normal_form(const DifferenceTable& t);

}  // namespace squeezelab::ordering
