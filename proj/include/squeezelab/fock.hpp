#pragma once

// Truncated Fock-space linear algebra. States are amplitude vectors c_0..c_N;
// operators are dense row-major matrices on the same truncation.

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "squeezelab/error.hpp"

namespace squeezelab::fock {

class FockVector {
 public:
  FockVector() = default;
  explicit FockVector(std::size_t dim);
  explicit FockVector(std::vector<cdouble> amps);

  static FockVector basis(std::size_t dim, std::size_t n);
  static FockVector vacuum(std::size_t dim) { return basis(dim, 0); }
  /// exp(-|alpha|^2/2) sum_n alpha^n/sqrt(n!) |n>, truncated (not renormalized).
  static FockVector coherent(std::size_t dim, cdouble alpha);

  std::size_t dim() const noexcept { return amps_.size(); }
  const std::vector<cdouble>& amps() const noexcept { return amps_; }
  std::vector<cdouble>& amps() noexcept { return amps_; }
  cdouble operator[](std::size_t n) const { return amps_[n]; }
  cdouble& operator[](std::size_t n) { return amps_[n]; }

  double norm_squared() const;
  double norm() const;
  /// Throws DomainError for the zero vector.
  FockVector normalized() const;
  /// Zero-padded or truncated copy with the given dimension.
  FockVector resized(std::size_t dim) const;
  /// Fraction of the squared norm carried by the top `fraction` of indices.
  double tail_mass(double fraction = 0.1) const;

  FockVector& operator+=(const FockVector& o);
  FockVector& operator-=(const FockVector& o);
  FockVector& operator*=(cdouble s);

 private:
  std::vector<cdouble> amps_;
};

FockVector operator+(FockVector a, const FockVector& b);
FockVector operator-(FockVector a, const FockVector& b);
FockVector operator*(cdouble s, FockVector a);

/// sum_n conj(a_n) b_n, padding the shorter vector with zeros.
cdouble dot(const FockVector& a, const FockVector& b);

using Matrix = Eigen::Matrix<cdouble, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

class OperatorMatrix {
 public:
  OperatorMatrix() = default;
  explicit OperatorMatrix(std::size_t dim) : m_(Matrix::Zero(dim, dim)) {}
  explicit OperatorMatrix(Matrix m);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const noexcept { return m_; }
  Matrix& matrix() noexcept { return m_; }
  cdouble operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  /// A psi; psi must have the operator's dimension.
  FockVector apply(const FockVector& psi) const;
  OperatorMatrix adjoint() const;
  bool is_hermitian(double tol = 1e-12) const;

  OperatorMatrix operator*(const OperatorMatrix& o) const;
  OperatorMatrix operator+(const OperatorMatrix& o) const;
  OperatorMatrix operator-(const OperatorMatrix& o) const;
  friend OperatorMatrix operator*(cdouble s, const OperatorMatrix& a);

 private:
  Matrix m_;
};

OperatorMatrix annihilator(std::size_t dim);
OperatorMatrix creator(std::size_t dim);
OperatorMatrix number_op(std::size_t dim);
OperatorMatrix identity(std::size_t dim);

/// sum_k coeffs[k] A^k by Horner's rule.
OperatorMatrix poly_of_op(std::span<const double> coeffs, const OperatorMatrix& a);
OperatorMatrix poly_of_op(std::span<const cdouble> coeffs, const OperatorMatrix& a);

/// <psi|A|psi>.
cdouble expectation(const FockVector& psi, const OperatorMatrix& a);

/// Mass of A psi in the top 10% of indices relative to |A psi|^2.
double leakage(const OperatorMatrix& a, const FockVector& psi);

inline constexpr double kLeakageThreshold = 1e-8;

struct VarianceResult {
  double value = 0.0;
  double leakage = 0.0;
  bool leakage_warning = false;
};

/// <A^2> - <A>^2 for Hermitian A and normalized psi. Values in [-1e-10, 0)
/// are reported as computed; anything below that floor throws.
VarianceResult variance(const FockVector& psi, const OperatorMatrix& a);

/// Dense matrix exponential.
OperatorMatrix expm(const OperatorMatrix& a);

/// exp((conj(xi) a^2 - xi a^dag^2)/2) as a dense truncated matrix.
OperatorMatrix squeeze_operator(std::size_t dim, cdouble xi);

/// S(xi) psi computed in a working space of `work_dim` >= psi.dim() states by
/// Taylor steps of the banded generator; the result has dimension work_dim.
FockVector apply_squeeze(const FockVector& psi, cdouble xi, std::size_t work_dim);

/// f(a) psi for f(z) = sum_k coeffs[k] z^k. The result has psi's dimension
/// and is exact for the truncated state.
FockVector apply_annihilator_poly(std::span<const cdouble> coeffs, const FockVector& psi);

/// f(a^dag) psi; the result is padded by deg f so it is exact.
FockVector apply_creator_poly(std::span<const cdouble> coeffs, const FockVector& psi);

/// |(A - beta) psi| over the rows n < dim - bandwidth, which only see
/// amplitudes present in the truncation, divided by |psi|.
double eigen_residual(const OperatorMatrix& a, const FockVector& psi, cdouble beta,
                      std::size_t bandwidth);

}  // namespace squeezelab::fock
