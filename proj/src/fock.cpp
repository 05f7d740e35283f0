#include "squeezelab/fock.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "squeezelab/kernels.hpp"

namespace squeezelab::fock {

FockVector::FockVector(std::size_t dim) : amps_(dim, cdouble{}) {
  if (dim == 0) throw DomainError("FockVector: dim must be >= 1");
}

FockVector::FockVector(std::vector<cdouble> amps) : amps_(std::move(amps)) {
  if (amps_.empty()) throw DomainError("FockVector: dim must be >= 1");
}

FockVector FockVector::basis(std::size_t dim, std::size_t n) {
  if (n >= dim) throw DomainError("FockVector::basis: index outside truncation");
  FockVector v(dim);
  v[n] = 1.0;
  return v;
}

FockVector FockVector::coherent(std::size_t dim, cdouble alpha) {
  FockVector v(dim);
  cdouble c = std::exp(-0.5 * std::norm(alpha));
  for (std::size_t n = 0; n < dim; ++n) {
    v[n] = c;
    c *= alpha / std::sqrt(static_cast<double>(n + 1));
  }
  return v;
}

double FockVector::norm_squared() const {
  double s = 0.0;
  for (const auto& c : amps_) s += std::norm(c);
  return s;
}

double FockVector::norm() const { return std::sqrt(norm_squared()); }

FockVector FockVector::normalized() const {
  const double n = norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("FockVector::normalized: zero or non-finite state");
  FockVector out(*this);
  out *= 1.0 / n;
  return out;
}

FockVector FockVector::resized(std::size_t dim) const {
  std::vector<cdouble> a(amps_);
  a.resize(dim, cdouble{});
  return FockVector(std::move(a));
}

double FockVector::tail_mass(double fraction) const {
  const double total = norm_squared();
  if (total == 0.0) return 0.0;
  const auto count = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(dim())));
  double tail = 0.0;
  for (std::size_t n = dim() - std::min(count, dim()); n < dim(); ++n) tail += std::norm(amps_[n]);
  return tail / total;
}

FockVector& FockVector::operator+=(const FockVector& o) {
  if (o.dim() > dim()) amps_.resize(o.dim(), cdouble{});
  for (std::size_t n = 0; n < o.dim(); ++n) amps_[n] += o[n];
  return *this;
}

FockVector& FockVector::operator-=(const FockVector& o) {
  if (o.dim() > dim()) amps_.resize(o.dim(), cdouble{});
  for (std::size_t n = 0; n < o.dim(); ++n) amps_[n] -= o[n];
  return *this;
}

FockVector& FockVector::operator*=(cdouble s) {
  for (auto& c : amps_) c *= s;
  return *this;
}

FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
FockVector operator*(cdouble s, FockVector a) { return a *= s; }

cdouble dot(const FockVector& a, const FockVector& b) {
  cdouble s{};
  const std::size_t n = std::min(a.dim(), b.dim());
  for (std::size_t k = 0; k < n; ++k) s += std::conj(a[k]) * b[k];
  return s;
}

OperatorMatrix::OperatorMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw DomainError("OperatorMatrix: matrix must be square");
}

FockVector OperatorMatrix::apply(const FockVector& psi) const {
  if (psi.dim() != dim()) throw DomainError("OperatorMatrix::apply: dimension mismatch");
  FockVector out(dim());
  kernels::matvec(std::span<const cdouble>(m_.data(), static_cast<std::size_t>(m_.size())), dim(),
                  dim(), psi.amps(), out.amps());
  return out;
}

OperatorMatrix OperatorMatrix::adjoint() const { return OperatorMatrix(Matrix(m_.adjoint())); }

bool OperatorMatrix::is_hermitian(double tol) const {
  const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

OperatorMatrix OperatorMatrix::operator*(const OperatorMatrix& o) const {
  if (o.dim() != dim()) throw DomainError("OperatorMatrix: dimension mismatch");
  return OperatorMatrix(Matrix(m_ * o.m_));
}

OperatorMatrix OperatorMatrix::operator+(const OperatorMatrix& o) const {
  if (o.dim() != dim()) throw DomainError("OperatorMatrix: dimension mismatch");
  return OperatorMatrix(Matrix(m_ + o.m_));
}

OperatorMatrix OperatorMatrix::operator-(const OperatorMatrix& o) const {
  if (o.dim() != dim()) throw DomainError("OperatorMatrix: dimension mismatch");
  return OperatorMatrix(Matrix(m_ - o.m_));
}

OperatorMatrix operator*(cdouble s, const OperatorMatrix& a) { return OperatorMatrix(Matrix(s * a.m_)); }

OperatorMatrix annihilator(std::size_t dim) {
  if (dim == 0) throw DomainError("annihilator: dim must be >= 1");
  OperatorMatrix a(dim);
  for (std::size_t n = 1; n < dim; ++n) a.matrix()(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

OperatorMatrix creator(std::size_t dim) { return annihilator(dim).adjoint(); }

OperatorMatrix number_op(std::size_t dim) {
  if (dim == 0) throw DomainError("number_op: dim must be >= 1");
  OperatorMatrix n(dim);
  for (std::size_t k = 0; k < dim; ++k) n.matrix()(k, k) = static_cast<double>(k);
  return n;
}

OperatorMatrix identity(std::size_t dim) {
  if (dim == 0) throw DomainError("identity: dim must be >= 1");
  return OperatorMatrix(Matrix(Matrix::Identity(dim, dim)));
}

OperatorMatrix poly_of_op(std::span<const cdouble> coeffs, const OperatorMatrix& a) {
  const std::size_t d = a.dim();
  Matrix acc = Matrix::Zero(d, d);
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    acc = acc * a.matrix();
    acc.diagonal().array() += coeffs[k];
  }
  return OperatorMatrix(std::move(acc));
}

OperatorMatrix poly_of_op(std::span<const double> coeffs, const OperatorMatrix& a) {
  std::vector<cdouble> c(coeffs.begin(), coeffs.end());
  return poly_of_op(std::span<const cdouble>(c), a);
}

cdouble expectation(const FockVector& psi, const OperatorMatrix& a) { return dot(psi, a.apply(psi)); }

double leakage(const OperatorMatrix& a, const FockVector& psi) { return a.apply(psi).tail_mass(0.1); }

VarianceResult variance(const FockVector& psi, const OperatorMatrix& a) {
  if (!a.is_hermitian()) throw DomainError("variance: operator is not Hermitian");
  if (std::abs(psi.norm_squared() - 1.0) > 1e-10) throw DomainError("variance: state is not normalized");
  const FockVector ap = a.apply(psi);
  const double mean = dot(psi, ap).real();
  VarianceResult r;
  r.value = ap.norm_squared() - mean * mean;
  if (r.value < -1e-10) throw Error("variance: negative beyond round-off floor");
  r.leakage = ap.tail_mass(0.1);
  r.leakage_warning = r.leakage > kLeakageThreshold;
  return r;
}

OperatorMatrix expm(const OperatorMatrix& a) {
  const Eigen::MatrixXcd m = a.matrix();
  return OperatorMatrix(Matrix(m.exp()));
}

OperatorMatrix squeeze_operator(std::size_t dim, cdouble xi) {
  const OperatorMatrix a = annihilator(dim);
  const OperatorMatrix ad = creator(dim);
  const OperatorMatrix gen = 0.5 * (std::conj(xi) * (a * a) - xi * (ad * ad));
  return expm(gen);
}

namespace {

// y = h (conj(xi) a^2 - xi a^dag^2)/2 x on an n-state truncation.
void squeeze_generator(cdouble xi, double h, const std::vector<cdouble>& x, std::vector<cdouble>& y) {
  const std::size_t n = x.size();
  const cdouble lower = 0.5 * h * std::conj(xi);
  const cdouble raise = -0.5 * h * xi;
  for (std::size_t k = 0; k < n; ++k) {
    cdouble s{};
    const double kd = static_cast<double>(k);
    if (k + 2 < n) s += lower * std::sqrt((kd + 1.0) * (kd + 2.0)) * x[k + 2];
    if (k >= 2) s += raise * std::sqrt(kd * (kd - 1.0)) * x[k - 2];
    y[k] = s;
  }
}

}  // namespace

FockVector apply_squeeze(const FockVector& psi, cdouble xi, std::size_t work_dim) {
  if (work_dim < psi.dim()) throw DomainError("apply_squeeze: work_dim smaller than the state");
  std::vector<cdouble> v = psi.resized(work_dim).amps();
  if (xi == cdouble{}) return FockVector(std::move(v));
  // Row sums bound the generator norm; sub-steps keep |h K| <= 1.
  const double nd = static_cast<double>(work_dim);
  const double bound = 0.5 * std::abs(xi) * (std::sqrt(nd * (nd + 1.0)) + nd);
  const auto steps = static_cast<std::size_t>(std::ceil(bound));
  const double h = 1.0 / static_cast<double>(steps);
  std::vector<cdouble> term(work_dim), next(work_dim);
  for (std::size_t s = 0; s < steps; ++s) {
    term = v;
    double vnorm = 0.0;
    for (const auto& c : v) vnorm += std::norm(c);
    for (int k = 1; k < 60; ++k) {
      squeeze_generator(xi, h, term, next);
      double tnorm = 0.0;
      for (std::size_t i = 0; i < work_dim; ++i) {
        term[i] = next[i] / static_cast<double>(k);
        v[i] += term[i];
        tnorm += std::norm(term[i]);
      }
      if (tnorm <= 1e-36 * vnorm) break;
    }
  }
  return FockVector(std::move(v));
}

FockVector apply_annihilator_poly(std::span<const cdouble> coeffs, const FockVector& psi) {
  const std::size_t n = psi.dim();
  FockVector out(n);
  // a^k psi computed by repeated lowering.
  std::vector<cdouble> cur = psi.amps();
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (k > 0) {
      for (std::size_t j = 0; j + 1 < n; ++j) cur[j] = std::sqrt(static_cast<double>(j + 1)) * cur[j + 1];
      cur[n - 1] = 0.0;
    }
    if (coeffs[k] != cdouble{})
      for (std::size_t j = 0; j < n; ++j) out[j] += coeffs[k] * cur[j];
  }
  return out;
}

FockVector apply_creator_poly(std::span<const cdouble> coeffs, const FockVector& psi) {
  const std::size_t deg = coeffs.empty() ? 0 : coeffs.size() - 1;
  const std::size_t n = psi.dim() + deg;
  FockVector out(n);
  std::vector<cdouble> cur = psi.resized(n).amps();
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (k > 0) {
      for (std::size_t j = n; j-- > 1;) cur[j] = std::sqrt(static_cast<double>(j)) * cur[j - 1];
      cur[0] = 0.0;
    }
    if (coeffs[k] != cdouble{})
      for (std::size_t j = 0; j < n; ++j) out[j] += coeffs[k] * cur[j];
  }
  return out;
}

double eigen_residual(const OperatorMatrix& a, const FockVector& psi, cdouble beta, std::size_t bandwidth) {
  const FockVector ap = a.apply(psi);
  const std::size_t rows = psi.dim() > bandwidth ? psi.dim() - bandwidth : 0;
  double s = 0.0;
  for (std::size_t n = 0; n < rows; ++n) s += std::norm(ap[n] - beta * psi[n]);
  return std::sqrt(s) / psi.norm();
}

}  // namespace squeezelab::fock
