#include "squeezelab/roots.hpp"

#include <Eigen/Eigenvalues>

namespace squeezelab::poly {

cdouble evaluate(std::span<const cdouble> coeffs, cdouble z) {
  cdouble acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::vector<cdouble> derivative(std::span<const cdouble> coeffs) {
  if (coeffs.size() <= 1) return {0.0};
  std::vector<cdouble> out(coeffs.size() - 1);
  for (std::size_t k = 1; k < coeffs.size(); ++k) out[k - 1] = static_cast<double>(k) * coeffs[k];
  return out;
}

std::vector<cdouble> trimmed(std::span<const cdouble> coeffs) {
  std::size_t n = coeffs.size();
  while (n > 1 && coeffs[n - 1] == 0.0) --n;
  if (n == 0) return {0.0};
  return {coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(n)};
}

std::vector<cdouble> to_complex(std::span<const double> coeffs) {
  return {coeffs.begin(), coeffs.end()};
}

std::vector<cdouble> roots(std::span<const cdouble> coeffs) {
  const auto p = trimmed(coeffs);
  const std::size_t degree = p.size() - 1;
  if (degree < 1) throw DomainError("poly::roots: degree must be >= 1");

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(degree),
                                                      static_cast<Eigen::Index>(degree));
  const cdouble lead = p[degree];
  for (std::size_t i = 0; i < degree; ++i)
    companion(0, static_cast<Eigen::Index>(i)) = -p[degree - 1 - i] / lead;
  for (std::size_t i = 1; i < degree; ++i)
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw Error("poly::roots: eigenvalue solver failed");

  const auto dp = derivative(p);
  std::vector<cdouble> out;
  out.reserve(degree);
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    cdouble z = solver.eigenvalues()[i];
    // Newton polishing; stops when the correction no longer shrinks, which
    // also leaves clustered (multiple) roots where the eigensolver put them.
    double last = std::abs(evaluate(p, z));
    for (int it = 0; it < 8; ++it) {
      const cdouble d = evaluate(dp, z);
      if (d == 0.0) break;
      const cdouble cand = z - evaluate(p, z) / d;
      const double val = std::abs(evaluate(p, cand));
      if (!(val < last)) break;
      z = cand;
      last = val;
    }
    out.push_back(z);
  }
  return out;
}

}  // namespace squeezelab::poly
