#pragma once

// Uncertainty products for F = A + A^dag and G = -i(A - A^dag).

#include <functional>
#include <span>

#include "squeezelab/fock.hpp"

namespace squeezelab::uncertainty {

struct UncertaintyReport {
  double delta_F = 0.0;
  double delta_G = 0.0;
  double var_F = 0.0;
  double var_G = 0.0;
  /// |<[F, G]>|/2 = <[A, A^dag]>.
  double commutator = 0.0;
  /// delta_F delta_G - commutator.
  double defect = 0.0;
  /// <:(Delta F)^2:> and <:(Delta G)^2:>; only filled for polynomial f.
  double no_var_F = 0.0;
  double no_var_G = 0.0;
  bool has_normal_order = false;
  double leakage = 0.0;
  bool leakage_warning = false;

  /// (Delta F)^2 or (Delta G)^2 below the commutator bound.
  bool generalized_squeezed(double margin = 0.0) const {
    return var_F < commutator - margin || var_G < commutator - margin;
  }
};

/// A = f(a) with f(z) = sum_k coeffs[k] z^k. Both operators are applied to the
/// truncated state exactly (the result is padded), so the only approximation
/// is the truncation of psi itself. psi need not be normalized.
UncertaintyReport uncertainty_report(const fock::FockVector& psi, std::span<const cdouble> f);
UncertaintyReport uncertainty_report(const fock::FockVector& psi, std::span<const double> f);

using VectorOp = std::function<fock::FockVector(const fock::FockVector&)>;

/// Generic A given by its exact action and that of A^dag on padded vectors;
/// `pad` extra states are appended to psi before either is applied.
UncertaintyReport uncertainty_report(const fock::FockVector& psi, const VectorOp& apply_a,
                                     const VectorOp& apply_a_dag, std::size_t pad);

/// A = g(n) a for g sampled at 0..dim.
UncertaintyReport deformed_uncertainty_report(const fock::FockVector& psi,
                                              const std::function<double(std::size_t)>& g);

}  // namespace squeezelab::uncertainty
