#pragma once

// Dense polynomial helpers. Coefficient arrays are ordered low to high:
// p(z) = sum_k coeffs[k] z^k.

#include <span>
#include <vector>

#include "squeezelab/error.hpp"

namespace squeezelab::poly {

cdouble evaluate(std::span<const cdouble> coeffs, cdouble z);

std::vector<cdouble> derivative(std::span<const cdouble> coeffs);

/// Drops trailing zero coefficients; the zero polynomial becomes {0}.
std::vector<cdouble> trimmed(std::span<const cdouble> coeffs);

std::vector<cdouble> to_complex(std::span<const double> coeffs);

/// All roots with multiplicity, from the eigenvalues of the companion matrix
/// followed by Newton polishing. Requires degree >= 1.
std::vector<cdouble> roots(std::span<const cdouble> coeffs);

}  // namespace squeezelab::poly
