#include "squeezelab/uncertainty.hpp"

#include <algorithm>
#include <cmath>

#include "squeezelab/bargmann.hpp"
#include "squeezelab/ordering.hpp"

namespace squeezelab::uncertainty {

namespace {

using fock::FockVector;

void fill_generic(UncertaintyReport& r, const FockVector& p, const FockVector& ap, const FockVector& adp) {
  // <A> = <p|A p>, <A A^dag> = |A^dag p|^2, <A^dag A> = |A p|^2 and
  // F^2 = A^2 + A^dag^2 + A A^dag + A^dag A.
  const cdouble mean_a = fock::dot(p, ap);
  const cdouble a2 = fock::dot(adp, ap);  // <A^2>
  const double aad = adp.norm_squared();
  const double ada = ap.norm_squared();
  const double mean_f = 2.0 * mean_a.real();
  const double mean_g = 2.0 * mean_a.imag();
  r.var_F = 2.0 * a2.real() + aad + ada - mean_f * mean_f;
  r.var_G = -2.0 * a2.real() + aad + ada - mean_g * mean_g;
  if (r.var_F < -1e-10 || r.var_G < -1e-10) throw Error("uncertainty_report: negative variance");
  r.var_F = std::max(r.var_F, 0.0);
  r.var_G = std::max(r.var_G, 0.0);
  r.delta_F = std::sqrt(r.var_F);
  r.delta_G = std::sqrt(r.var_G);
  r.commutator = std::abs(aad - ada);
  r.defect = r.delta_F * r.delta_G - r.commutator;
  // F p = A p + A^dag p; the top 10% of its support measures truncation.
  FockVector fp = adp;
  fp += ap;
  r.leakage = fp.tail_mass(0.1);
  r.leakage_warning = r.leakage > fock::kLeakageThreshold;
}

}  // namespace

UncertaintyReport uncertainty_report(const FockVector& psi, const VectorOp& apply_a,
                                     const VectorOp& apply_a_dag, std::size_t pad) {
  const FockVector p = psi.normalized().resized(psi.dim() + pad);
  UncertaintyReport r;
  fill_generic(r, p, apply_a(p), apply_a_dag(p));
  return r;
}

UncertaintyReport uncertainty_report(const FockVector& psi, std::span<const cdouble> f) {
  const std::size_t deg = f.empty() ? 0 : f.size() - 1;
  std::vector<cdouble> fc(f.size());
  std::transform(f.begin(), f.end(), fc.begin(), [](cdouble c) { return std::conj(c); });
  // Padding by deg makes A^dag p fit, and A p then needs no further room.
  const FockVector p = psi.normalized().resized(psi.dim() + deg);
  const FockVector ap = fock::apply_annihilator_poly(f, p);
  FockVector adp = fock::apply_creator_poly(fc, psi.normalized());
  UncertaintyReport r;
  fill_generic(r, p, ap, adp);

  // Normally ordered variances from the colon-ordered symbols of F^2, G^2.
  using ordering::NormallyOrderedPoly;
  const NormallyOrderedPoly A = NormallyOrderedPoly::of_annihilator(f);
  const NormallyOrderedPoly Ad = NormallyOrderedPoly::of_creator(fc);
  const NormallyOrderedPoly F = A + Ad;
  const NormallyOrderedPoly G = (A - Ad).scaled(cdouble(0.0, -1.0));
  const bargmann::EntireState st(psi);
  const double mean_f = F.expectation(st).real();
  const double mean_g = G.expectation(st).real();
  r.no_var_F = F.symbol_product(F).expectation(st).real() - mean_f * mean_f;
  r.no_var_G = G.symbol_product(G).expectation(st).real() - mean_g * mean_g;
  r.has_normal_order = true;
  return r;
}

UncertaintyReport uncertainty_report(const FockVector& psi, std::span<const double> f) {
  std::vector<cdouble> c(f.begin(), f.end());
  return uncertainty_report(psi, std::span<const cdouble>(c));
}

UncertaintyReport deformed_uncertainty_report(const FockVector& psi,
                                              const std::function<double(std::size_t)>& g) {
  // (g(n) a p)_k = g(k) sqrt(k+1) p_{k+1};  (a^dag g(n) p)_k = sqrt(k) g(k-1) p_{k-1}.
  auto apply_a = [&](const FockVector& p) {
    FockVector out(p.dim());
    for (std::size_t k = 0; k + 1 < p.dim(); ++k)
      out[k] = g(k) * std::sqrt(static_cast<double>(k + 1)) * p[k + 1];
    return out;
  };
  auto apply_ad = [&](const FockVector& p) {
    FockVector out(p.dim());
    for (std::size_t k = 1; k < p.dim(); ++k) out[k] = std::sqrt(static_cast<double>(k)) * g(k - 1) * p[k - 1];
    return out;
  };
  return uncertainty_report(psi, apply_a, apply_ad, 1);
}

}  // namespace squeezelab::uncertainty
