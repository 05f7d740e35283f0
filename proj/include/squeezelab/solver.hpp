#pragma once

// Linear ODE sum_k P_k(z) psi^(k)(z) = 0 with polynomial coefficients, solved
// along rays z = r exp(-i phi) and by Taylor-coefficient recurrence.
//
// On the ray psi_phi(r) = psi(r e^{-i phi}) the equation reads
//   sum_k C_k(phi, r) psi_phi^(k)(r) = 0,   C_k = P_k(r e^{-i phi}) e^{i k phi},
// and the ray seeds are psi_phi^(k)(0) = c_k e^{-i k phi}.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "squeezelab/bargmann.hpp"

namespace squeezelab::solver {

struct RayOde {
  /// p[k][m]: coefficient of z^m in P_k, k = 0..order.
  std::vector<std::vector<cdouble>> p;
  cdouble lambda{};
  cdouble beta{};
  std::string label;
  std::vector<std::string> warnings;

  std::size_t order() const noexcept { return p.empty() ? 0 : p.size() - 1; }
  void validate() const;
  /// C_0..C_K at (phi, r).
  std::vector<cdouble> coefficients(double phi, double r) const;
  /// True when the leading coefficient vanishes at z = 0.
  bool singular_at_origin() const;
};

/// Seeds c_k = psi^(k)(0), k = 0..K-1.
struct InitialData {
  std::vector<cdouble> c;
};

struct RayOptions {
  double tol = 1e-10;
  /// Absolute floor of the error scale.
  double atol = 1e-16;
  /// Start radius for a singular leading coefficient at r = 0.
  double r0 = 1e-4;
  std::size_t max_steps = 2'000'000;
  /// Taylor order used to hand off from a singular origin.
  std::size_t handoff_terms = 40;
};

struct RaySamples {
  double phi = 0.0;
  std::vector<double> rs;
  /// values[i] = psi_phi(rs[i]).
  std::vector<cdouble> values;
  std::size_t steps = 0;
  std::size_t rejected = 0;
};

/// Integrates one ray with Dormand-Prince 5(4) and returns psi_phi at the
/// requested ascending radii (rs[0] >= 0). Throws SolverError when the
/// leading coefficient vanishes on the ray or the step size underflows.
RaySamples integrate_ray(const RayOde& ode, const InitialData& init, double phi,
                         const std::vector<double>& rs, const RayOptions& opt = {});

/// As above with explicit ray initial values psi_phi^(k)(0).
RaySamples integrate_ray_values(const RayOde& ode, const std::vector<cdouble>& ray_init, double phi,
                                const std::vector<double>& rs, const RayOptions& opt = {});

/// Taylor coefficients a_0..a_N of the solution, returned as a state with
/// N + 1 Fock amplitudes. Equations that fall on seed indices are checked for
/// consistency; a vanishing pivot throws RecurrenceBreakdown.
bargmann::EntireState solve_series(const RayOde& ode, const InitialData& init, std::size_t n_taylor);

struct FieldOptions {
  std::size_t n_phi = 64;
  std::size_t n_r = 200;
  double r_max = 4.0;
  RayOptions ray{};
};

struct RayField {
  std::vector<double> phis;
  std::vector<double> rs;
  /// values(j, i) = psi_{phi_j}(r_i).
  Eigen::MatrixXcd values;
};

/// All rays of a uniform phi grid, integrated in parallel and stored by ray
/// index. Ray failures are rethrown with the ray index attached.
RayField assemble_field(const RayOde& ode, const InitialData& init, const FieldOptions& opt = {});

/// Variant with caller-supplied ray initial values per phi.
RayField assemble_field(const RayOde& ode, const std::function<std::vector<cdouble>(double)>& ray_init,
                        const FieldOptions& opt = {});

struct AnalyticityReport {
  std::size_t n_modes = 0;
  /// max_i |mode +n at r_i| / scale_i, n = 1..n_modes.
  std::vector<double> positive_residual;
  /// max_i |mode -n at r_i - a_n r_i^n| / scale_i with least-squares a_n, n = 0..n_modes.
  std::vector<double> profile_residual;
  double max_positive = 0.0;
  double max_profile = 0.0;
  /// Spread of psi_phi(0) across rays.
  double origin_spread = 0.0;

  bool passed(double tol) const { return max_positive <= tol && max_profile <= tol; }
};

/// DFT over phi at each radius. An analytic function of r e^{-i phi} has only
/// modes e^{-i n phi}, each with a radial profile proportional to r^n. scale_i
/// is max_j |psi_{phi_j}(r_i)|, which bounds every mode at that radius; radii
/// where the field vanishes identically are skipped.
AnalyticityReport analyticity_check(const RayField& field, std::size_t n_modes = 8);

/// max over the field of |psi_field - psi(r e^{-i phi})| / max_j |psi(r_i e^{-i phi_j})|.
double field_deviation(const RayField& field, const std::function<cdouble(cdouble)>& psi);

}  // namespace squeezelab::solver
