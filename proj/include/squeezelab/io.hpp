#pragma once

// File formats: problem specs, Fock vectors, Q-function grids and reports.
// Doubles are written as the shortest decimal that round-trips.

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "squeezelab/analytic.hpp"
#include "squeezelab/bargmann.hpp"
#include "squeezelab/models.hpp"
#include "squeezelab/solver.hpp"
#include "squeezelab/uncertainty.hpp"

namespace squeezelab::io {

using json = nlohmann::ordered_json;

std::string format_double(double x);

/// [re, im]; a bare number is accepted on input as a real value.
json complex_to_json(cdouble z);
cdouble complex_from_json(const json& j, const std::string& what = "complex value");

/// {"dim": n, "amps": [[re, im], ...]}
json fock_to_json(const fock::FockVector& v);
fock::FockVector fock_from_json(const json& j);

struct ProblemSpec {
  /// "poly_f" or "deformed_g".
  std::string model = "poly_f";
  /// poly_f: coefficients of f. deformed_g: coefficients of the polynomial g
  /// unless g_values is given.
  std::vector<double> coeffs;
  std::vector<double> g_values;
  cdouble lambda{1.0};
  cdouble beta{};
  std::vector<cdouble> seeds;
  bargmann::GridSpec grid{};
  solver::FieldOptions field{};
  /// Taylor order of the series solution.
  std::size_t n_taylor = 120;
  std::string label;

  /// Throws ParseError for structural problems and DomainError for
  /// parameters outside the model's domain.
  void validate() const;
  models::PolyFSpec poly_f() const;
  models::DeformedGSpec deformed_g() const;
  solver::RayOde ode() const;
  solver::InitialData init() const { return {seeds}; }
};

ProblemSpec parse_problem(const json& j);
ProblemSpec load_problem(const std::filesystem::path& path);
json problem_to_json(const ProblemSpec& p);

json grid_to_json(const bargmann::GridSpec& g);
bargmann::GridSpec grid_from_json(const json& j);

/// Header `re,im,q`, then one line per grid point with x fastest.
void write_qgrid_csv(const bargmann::QGrid& q, std::ostream& out);
/// Sidecar metadata describing the CSV written next to it.
json qgrid_metadata(const bargmann::QGrid& q, const std::string& csv_file, const json& problem);

/// {"roots": [[re, im, mult], ...], "separable": bool, ...}
json roots_report(const models::RootSet& roots, const models::SeparabilityResult& sep);

json uncertainty_to_json(const uncertainty::UncertaintyReport& r);
json analyticity_to_json(const solver::AnalyticityReport& r);

/// {lambda, beta, parity, var_F, var_G, commutator, defect, mean_n, matched_variant}
json amp2_report(const analytic::AmpSquaredParams& p, analytic::Parity parity,
                 const uncertainty::UncertaintyReport& u, std::optional<analytic::MeanPhotonReport> n);

/// Pretty-printed JSON with a trailing newline.
std::string dump(const json& j);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace squeezelab::io
