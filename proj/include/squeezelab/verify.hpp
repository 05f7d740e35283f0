#pragma once

// Acceptance battery: oracle equivalences, closed-form identities and
// invariants, each reported with its measured residual and tolerance.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "squeezelab/io.hpp"

namespace squeezelab::verify {

struct VerifyOptions {
  /// -1 flips the sign of the k(1-lambda) term in the deformed
  /// initial-condition recurrence; the recurrence-vs-ray check must then fail.
  double fault_sign = 1.0;
  std::uint64_t seed = 20241014;
};

enum class Relation { at_most, greater_than };

struct Check {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  Relation relation = Relation::at_most;
  bool passed = false;
  /// Wall-clock measurement; left out of JSON unless timing is requested.
  bool timing = false;
  std::string note;

  static Check at_most(std::string name, double measured, double bound, std::string note = {});
  static Check greater_than(std::string name, double measured, double bound, std::string note = {});
  /// Boolean condition; measured is 1 for a failure and 0 otherwise.
  static Check flag(std::string name, bool ok, std::string note = {});
};

struct Criterion {
  std::string id;
  std::string title;
  std::vector<Check> checks;
  /// Extra measurements that do not gate the result.
  io::json info = io::json::object();
  double seconds = 0.0;
  std::string error;

  bool passed() const;
  void add(Check c) { checks.push_back(std::move(c)); }
  /// The failing check with the largest measured/bound ratio, or the tightest passing one.
  const Check* worst() const;
};

struct Report {
  std::vector<Criterion> criteria;
  bool passed() const;
};

using CriterionFn = std::function<Criterion(const VerifyOptions&)>;

struct BatteryEntry {
  std::string id;
  CriterionFn run;
};

Criterion quadrature_oracle(const VerifyOptions& opt);
Criterion dispersion_identities(const VerifyOptions& opt);
Criterion minimal_quadrature_variance(const VerifyOptions& opt);
Criterion amplitude_squared(const VerifyOptions& opt);
Criterion mean_photon_number(const VerifyOptions& opt);
Criterion cubic_model(const VerifyOptions& opt);
Criterion deformed_g_n(const VerifyOptions& opt);
Criterion ordering_layer(const VerifyOptions& opt);
Criterion mehler_identity(const VerifyOptions& opt);
Criterion squeezing_implies_nonclassical(const VerifyOptions& opt);

/// The deformed recurrence-vs-ray comparison alone (used by the mutation canary).
Check deformed_recurrence_vs_ray(const VerifyOptions& opt);

const std::vector<BatteryEntry>& battery();

/// Runs one criterion, converting exceptions into a failed criterion.
Criterion run_criterion(const BatteryEntry& e, const VerifyOptions& opt);

/// Runs the entries whose id is in `only` (all when empty).
Report run_battery(const VerifyOptions& opt, const std::vector<std::string>& only = {});

/// "PASS <id> ..." or "FAIL <id> ..." on one line.
std::string summary_line(const Criterion& c);

/// Timings are omitted by default so identical runs give identical bytes.
io::json criterion_to_json(const Criterion& c, bool include_timing = false);
io::json report_to_json(const Report& r, bool include_timing = false);

}  // namespace squeezelab::verify
