// squeezelab command-line front end.
//
//   squeezelab solve    --config problem.json [--out dir] [--normalized]
//   squeezelab analytic --config analytic.json [--out dir] [--precision extended]
//   squeezelab qgrid    --config qgrid.json | --preset fig1|fig2|fig3 [--out dir] [--normalized]
//   squeezelab roots    --config roots.json [--out dir]
//   squeezelab verify   [--config verify.json] [--out dir]
//
// Exit codes: 0 success, 1 failed verification, 2 usage or parse error,
// 3 domain error, 4 numerical failure, 5 I/O error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "squeezelab/analytic.hpp"
#include "squeezelab/error.hpp"
#include "squeezelab/io.hpp"
#include "squeezelab/models.hpp"
#include "squeezelab/verify.hpp"

namespace fs = std::filesystem;
using namespace squeezelab;
using io::json;

namespace {

struct RunConfig {
  std::string command;
  std::string config;
  std::string out = "squeezelab_out";
  std::string precision = "double";
  std::string preset;
  bool normalized = false;
  bool timing = false;
};

numerics::Precision precision_of(const RunConfig& rc) {
  return rc.precision == "extended" ? numerics::Precision::extended : numerics::Precision::double_precision;
}

json config_json(const RunConfig& rc) {
  if (rc.config.empty()) throw ParseError(rc.command + ": --config is required");
  return io::read_json_file(rc.config);
}

void write_json(const fs::path& path, const json& j) { io::write_text_file(path, io::dump(j)); }

// Solves the problem by series; the ray field supplies the diagnostics.
struct Solved {
  io::ProblemSpec spec;
  bargmann::EntireState series;
  json diagnostics;
};

Solved solve_problem(const io::ProblemSpec& spec) {
  Solved s{spec, {}, {}};
  const auto ode = spec.ode();
  s.series = solver::solve_series(ode, spec.init(), spec.n_taylor);
  const auto field = solver::assemble_field(ode, spec.init(), spec.field);
  const auto an = solver::analyticity_check(field);
  const double dev = solver::field_deviation(field, [&](cdouble z) { return s.series.evaluate(z); });
  const double tail = s.series.fock().norm_squared() > 0.0 ? s.series.fock().normalized().tail_mass(0.1) : 0.0;
  json d{{"ode", ode.label},
         {"order", ode.order()},
         {"warnings", ode.warnings},
         {"n_taylor", spec.n_taylor},
         {"field", json{{"n_phi", spec.field.n_phi}, {"n_r", spec.field.n_r}, {"r_max", spec.field.r_max},
                        {"tol", spec.field.ray.tol}}},
         {"analyticity", io::analyticity_to_json(an)},
         {"ray_vs_series", dev},
         {"tail_mass", tail}};
  // A large tail means the truncated series does not represent a normalizable state.
  d["normalizable"] = tail < 1e-10;
  if (s.series.fock().norm_squared() > 0.0) d["normalization"] = bargmann::normalization(s.series);
  s.diagnostics = std::move(d);
  return s;
}

int cmd_solve(const RunConfig& rc) {
  const auto spec = io::parse_problem(config_json(rc));
  const auto s = solve_problem(spec);
  const fs::path out(rc.out);
  const auto state = rc.normalized ? s.series.fock().normalized() : s.series.fock();
  write_json(out / "state.json", io::fock_to_json(state));
  json diag = s.diagnostics;
  diag["problem"] = io::problem_to_json(spec);
  diag["state_normalized"] = rc.normalized;
  write_json(out / "diagnostics.json", diag);
  std::cout << io::dump(json{{"state", (out / "state.json").string()},
                             {"diagnostics", (out / "diagnostics.json").string()},
                             {"analyticity_max_positive", diag["analyticity"]["max_positive"]},
                             {"ray_vs_series", diag["ray_vs_series"]}});
  return 0;
}

analytic::Parity parity_from(const json& j) {
  const std::string p = j.value("parity", std::string("even"));
  if (p == "even") return analytic::Parity::even;
  if (p == "odd") return analytic::Parity::odd;
  throw ParseError("parity must be \"even\" or \"odd\"");
}

int cmd_analytic(const RunConfig& rc) {
  const json cfg = config_json(rc);
  const std::string family = cfg.value("family", std::string("amplitude_squared"));
  const cdouble lambda = cfg.contains("lambda") ? io::complex_from_json(cfg["lambda"], "lambda") : cdouble(1.0);
  const cdouble beta = cfg.contains("beta") ? io::complex_from_json(cfg["beta"], "beta") : cdouble{};
  const fs::path out(rc.out);
  json report;
  fock::FockVector state;
  if (family == "quadrature") {
    const auto p = analytic::QuadratureParams::make(lambda, beta);
    const std::size_t dim = cfg.value("dim", analytic::quad_dim_for_tail(p));
    state = analytic::quad_state(p, dim).fock();
    const auto d = analytic::quad_dispersions(p);
    const double f[] = {0.0, 1.0};
    const auto u = uncertainty::uncertainty_report(state, std::span<const double>(f));
    report = json{{"family", family},
                  {"lambda", io::complex_to_json(lambda)},
                  {"beta", io::complex_to_json(beta)},
                  {"dim", dim},
                  {"norm_sq_closed_form", analytic::quad_norm_sq(p)},
                  {"var_x", d.var_x},
                  {"var_p", d.var_p},
                  {"defect", d.defect},
                  {"min_no_quad_variance", d.min_no_quad_variance},
                  {"numeric", io::uncertainty_to_json(u)},
                  {"mean_a", io::complex_to_json(analytic::quad_moment(p, 0, 1))},
                  {"mean_n", analytic::quad_moment(p, 1, 1).real()}};
  } else if (family == "amplitude_squared") {
    const int branch = cfg.value("branch", 1);
    const auto p = analytic::AmpSquaredParams::make(lambda, beta, branch);
    const auto parity = parity_from(cfg);
    const std::size_t dim = cfg.value("dim", analytic::amp2_dim_for_tail(p, parity, 1e-18));
    const auto fb = analytic::amp2_fb_solution_detail(p, parity, dim);
    state = fb.state.fock().normalized();
    const double f[] = {0.0, 0.0, 1.0};
    const auto u = uncertainty::uncertainty_report(state, std::span<const double>(f));
    std::optional<analytic::MeanPhotonReport> n;
    if (parity == analytic::Parity::even) n = analytic::amp2_mean_photon_even(p);
    report = io::amp2_report(p, parity, u, n);
    report["dim"] = dim;
    report["working_digits"] = fb.digits;
    report["norm_inv_sq"] = analytic::amp2_norm_inv_sq(p, parity, precision_of(rc));
    report["precision"] = rc.precision;
  } else {
    throw ParseError("family must be \"quadrature\" or \"amplitude_squared\"");
  }
  write_json(out / "state.json", io::fock_to_json(state));
  write_json(out / "report.json", report);
  std::cout << io::dump(report);
  return 0;
}

struct Panel {
  std::string label;
  json problem;
  bargmann::EntireState state;
};

std::vector<Panel> preset_panels(const std::string& name) {
  const std::vector<double> sweep = {0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0};
  std::vector<Panel> panels;
  for (double l : sweep) {
    Panel p;
    if (name == "fig1" || name == "fig3") {
      io::ProblemSpec spec;
      if (name == "fig1") {
        spec.model = "poly_f";
        spec.coeffs = {0.0, 1.0, 0.0, 1.0};
        spec.seeds = {1.0, 0.0, 1.0};
      } else {
        spec.model = "deformed_g";
        spec.coeffs = {0.0, 1.0};
        spec.beta = 1.0;
        spec.seeds = {0.0, 1.0};
      }
      spec.lambda = l;
      spec.n_taylor = 400;
      spec.validate();
      p.label = "lambda=" + io::format_double(l);
      p.problem = io::problem_to_json(spec);
      p.state = solver::solve_series(spec.ode(), spec.init(), spec.n_taylor);
    } else if (name == "fig2") {
      const cdouble lam(l, 1.0);
      const auto ap = analytic::AmpSquaredParams::make(lam, 5.0);
      const std::size_t dim = std::max<std::size_t>(160, analytic::amp2_dim_for_tail(ap, analytic::Parity::even, 1e-16));
      p.label = "lambda=" + io::format_double(l) + "+1i";
      p.problem = json{{"family", "amplitude_squared"},
                       {"parity", "even"},
                       {"lambda", io::complex_to_json(lam)},
                       {"beta", io::complex_to_json(5.0)},
                       {"dim", dim}};
      p.state = analytic::amp2_fb_solution(ap, analytic::Parity::even, dim);
    } else {
      throw ParseError("unknown preset \"" + name + "\" (expected fig1, fig2 or fig3)");
    }
    panels.push_back(std::move(p));
  }
  return panels;
}

void emit_qgrid(const bargmann::EntireState& psi, const bargmann::GridSpec& grid, bool normalized,
                const fs::path& dir, const std::string& stem, const json& problem) {
  const auto q = bargmann::q_grid(psi, grid, normalized);
  std::ostringstream csv;
  io::write_qgrid_csv(q, csv);
  io::write_text_file(dir / (stem + ".csv"), csv.str());
  write_json(dir / (stem + ".json"), io::qgrid_metadata(q, stem + ".csv", problem));
}

int cmd_qgrid(const RunConfig& rc) {
  const fs::path out(rc.out);
  if (!rc.preset.empty()) {
    bargmann::GridSpec grid;
    if (!rc.config.empty()) {
      const json cfg = config_json(rc);
      if (cfg.contains("grid")) grid = io::grid_from_json(cfg["grid"]);
    }
    const auto panels = preset_panels(rc.preset);
    json index{{"preset", rc.preset}, {"grid", io::grid_to_json(grid)}, {"normalized", rc.normalized}};
    json list = json::array();
    for (std::size_t k = 0; k < panels.size(); ++k) {
      const std::string stem = "panel_" + std::string(1, static_cast<char>('a' + k));
      emit_qgrid(panels[k].state, grid, rc.normalized, out, stem, panels[k].problem);
      list.push_back(json{{"panel", stem}, {"title", panels[k].label}, {"csv", stem + ".csv"}, {"meta", stem + ".json"}});
    }
    index["panels"] = std::move(list);
    write_json(out / "preset.json", index);
    std::cout << io::dump(json{{"preset", rc.preset}, {"panels", panels.size()}, {"index", (out / "preset.json").string()}});
    return 0;
  }
  const json cfg = config_json(rc);
  bargmann::GridSpec grid;
  if (cfg.contains("grid")) grid = io::grid_from_json(cfg["grid"]);
  bargmann::EntireState psi;
  json problem;
  if (cfg.contains("state")) {
    fs::path path = cfg["state"].get<std::string>();
    if (path.is_relative()) path = fs::path(rc.config).parent_path() / path;
    psi = bargmann::EntireState(io::fock_from_json(io::read_json_file(path)));
    problem = json{{"state", cfg["state"]}};
  } else {
    const auto spec = io::parse_problem(cfg);
    psi = solver::solve_series(spec.ode(), spec.init(), spec.n_taylor);
    problem = io::problem_to_json(spec);
  }
  emit_qgrid(psi, grid, rc.normalized, out, "qgrid", problem);
  std::cout << io::dump(json{{"csv", (out / "qgrid.csv").string()}, {"meta", (out / "qgrid.json").string()}});
  return 0;
}

int cmd_roots(const RunConfig& rc) {
  const json cfg = config_json(rc);
  if (!cfg.contains("coeffs")) throw ParseError("roots: \"coeffs\" is required");
  const auto coeffs = cfg["coeffs"].get<std::vector<double>>();
  cdouble gamma{};
  if (cfg.contains("gamma"))
    gamma = io::complex_from_json(cfg["gamma"], "gamma");
  else if (cfg.contains("beta"))
    gamma = io::complex_from_json(cfg["beta"], "beta") / 2.0;
  const auto roots = models::find_roots(coeffs, gamma);
  const auto sep = models::separability_check(coeffs, gamma);
  const json report = io::roots_report(roots, sep);
  write_json(fs::path(rc.out) / "roots.json", report);
  std::cout << io::dump(report);
  return 0;
}

int cmd_verify(const RunConfig& rc) {
  verify::VerifyOptions opt;
  std::vector<std::string> only;
  if (!rc.config.empty()) {
    const json cfg = config_json(rc);
    if (cfg.contains("only")) only = cfg["only"].get<std::vector<std::string>>();
    if (cfg.value("fault", std::string()) == "nic_sign") opt.fault_sign = -1.0;
    if (cfg.contains("seed")) opt.seed = cfg["seed"].get<std::uint64_t>();
  }
  for (const auto& id : only) {
    bool known = false;
    for (const auto& e : verify::battery()) known = known || e.id == id;
    if (!known) throw ParseError("verify: unknown criterion \"" + id + "\"");
  }
  verify::Report report;
  for (const auto& e : verify::battery()) {
    if (!only.empty() && std::find(only.begin(), only.end(), e.id) == only.end()) continue;
    report.criteria.push_back(verify::run_criterion(e, opt));
    std::cout << verify::summary_line(report.criteria.back()) << std::endl;
  }
  write_json(fs::path(rc.out) / "verify.json", verify::report_to_json(report, rc.timing));
  return report.passed() ? 0 : 1;
}

int report_error(const std::string& type, const std::string& message, int code, json extra = json::object()) {
  json e{{"type", type}, {"message", message}, {"exit_code", code}};
  for (auto it = extra.begin(); it != extra.end(); ++it) e[it.key()] = it.value();
  std::cerr << json{{"error", e}}.dump() << std::endl;
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"squeezelab: generalized squeezed states in the Fock-Bargmann representation"};
  app.require_subcommand(1);
  RunConfig rc;
  const auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* c = sub->add_option("--config", rc.config, "JSON configuration file");
    if (config_required) c->required();
    sub->add_option("--out", rc.out, "output directory")->capture_default_str();
    sub->add_option("--precision", rc.precision, "double or extended")
        ->check(CLI::IsMember({"double", "extended"}))
        ->capture_default_str();
    sub->add_flag("--normalized", rc.normalized, "normalize states and Q-functions");
  };
  auto* solve = app.add_subcommand("solve", "solve a poly_f or deformed_g problem");
  add_common(solve, true);
  auto* an = app.add_subcommand("analytic", "closed-form quadrature and amplitude-squared states");
  add_common(an, true);
  auto* qg = app.add_subcommand("qgrid", "Q-function on a rectangular grid");
  add_common(qg, false);
  qg->add_option("--preset", rc.preset, "fig1, fig2 or fig3")->check(CLI::IsMember({"fig1", "fig2", "fig3"}));
  auto* roots = app.add_subcommand("roots", "roots of f(z) = gamma and separability");
  add_common(roots, true);
  auto* ver = app.add_subcommand("verify", "run the acceptance battery");
  add_common(ver, false);
  ver->add_flag("--timing", rc.timing, "include wall-clock timings in verify.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc_code = app.exit(e);
    return rc_code == 0 ? 0 : 2;
  }
  rc.command = app.get_subcommands().front()->get_name();
  if (rc.command == "qgrid" && rc.preset.empty() && rc.config.empty())
    return report_error("ParseError", "qgrid: --config or --preset is required", 2);

  try {
    if (rc.command == "solve") return cmd_solve(rc);
    if (rc.command == "analytic") return cmd_analytic(rc);
    if (rc.command == "qgrid") return cmd_qgrid(rc);
    if (rc.command == "roots") return cmd_roots(rc);
    return cmd_verify(rc);
  } catch (const ParseError& e) {
    return report_error("ParseError", e.what(), 2);
  } catch (const nlohmann::json::exception& e) {
    return report_error("ParseError", e.what(), 2);
  } catch (const SolverError& e) {
    json extra{{"r_star", e.r_star()}};
    if (e.ray_index()) extra["ray_index"] = *e.ray_index();
    return report_error("SolverError", e.what(), 4, extra);
  } catch (const RecurrenceBreakdown& e) {
    return report_error("RecurrenceBreakdown", e.what(), 4,
                        json{{"kind", e.kind() == RecurrenceBreakdown::Kind::inconsistent ? "inconsistent" : "underdetermined"},
                             {"index", e.index()},
                             {"free_dimension", e.free_dimension()}});
  } catch (const ConvergenceError& e) {
    return report_error("ConvergenceError", e.what(), 4, json{{"terms", e.terms()}});
  } catch (const DomainError& e) {
    return report_error("DomainError", e.what(), 3);
  } catch (const IoError& e) {
    return report_error("IoError", e.what(), 5);
  } catch (const std::exception& e) {
    return report_error("Error", e.what(), 4);
  }
}
