#include "squeezelab/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "squeezelab/error.hpp"

namespace squeezelab::io {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

json complex_to_json(cdouble z) { return json::array({z.real(), z.imag()}); }

cdouble complex_from_json(const json& j, const std::string& what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ParseError(what + ": expected a number or [re, im]");
}

json fock_to_json(const fock::FockVector& v) {
  json amps = json::array();
  for (const auto& a : v.amps()) amps.push_back(complex_to_json(a));
  return json{{"dim", v.dim()}, {"amps", std::move(amps)}};
}

fock::FockVector fock_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("amps") || !j["amps"].is_array())
    throw ParseError("Fock vector: expected {\"dim\", \"amps\"}");
  const auto dim = j["dim"].get<std::size_t>();
  if (j["amps"].size() != dim) throw ParseError("Fock vector: dim does not match the amplitude count");
  std::vector<cdouble> amps;
  amps.reserve(dim);
  for (const auto& a : j["amps"]) amps.push_back(complex_from_json(a, "amplitude"));
  return fock::FockVector(std::move(amps));
}

json grid_to_json(const bargmann::GridSpec& g) {
  return json{{"x_min", g.x_min}, {"x_max", g.x_max}, {"y_min", g.y_min},
              {"y_max", g.y_max}, {"nx", g.nx},       {"ny", g.ny}};
}

bargmann::GridSpec grid_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("grid: expected an object");
  bargmann::GridSpec g;
  g.x_min = j.value("x_min", g.x_min);
  g.x_max = j.value("x_max", g.x_max);
  g.y_min = j.value("y_min", g.y_min);
  g.y_max = j.value("y_max", g.y_max);
  g.nx = j.value("nx", g.nx);
  g.ny = j.value("ny", g.ny);
  try {
    g.validate();
  } catch (const DomainError& e) {
    throw ParseError(std::string("grid: ") + e.what());
  }
  return g;
}

void ProblemSpec::validate() const {
  if (model != "poly_f" && model != "deformed_g")
    throw ParseError("model must be \"poly_f\" or \"deformed_g\", got \"" + model + "\"");
  if (model == "poly_f" && coeffs.empty()) throw ParseError("poly_f: \"coeffs\" is required");
  if (model == "deformed_g" && coeffs.empty() && g_values.empty())
    throw ParseError("deformed_g: \"coeffs\" or \"g_values\" is required");
  if (model == "poly_f")
    poly_f().validate();
  else
    deformed_g().validate();
  const std::size_t K = ode().order();
  if (seeds.size() != K)
    throw ParseError("seeds: the equation has order " + std::to_string(K) + " and needs " + std::to_string(K) +
                     " seeds, got " + std::to_string(seeds.size()));
  if (field.n_phi < 4) throw ParseError("field: n_phi must be >= 4");
  if (field.n_r < 2) throw ParseError("field: n_r must be >= 2");
  if (!(field.r_max > 0.0)) throw ParseError("field: r_max must be positive");
  if (!(field.ray.tol > 0.0)) throw ParseError("field: tol must be positive");
  grid.validate();
}

models::PolyFSpec ProblemSpec::poly_f() const {
  models::PolyFSpec s;
  s.coeffs = coeffs;
  s.lambda = lambda;
  s.beta = beta;
  return s;
}

models::DeformedGSpec ProblemSpec::deformed_g() const {
  if (!g_values.empty()) {
    models::DeformedGSpec s;
    s.g_values = g_values;
    s.lambda = lambda;
    s.beta = beta;
    return s;
  }
  return models::DeformedGSpec::from_polynomial(coeffs, lambda, beta);
}

solver::RayOde ProblemSpec::ode() const {
  return model == "poly_f" ? models::build_poly_f_ode(poly_f()) : models::build_deformed_ode(deformed_g());
}

namespace {

std::vector<double> real_array(const json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& x : j) {
    if (!x.is_number()) throw ParseError(what + ": expected an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

ProblemSpec parse_problem(const json& j) {
  if (!j.is_object()) throw ParseError("problem spec: expected a JSON object");
  ProblemSpec p;
  try {
    p.model = j.value("model", p.model);
    if (j.contains("coeffs")) p.coeffs = real_array(j["coeffs"], "coeffs");
    if (j.contains("g_values")) p.g_values = real_array(j["g_values"], "g_values");
    if (j.contains("lambda")) p.lambda = complex_from_json(j["lambda"], "lambda");
    if (j.contains("beta")) p.beta = complex_from_json(j["beta"], "beta");
    if (j.contains("seeds")) {
      if (!j["seeds"].is_array()) throw ParseError("seeds: expected an array");
      for (const auto& s : j["seeds"]) p.seeds.push_back(complex_from_json(s, "seed"));
    }
    if (j.contains("grid")) p.grid = grid_from_json(j["grid"]);
    if (j.contains("field")) {
      const auto& f = j["field"];
      p.field.n_phi = f.value("n_phi", p.field.n_phi);
      p.field.n_r = f.value("n_r", p.field.n_r);
      p.field.r_max = f.value("r_max", p.field.r_max);
      p.field.ray.tol = f.value("tol", p.field.ray.tol);
    }
    p.n_taylor = j.value("n_taylor", p.n_taylor);
    p.label = j.value("label", p.label);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("problem spec: ") + e.what());
  }
  p.validate();
  return p;
}

ProblemSpec load_problem(const std::filesystem::path& path) { return parse_problem(read_json_file(path)); }

json problem_to_json(const ProblemSpec& p) {
  json seeds = json::array();
  for (const auto& s : p.seeds) seeds.push_back(complex_to_json(s));
  json j{{"model", p.model}};
  if (!p.label.empty()) j["label"] = p.label;
  j["coeffs"] = p.coeffs;
  if (!p.g_values.empty()) j["g_values"] = p.g_values;
  j["lambda"] = complex_to_json(p.lambda);
  j["beta"] = complex_to_json(p.beta);
  j["seeds"] = std::move(seeds);
  j["grid"] = grid_to_json(p.grid);
  j["field"] = json{{"n_phi", p.field.n_phi}, {"n_r", p.field.n_r}, {"r_max", p.field.r_max}, {"tol", p.field.ray.tol}};
  j["n_taylor"] = p.n_taylor;
  return j;
}

void write_qgrid_csv(const bargmann::QGrid& q, std::ostream& out) {
  out << "re,im,q\n";
  for (std::size_t j = 0; j < q.grid.ny; ++j) {
    for (std::size_t i = 0; i < q.grid.nx; ++i) {
      out << format_double(q.grid.x(i)) << ',' << format_double(q.grid.y(j)) << ',' << format_double(q.at(i, j))
          << '\n';
    }
  }
}

json qgrid_metadata(const bargmann::QGrid& q, const std::string& csv_file, const json& problem) {
  double q_max = 0.0;
  for (double v : q.values) q_max = std::max(q_max, v);
  return json{{"csv", csv_file},
              {"columns", json::array({"re", "im", "q"})},
              {"order", "row-major, re fastest"},
              {"grid", grid_to_json(q.grid)},
              {"normalized", q.normalized},
              {"q_max", q_max},
              {"problem", problem}};
}

json roots_report(const models::RootSet& roots, const models::SeparabilityResult& sep) {
  json rs = json::array();
  for (std::size_t i = 0; i < roots.roots.size(); ++i)
    rs.push_back(json::array({roots.roots[i].real(), roots.roots[i].imag(), roots.multiplicity[i]}));
  return json{{"gamma", complex_to_json(roots.gamma)},
              {"roots", std::move(rs)},
              {"separable", sep.separable},
              {"discriminant", complex_to_json(sep.discriminant)},
              {"resultant", sep.resultant_text}};
}

json uncertainty_to_json(const uncertainty::UncertaintyReport& r) {
  json j{{"delta_F", r.delta_F}, {"delta_G", r.delta_G},     {"var_F", r.var_F},
         {"var_G", r.var_G},     {"commutator", r.commutator}, {"defect", r.defect}};
  if (r.has_normal_order) {
    j["no_var_F"] = r.no_var_F;
    j["no_var_G"] = r.no_var_G;
  }
  j["leakage"] = r.leakage;
  j["leakage_warning"] = r.leakage_warning;
  return j;
}

json analyticity_to_json(const solver::AnalyticityReport& r) {
  return json{{"n_modes", r.n_modes},
              {"max_positive", r.max_positive},
              {"max_profile", r.max_profile},
              {"origin_spread", r.origin_spread},
              {"positive_residual", r.positive_residual},
              {"profile_residual", r.profile_residual}};
}

json amp2_report(const analytic::AmpSquaredParams& p, analytic::Parity parity,
                 const uncertainty::UncertaintyReport& u, std::optional<analytic::MeanPhotonReport> n) {
  json j{{"lambda", complex_to_json(p.lambda)},
         {"beta", complex_to_json(p.beta)},
         {"parity", analytic::parity_name(parity)},
         {"var_F", u.var_F},
         {"var_G", u.var_G},
         {"commutator", u.commutator},
         {"defect", u.defect}};
  if (n) {
    j["mean_n"] = n->value;
    j["matched_variant"] = n->matched;
    j["mean_n_candidates"] = json{{"4|c|^2", n->printed}, {"4|v|^2", n->variant}, {"numeric", n->numeric}};
    j["mean_n_source"] = n->numeric_source;
  } else {
    j["mean_n"] = nullptr;
    j["matched_variant"] = nullptr;
  }
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace squeezelab::io
