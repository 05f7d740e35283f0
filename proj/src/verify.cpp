#include "squeezelab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/QR>

#include "squeezelab/analytic.hpp"
#include "squeezelab/models.hpp"
#include "squeezelab/numerics.hpp"
#include "squeezelab/ordering.hpp"
#include "squeezelab/uncertainty.hpp"

namespace squeezelab::verify {

using analytic::AmpSquaredParams;
using analytic::Parity;
using analytic::QuadratureParams;

Check Check::at_most(std::string name, double measured, double bound, std::string note) {
  Check c;
  c.name = std::move(name);
  c.measured = measured;
  c.bound = bound;
  c.relation = Relation::at_most;
  c.passed = std::isfinite(measured) && measured <= bound;
  c.note = std::move(note);
  return c;
}

Check Check::greater_than(std::string name, double measured, double bound, std::string note) {
  Check c = at_most(std::move(name), measured, bound, std::move(note));
  c.relation = Relation::greater_than;
  c.passed = std::isfinite(measured) && measured > bound;
  return c;
}

Check Check::flag(std::string name, bool ok, std::string note) {
  return at_most(std::move(name), ok ? 0.0 : 1.0, 0.0, std::move(note));
}

bool Criterion::passed() const {
  if (!error.empty() || checks.empty()) return false;
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

const Check* Criterion::worst() const {
  const Check* out = nullptr;
  double score = -1.0;
  for (const auto& c : checks) {
    double s;
    if (c.relation == Relation::at_most)
      s = c.bound > 0.0 ? c.measured / c.bound : (c.measured > 0.0 ? 2.0 : 0.0);
    else
      s = c.measured > 0.0 && c.bound > 0.0 ? c.bound / c.measured : (c.passed ? 0.0 : 2.0);
    if (!c.passed) s += 1e300;
    if (s > score) {
      score = s;
      out = &c;
    }
  }
  return out;
}

bool Report::passed() const {
  if (criteria.empty()) return false;
  for (const auto& c : criteria)
    if (!c.passed()) return false;
  return true;
}

namespace {

const std::vector<double> kSweep = {0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0};

std::string fmt(double x) { return io::format_double(x); }

std::string cfmt(cdouble z) {
  std::ostringstream o;
  o << fmt(z.real());
  if (z.imag() != 0.0) o << (z.imag() < 0 ? "-" : "+") << fmt(std::abs(z.imag())) << "i";
  return o.str();
}

std::string tag(cdouble lambda, cdouble beta) { return "lambda=" + cfmt(lambda) + " beta=" + cfmt(beta); }

solver::RayField sample_field(const std::function<cdouble(cdouble)>& fn, std::size_t n_phi, std::size_t n_r,
                              double r_max) {
  solver::RayField f;
  f.values.resize(static_cast<Eigen::Index>(n_phi), static_cast<Eigen::Index>(n_r));
  for (std::size_t j = 0; j < n_phi; ++j) f.phis.push_back(2.0 * std::numbers::pi * static_cast<double>(j) / n_phi);
  for (std::size_t i = 0; i < n_r; ++i) f.rs.push_back(r_max * static_cast<double>(i) / (n_r - 1));
  for (std::size_t j = 0; j < n_phi; ++j)
    for (std::size_t i = 0; i < n_r; ++i)
      f.values(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = fn(std::polar(f.rs[i], -f.phis[j]));
  return f;
}

double relative_gap(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// min over global phase of |u - e^{i t} v| for same-length vectors.
double phase_aligned_distance(const fock::FockVector& u, const fock::FockVector& v) {
  const cdouble ov = fock::dot(v, u);
  const cdouble ph = std::abs(ov) > 0.0 ? ov / std::abs(ov) : cdouble(1.0);
  double m = 0.0;
  const std::size_t n = std::max(u.dim(), v.dim());
  for (std::size_t k = 0; k < n; ++k) {
    const cdouble a = k < u.dim() ? u[k] : cdouble{};
    const cdouble b = k < v.dim() ? v[k] : cdouble{};
    m = std::max(m, std::abs(a - ph * b));
  }
  return m;
}

std::vector<cdouble> sample_points(std::size_t n, double r_lo, double r_hi) {
  std::vector<cdouble> z;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t k = 0; k < n; ++k) {
    const double r = r_lo + (r_hi - r_lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    z.push_back(std::polar(r, golden * static_cast<double>(k)));
  }
  return z;
}

}  // namespace

Criterion quadrature_oracle(const VerifyOptions&) {
  Criterion c;
  c.id = "quadrature_oracle";
  c.title = "ray and series solvers reproduce exp(w z^2/2 + u z); normalization closed form";
  const auto t0 = std::chrono::steady_clock::now();
  for (double lam : kSweep) {
    for (cdouble beta : {cdouble(0.0), cdouble(1.0, 1.0)}) {
      const auto p = QuadratureParams::make(lam, beta);
      const models::PolyFSpec spec{{0.0, 1.0}, lam, beta};
      const auto ode = models::build_poly_f_ode(spec);
      const solver::InitialData init{{1.0}};
      solver::FieldOptions fo;
      fo.r_max = 3.0;
      const auto field = solver::assemble_field(ode, init, fo);
      const auto exact = [&](cdouble z) { return analytic::quad_value(p, z); };
      c.add(Check::at_most("ray deviation " + tag(lam, beta), solver::field_deviation(field, exact), 1e-7));
      const std::size_t n = std::max<std::size_t>(400, analytic::quad_dim_for_tail(p, 1e-24));
      const auto series = solver::solve_series(ode, init, n);
      const auto ref = sample_field(exact, 32, 61, 3.0);
      c.add(Check::at_most("series deviation " + tag(lam, beta),
                           solver::field_deviation(ref, [&](cdouble z) { return series.evaluate(z); }), 1e-7));
      const double n_num = bargmann::normalization(series);
      c.add(Check::at_most("normalization " + tag(lam, beta), relative_gap(n_num, std::sqrt(analytic::quad_norm_sq(p))),
                           1e-8));
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  Check rt = Check::at_most("runtime seconds", secs, 10.0);
  rt.timing = true;
  c.add(rt);
  return c;
}

namespace {

struct DispersionSample {
  cdouble lambda;
  double var_x, var_p, defect;
};

std::vector<cdouble> random_lambdas(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(0.2, 10.0), arg(-1.3, 1.3);
  std::vector<cdouble> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = re(rng), a = arg(rng);
    out.emplace_back(r, r * std::tan(a));
  }
  return out;
}

DispersionSample dispersion_at(cdouble lambda, std::size_t dim) {
  const models::PolyFSpec spec{{0.0, 1.0}, lambda, 0.0};
  const auto psi = solver::solve_series(models::build_poly_f_ode(spec), {{1.0}}, dim - 1);
  const double f[] = {0.0, 1.0};
  const auto u = uncertainty::uncertainty_report(psi.fock(), std::span<const double>(f));
  return {lambda, u.var_F, u.var_G, u.var_F * u.var_G - 1.0};
}

}  // namespace

Criterion dispersion_identities(const VerifyOptions& opt) {
  Criterion c;
  c.id = "dispersion_identities";
  c.title = "(dx)^2 = |lambda|^2/Re lambda, (dp)^2 = 1/Re lambda, defect = tan^2(arg lambda) at dim=100";
  io::json adaptive = io::json::array();
  for (cdouble lam : random_lambdas(opt.seed, 30)) {
    const auto d = analytic::quad_dispersions(QuadratureParams::make(lam, 0.0));
    const auto s = dispersion_at(lam, 100);
    const std::string t = "lambda=" + cfmt(lam);
    const double missing = 1.0 - analytic::quad_state(QuadratureParams::make(lam, 0.0), 100).fock().norm_squared();
    const std::string note = "norm beyond dim=100: " + fmt(missing);
    c.add(Check::at_most("var_x " + t, std::abs(s.var_x - d.var_x), 1e-5, note));
    c.add(Check::at_most("var_p " + t, std::abs(s.var_p - d.var_p), 1e-5, note));
    c.add(Check::at_most("defect " + t, std::abs(s.defect - d.defect), 1e-5, note));
    const std::size_t dim = analytic::quad_dim_for_tail(QuadratureParams::make(lam, 0.0), 1e-20);
    const auto a = dispersion_at(lam, dim);
    adaptive.push_back(io::json{{"lambda", io::complex_to_json(lam)},
                                {"dim", dim},
                                {"err_var_x", std::abs(a.var_x - d.var_x)},
                                {"err_var_p", std::abs(a.var_p - d.var_p)},
                                {"err_defect", std::abs(a.defect - d.defect)}});
  }
  c.info["adaptive_dim"] = std::move(adaptive);
  return c;
}

Criterion minimal_quadrature_variance(const VerifyOptions&) {
  Criterion c;
  c.id = "minimal_quadrature_variance";
  c.title = "min over theta of <:(dx_theta)^2:> = -2|lambda-1|/(|lambda+1|+|lambda-1|)";
  std::vector<cdouble> lambdas;
  for (double l : kSweep) lambdas.emplace_back(l, 0.0);
  for (double l : kSweep) lambdas.emplace_back(l, 1.0);
  for (cdouble lam : lambdas) {
    for (cdouble beta : {cdouble(0.0), cdouble(1.0, 1.0)}) {
      const auto p = QuadratureParams::make(lam, beta);
      const std::size_t dim = analytic::quad_dim_for_tail(p, 1e-24);
      const auto psi = solver::solve_series(models::build_poly_f_ode({{0.0, 1.0}, lam, beta}), {{1.0}}, dim - 1);
      const double num = analytic::min_normally_ordered_quadrature_variance(psi);
      const double closed = analytic::quad_dispersions(p).min_no_quad_variance;
      c.add(Check::at_most("min variance " + tag(lam, beta), std::abs(num - closed), 1e-6));
      if (lam == cdouble(1.0)) {
        c.add(Check::flag("closed form exactly 0 " + tag(lam, beta), closed == 0.0));
        c.add(Check::at_most("numeric at lambda=1 " + tag(lam, beta), std::abs(num), 1e-12));
      }
    }
  }
  return c;
}

Criterion amplitude_squared(const VerifyOptions&) {
  Criterion c;
  c.id = "amplitude_squared";
  c.title = "branch invariance, Fock-Bargmann vs squeezed form, norms, eigen-residual, defect";
  const cdouble beta = 1.0;
  const std::vector<cdouble> real_l = {1.5, 3.0, 7.0};
  const std::vector<cdouble> complex_l = {{2.0, 1.0}, {5.0, 1.0}};
  std::vector<cdouble> all = real_l;
  all.insert(all.end(), complex_l.begin(), complex_l.end());
  const auto zs = sample_points(20, 0.2, 2.5);
  for (cdouble lam : all) {
    const auto pp = AmpSquaredParams::make(lam, beta, +1);
    const auto pm = AmpSquaredParams::make(lam, beta, -1);
    const bool real = lam.imag() == 0.0;
    for (Parity par : {Parity::even, Parity::odd}) {
      const std::string t = tag(lam, beta) + " " + analytic::parity_name(par);
      double gap = 0.0, scale = 0.0;
      for (cdouble z : zs) {
        const cdouble a = analytic::amp2_fb_value(pp, par, z), b = analytic::amp2_fb_value(pm, par, z);
        gap = std::max(gap, std::abs(a - b));
        scale = std::max(scale, std::abs(a));
      }
      c.add(Check::at_most("branch invariance " + t, gap / scale, 1e-10));

      const auto sq = analytic::amp2_squeezed_form_detail(pp, par, 80);
      const auto fb80 = analytic::amp2_fb_solution(pp, par, 80);
      const double ov = std::abs(fock::dot(fb80.fock().normalized(), sq.state.fock().normalized()));
      c.add(Check::at_most("1 - overlap at dim=80 " + t, 1.0 - ov, 1e-7));
      c.add(Check::at_most("normalization " + t,
                           relative_gap(sq.presqueeze_norm_sq, analytic::amp2_norm_inv_sq(pp, par)), 1e-8));

      const std::size_t dim = analytic::amp2_dim_for_tail(pp, par, 1e-18);
      const auto psi = analytic::amp2_fb_solution(pp, par, dim);
      const models::PolyFSpec spec{{0.0, 0.0, 1.0}, lam, beta};
      c.add(Check::at_most("eigen-residual " + t, models::pencil_residual(spec, psi.fock()), 1e-6));
      const auto psi100 = analytic::amp2_fb_solution(pp, par, 100);
      c.add(Check::at_most("eigen-residual dim=100 " + t, models::pencil_residual(spec, psi100.fock()), 1e-6));

      const double f[] = {0.0, 0.0, 1.0};
      const auto u = uncertainty::uncertainty_report(psi.fock(), std::span<const double>(f));
      if (real)
        c.add(Check::at_most("defect " + t, std::abs(u.defect), 1e-5));
      else
        c.add(Check::greater_than("defect " + t, u.defect, 1e-5));
    }
  }
  return c;
}

Criterion mean_photon_number(const VerifyOptions&) {
  Criterion c;
  c.id = "mean_photon_number";
  c.title = "exactly one of the 4|c|^2 and 4|v|^2 forms of <n> matches the numerical value";
  std::string winner;
  bool consistent = true;
  io::json rows = io::json::array();
  for (cdouble lam : {cdouble(2.0), cdouble(3.0), cdouble(2.0, 1.0)}) {
    const auto p = AmpSquaredParams::make(lam, 5.0);
    const std::string t = tag(lam, 5.0);
    analytic::MeanPhotonReport r;
    try {
      r = analytic::amp2_mean_photon_even(p);
    } catch (const Error& e) {
      c.add(Check::flag("one variant matches " + t, false, e.what()));
      consistent = false;
      continue;
    }
    const bool exactly_one = r.printed_matches != r.variant_matches;
    c.add(Check::flag("exactly one variant matches " + t, exactly_one, "matched " + r.matched));
    c.add(Check::at_most("relative error of the matching form " + t,
                         std::abs(r.value - r.numeric) / std::abs(r.numeric), 1e-4));
    if (winner.empty()) winner = r.matched;
    if (r.matched != winner) consistent = false;
    rows.push_back(io::json{{"lambda", io::complex_to_json(lam)},
                            {"4|c|^2", r.printed},
                            {"4|v|^2", r.variant},
                            {"numeric", r.numeric},
                            {"matched", r.matched}});
  }
  c.add(Check::flag("same variant wins at every lambda", consistent && !winner.empty()));
  c.info["winner"] = winner;
  c.info["values"] = std::move(rows);
  return c;
}

Criterion cubic_model(const VerifyOptions&) {
  Criterion c;
  c.id = "cubic_model";
  c.title = "f(z) = z^3 + z: ray vs series, analyticity, lambda=1 coherent-state span";
  const std::vector<double> f = {0.0, 1.0, 0.0, 1.0};
  const solver::InitialData init{{1.0, 0.0, 1.0}};
  for (double lam : kSweep) {
    const models::PolyFSpec spec{f, lam, 0.0};
    const auto ode = models::build_poly_f_ode(spec);
    solver::FieldOptions fo;
    fo.r_max = 3.0;
    const auto field = solver::assemble_field(ode, init, fo);
    const auto series = solver::solve_series(ode, init, 400);
    const std::string t = tag(lam, 0.0);
    c.add(Check::at_most("ray vs series " + t,
                         solver::field_deviation(field, [&](cdouble z) { return series.evaluate(z); }), 1e-6));
    const auto an = solver::analyticity_check(field);
    c.add(Check::at_most("analyticity positive modes " + t, an.max_positive, 1e-6));
    c.add(Check::at_most("analyticity radial profile " + t, an.max_profile, 1e-6));
    if (lam == 1.0) {
      const std::size_t dim = 60;
      const auto roots = models::find_roots(f, spec.gamma());
      const auto basis = models::lambda_one_basis(roots, dim);
      fock::Matrix B(dim, basis.size());
      for (std::size_t k = 0; k < basis.size(); ++k)
        for (std::size_t n = 0; n < dim; ++n) B(n, k) = basis[k][n];
      const fock::FockVector psi = series.fock().resized(dim).normalized();
      Eigen::VectorXcd v(dim);
      for (std::size_t n = 0; n < dim; ++n) v(n) = psi[n];
      const Eigen::MatrixXcd Bp = B;
      const Eigen::VectorXcd coef = Bp.colPivHouseholderQr().solve(v);
      const double res = (Bp * coef - v).norm();
      c.add(Check::at_most("projection residual onto coherent states at roots of z^3+z=gamma", res, 1e-6));
      c.info["lambda_one_roots"] = io::json::array();
      for (std::size_t i = 0; i < roots.roots.size(); ++i)
        c.info["lambda_one_roots"].push_back(
            io::json::array({roots.roots[i].real(), roots.roots[i].imag(), roots.multiplicity[i]}));
    }
  }
  return c;
}

Check deformed_recurrence_vs_ray(const VerifyOptions& opt) {
  const cdouble lam = 2.0, beta = 1.0;
  const auto spec = models::DeformedGSpec::from_polynomial(std::vector<double>{0.0, 1.0}, lam, beta);
  const cdouble free[] = {0.0, 1.0};
  const std::size_t n = 80;
  const auto ic = models::detail::initial_condition_recurrence(spec, free, n, opt.fault_sign);
  std::vector<cdouble> taylor(n + 1);
  double fact = 1.0;
  for (std::size_t k = 0; k <= n; ++k) {
    if (k > 0) fact *= static_cast<double>(k);
    taylor[k] = ic.derivatives[k] / fact;
  }
  const auto rec = bargmann::EntireState::from_taylor(taylor);
  const auto ode = models::build_deformed_ode(spec);
  solver::FieldOptions fo;
  fo.n_phi = 16;
  fo.n_r = 40;
  fo.r_max = 1.5;
  const auto field = solver::assemble_field(ode, {{0.0, 1.0}}, fo);
  return Check::at_most("recurrence vs ray " + tag(lam, beta),
                        solver::field_deviation(field, [&](cdouble z) { return rec.evaluate(z); }), 1e-7);
}

Criterion deformed_g_n(const VerifyOptions& opt) {
  Criterion c;
  c.id = "deformed_g_n";
  c.title = "g(n) = n: initial-condition constraints, lambda=1 closed form, solver agreement";
  const std::vector<double> gn = {0.0, 1.0};
  {
    const auto spec = models::DeformedGSpec::from_polynomial(gn, 2.0, 1.0);
    bool inconsistent = false;
    try {
      const cdouble bad[] = {1.0, 1.0};
      models::initial_condition_recurrence(spec, bad, 10);
    } catch (const RecurrenceBreakdown& e) {
      inconsistent = e.kind() == RecurrenceBreakdown::Kind::inconsistent && e.index() == 1;
    }
    c.add(Check::flag("beta!=0 rejects psi(0)!=0", inconsistent));
    const cdouble good[] = {0.0, 1.0};
    const auto ic = models::initial_condition_recurrence(spec, good, 10);
    c.add(Check::flag("beta!=0 leaves psi'(0) as the only free seed",
                      ic.free_indices == std::vector<std::size_t>{0, 1} && ic.derivatives[0] == cdouble{}));
  }
  {
    const auto spec = models::DeformedGSpec::from_polynomial(gn, 1.0, 0.0);
    std::size_t dim_found = 0;
    try {
      const cdouble one[] = {1.0};
      models::initial_condition_recurrence(spec, one, 10);
    } catch (const RecurrenceBreakdown& e) {
      if (e.kind() == RecurrenceBreakdown::Kind::underdetermined) dim_found = e.free_dimension();
    }
    c.add(Check::flag("beta=0 solution space is 2-dimensional", dim_found == 2,
                      "free dimension " + std::to_string(dim_found)));
    bool span01 = true;
    for (int b = 0; b < 2; ++b) {
      const cdouble seeds[] = {b == 0 ? 1.0 : 0.0, b == 1 ? 1.0 : 0.0};
      const auto ic = models::initial_condition_recurrence(spec, seeds, 20);
      for (std::size_t k = 2; k < ic.derivatives.size(); ++k) span01 = span01 && ic.derivatives[k] == cdouble{};
      const auto ser = solver::solve_series(models::build_deformed_ode(spec), {{seeds[0], seeds[1]}}, 20);
      for (std::size_t k = 2; k < ser.dim(); ++k) span01 = span01 && ser.fock()[k] == cdouble{};
    }
    c.add(Check::flag("beta=0, lambda=1 solutions span {|0>, |1>} exactly", span01));
  }
  for (cdouble beta : {cdouble(1.0), cdouble(2.0, 1.0)}) {
    const std::string t = tag(1.0, beta);
    const auto spec = models::DeformedGSpec::from_polynomial(gn, 1.0, beta);
    const auto closed = models::g_n_closed_form(beta, 50);
    c.add(Check::at_most("closed form unit norm " + t, std::abs(closed.fock().norm() - 1.0), 1e-10));
    c.add(Check::at_most("closed form eigen-residual dim=50 " + t, models::pencil_residual(spec, closed.fock()), 1e-8));
    const cdouble d1 = closed.taylor(1);
    const auto ode = models::build_deformed_ode(spec);
    const auto series = solver::solve_series(ode, {{0.0, d1}}, 49);
    c.add(Check::at_most("closed form vs series " + t, phase_aligned_distance(series.fock(), closed.fock()), 1e-7));
    solver::FieldOptions fo;
    fo.n_phi = 16;
    fo.n_r = 61;
    fo.r_max = 3.0;
    const auto field = solver::assemble_field(ode, {{0.0, d1}}, fo);
    c.add(Check::at_most("closed form vs ray " + t,
                         solver::field_deviation(field, [&](cdouble z) { return closed.evaluate(z); }), 1e-7));
  }
  c.add(deformed_recurrence_vs_ray(opt));
  return c;
}

Criterion ordering_layer(const VerifyOptions& opt) {
  Criterion c;
  c.id = "ordering_layer";
  c.title = "difference expansion of g(n), Stirling inverses, a/a^dag product identity, commutator sign";
  struct G {
    std::string name;
    std::function<double(std::size_t)> g;
    std::size_t K, dim;
  };
  const std::vector<G> gs = {{"n", [](std::size_t n) { return static_cast<double>(n); }, 1, 24},
                             {"n^2", [](std::size_t n) { return static_cast<double>(n * n); }, 2, 24},
                             {"2^n truncated at K=12", [](std::size_t n) { return std::ldexp(1.0, static_cast<int>(n)); }, 12, 13}};
  for (const auto& g : gs) {
    const auto t = ordering::ordered_number_function(g.g, g.K);
    const auto m = ordering::number_function_normal_form(t).to_matrix(g.dim);
    double err = 0.0;
    for (std::size_t i = 0; i < g.dim; ++i)
      for (std::size_t j = 0; j < g.dim; ++j)
        err = std::max(err, std::abs(m(i, j) - (i == j ? g.g(i) : 0.0)));
    c.add(Check::at_most("g(n) = " + g.name + " diagonal", err, 1e-10));
  }
  bool inverse = true;
  for (std::size_t m = 0; m <= 10; ++m) {
    for (std::size_t j = 0; j <= 10; ++j) {
      std::int64_t a = 0, b = 0;
      for (std::size_t k = 0; k <= 10; ++k) {
        a += ordering::stirling_second(m, k) * ordering::stirling_first_signed(k, j);
        b += ordering::stirling_first_signed(m, k) * ordering::stirling_second(k, j);
      }
      inverse = inverse && a == (m == j ? 1 : 0) && b == (m == j ? 1 : 0);
      if (j <= m) inverse = inverse && ordering::stirling_second(m, j) == ordering::stirling_second_explicit(m, j);
    }
  }
  c.add(Check::flag("Stirling transforms mutually inverse, m <= 10", inverse));

  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> nd;
  const std::size_t dim = 16, big = 24;
  const auto a = fock::annihilator(big), ad = fock::creator(big);
  double worst = 0.0;
  for (std::size_t dg = 0; dg <= 4; ++dg) {
    for (std::size_t df = 0; df <= 4; ++df) {
      std::vector<cdouble> g(dg + 1), f(df + 1);
      for (auto& x : g) x = {nd(rng), nd(rng)};
      for (auto& x : f) x = {nd(rng), nd(rng)};
      const auto lhs = ordering::normal_order_product(g, f).to_matrix(dim);
      const auto rhs = fock::poly_of_op(g, a) * fock::poly_of_op(f, ad);
      double err = 0.0, scale = 0.0;
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
          err = std::max(err, std::abs(lhs(i, j) - rhs(i, j)));
          scale = std::max(scale, std::abs(rhs(i, j)));
        }
      worst = std::max(worst, err / std::max(scale, 1.0));
    }
  }
  c.add(Check::at_most("g(a) f(a^dag) normal form vs matrix product, degrees <= 4", worst, 1e-10));

  double min_comm = std::numeric_limits<double>::infinity();
  std::uniform_int_distribution<int> deg(1, 4);
  for (int s = 0; s < 200; ++s) {
    std::vector<cdouble> f(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& x : f) x = nd(rng);
    fock::FockVector psi(40);
    for (std::size_t n = 0; n < 16; ++n) psi[n] = cdouble(nd(rng), nd(rng)) * std::exp(-0.15 * n);
    psi = psi.normalized();
    const double comm = fock::apply_creator_poly(f, psi).norm_squared() - fock::apply_annihilator_poly(f, psi).norm_squared();
    min_comm = std::min(min_comm, comm);
  }
  c.add(Check::greater_than("min <[f(a), f(a^dag)]> over 200 random states", min_comm, -1e-10));
  return c;
}

Criterion mehler_identity(const VerifyOptions&) {
  Criterion c;
  c.id = "mehler_identity";
  c.title = "Hermite generating sum vs closed form for |z| <= 0.9";
  const std::vector<std::pair<cdouble, cdouble>> xy = {
      {0.3, -0.7}, {1.2, 0.4}, {{0.5, 0.2}, {-0.3, 0.6}}, {{-1.0, 0.5}, {0.8, -0.1}}, {0.8, 0.6}};
  double worst = 0.0;
  for (const auto& [x, y] : xy)
    for (double r : {0.1, 0.3, 0.5, 0.7, 0.9})
      for (int k = 0; k < 8; ++k) {
        const cdouble z = std::polar(r, std::numbers::pi * k / 4.0);
        const cdouble s = numerics::mehler_sum(x, y, z), e = numerics::mehler_closed_form(x, y, z);
        worst = std::max(worst, std::abs(s - e) / std::abs(e));
      }
  c.add(Check::at_most("max relative error", worst, 1e-9));
  return c;
}

Criterion squeezing_implies_nonclassical(const VerifyOptions&) {
  Criterion c;
  c.id = "squeezing_implies_nonclassical";
  c.title = "(dF)^2 or (dG)^2 below the commutator bound implies a negative normally ordered variance";
  std::size_t squeezed = 0, states = 0, skipped = 0;
  io::json rows = io::json::array();
  const auto examine = [&](const std::string& label, const fock::FockVector& psi, std::span<const double> f) {
    if (psi.normalized().tail_mass(0.1) > 1e-12) {
      ++skipped;
      return;
    }
    ++states;
    const auto u = uncertainty::uncertainty_report(psi, f);
    // States sitting on the bound are not counted as squeezed.
    const double margin = 1e-9 * std::max(1.0, u.commutator);
    const bool sq_F = u.var_F < u.commutator - margin, sq_G = u.var_G < u.commutator - margin;
    if (sq_F) c.add(Check::at_most("<:(dF)^2:> " + label, u.no_var_F, 0.0));
    if (sq_G) c.add(Check::at_most("<:(dG)^2:> " + label, u.no_var_G, 0.0));
    if (sq_F || sq_G) {
      ++squeezed;
      rows.push_back(io::json{{"state", label}, {"var_F", u.var_F}, {"var_G", u.var_G},
                              {"commutator", u.commutator}, {"no_var_F", u.no_var_F}, {"no_var_G", u.no_var_G}});
    }
  };
  const double f1[] = {0.0, 1.0};
  const double f2[] = {0.0, 0.0, 1.0};
  const double f3[] = {0.0, 1.0, 0.0, 1.0};
  for (double re : kSweep) {
    for (double im : {0.0, 1.0}) {
      const cdouble lam(re, im);
      if (lam == cdouble(1.0)) continue;
      for (cdouble beta : {cdouble(0.0), cdouble(1.0, 1.0)}) {
        const auto p = QuadratureParams::make(lam, beta);
        examine("quadrature " + tag(lam, beta), analytic::quad_state(p, analytic::quad_dim_for_tail(p)).fock(), f1);
      }
      const auto ode = models::build_poly_f_ode({{0.0, 1.0, 0.0, 1.0}, lam, 0.0});
      examine("cubic " + tag(lam, 0.0), solver::solve_series(ode, {{1.0, 0.0, 1.0}}, 400).fock(), f3);
    }
  }
  for (cdouble lam : {cdouble(1.5), cdouble(3.0), cdouble(7.0), cdouble(2.0, 1.0), cdouble(5.0, 1.0)}) {
    for (Parity par : {Parity::even, Parity::odd}) {
      const auto p = AmpSquaredParams::make(lam, 1.0);
      const std::size_t dim = analytic::amp2_dim_for_tail(p, par, 1e-18);
      examine("amplitude-squared " + tag(lam, 1.0) + " " + analytic::parity_name(par),
              analytic::amp2_fb_solution(p, par, dim).fock(), f2);
    }
  }
  c.add(Check::greater_than("generalized-squeezed states found", static_cast<double>(squeezed), 0.0));
  c.info["states_examined"] = states;
  c.info["skipped_not_normalizable"] = skipped;
  c.info["squeezed"] = std::move(rows);
  return c;
}

const std::vector<BatteryEntry>& battery() {
  static const std::vector<BatteryEntry> entries = {
      {"quadrature_oracle", quadrature_oracle},
      {"dispersion_identities", dispersion_identities},
      {"minimal_quadrature_variance", minimal_quadrature_variance},
      {"amplitude_squared", amplitude_squared},
      {"mean_photon_number", mean_photon_number},
      {"cubic_model", cubic_model},
      {"deformed_g_n", deformed_g_n},
      {"ordering_layer", ordering_layer},
      {"mehler_identity", mehler_identity},
      {"squeezing_implies_nonclassical", squeezing_implies_nonclassical},
  };
  return entries;
}

Criterion run_criterion(const BatteryEntry& e, const VerifyOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  Criterion c;
  try {
    c = e.run(opt);
  } catch (const std::exception& ex) {
    c.id = e.id;
    c.error = ex.what();
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return c;
}

Report run_battery(const VerifyOptions& opt, const std::vector<std::string>& only) {
  Report r;
  for (const auto& e : battery()) {
    if (!only.empty() && std::find(only.begin(), only.end(), e.id) == only.end()) continue;
    r.criteria.push_back(run_criterion(e, opt));
  }
  return r;
}

std::string summary_line(const Criterion& c) {
  std::ostringstream o;
  o << (c.passed() ? "PASS " : "FAIL ") << c.id;
  if (!c.error.empty()) {
    o << ": error: " << c.error;
  } else {
    std::size_t failed = 0;
    for (const auto& k : c.checks) failed += k.passed ? 0 : 1;
    o << ": " << c.checks.size() - failed << "/" << c.checks.size() << " checks";
    if (const Check* w = c.worst()) {
      o << (w->passed ? ", tightest " : ", worst ") << w->name << " = " << fmt(w->measured)
        << (w->relation == Relation::at_most ? " <= " : " > ") << fmt(w->bound);
    }
  }
  char secs[32];
  std::snprintf(secs, sizeof(secs), "%.2f", c.seconds);
  o << " (" << secs << " s)";
  return o.str();
}

io::json criterion_to_json(const Criterion& c, bool include_timing) {
  io::json checks = io::json::array();
  for (const auto& k : c.checks) {
    io::json j{{"name", k.name}, {"passed", k.passed}};
    if (!k.timing || include_timing) j["measured"] = k.measured;
    j["relation"] = k.relation == Relation::at_most ? "<=" : ">";
    j["bound"] = k.bound;
    if (!k.note.empty()) j["note"] = k.note;
    checks.push_back(std::move(j));
  }
  io::json j{{"id", c.id}, {"title", c.title}, {"passed", c.passed()}};
  if (include_timing) j["seconds"] = c.seconds;
  if (!c.error.empty()) j["error"] = c.error;
  j["checks"] = std::move(checks);
  if (!c.info.empty()) j["info"] = c.info;
  return j;
}

io::json report_to_json(const Report& r, bool include_timing) {
  io::json list = io::json::array();
  std::size_t passed = 0;
  for (const auto& c : r.criteria) {
    list.push_back(criterion_to_json(c, include_timing));
    passed += c.passed() ? 1 : 0;
  }
  return io::json{{"passed", r.passed()}, {"criteria_passed", passed}, {"criteria_total", r.criteria.size()},
                  {"criteria", std::move(list)}};
}

}  // namespace squeezelab::verify
