#include "squeezelab/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "squeezelab/parallel.hpp"
#include "squeezelab/roots.hpp"

namespace squeezelab::solver {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

cdouble eval_poly(const std::vector<cdouble>& c, cdouble z) {
  cdouble s{};
  for (std::size_t m = c.size(); m-- > 0;) s = s * z + c[m];
  return s;
}

bool is_zero_poly(const std::vector<cdouble>& c) {
  return std::all_of(c.begin(), c.end(), [](cdouble x) { return x == cdouble{}; });
}

}  // namespace

void RayOde::validate() const {
  if (p.size() < 2) throw DomainError("RayOde: order must be >= 1");
  if (is_zero_poly(p.back())) throw DomainError("RayOde: leading coefficient is identically zero");
}

std::vector<cdouble> RayOde::coefficients(double phi, double r) const {
  const cdouble z = std::polar(r, -phi);
  std::vector<cdouble> c(p.size());
  for (std::size_t k = 0; k < p.size(); ++k)
    c[k] = eval_poly(p[k], z) * std::polar(1.0, static_cast<double>(k) * phi);
  return c;
}

bool RayOde::singular_at_origin() const { return p.back().empty() || p.back()[0] == cdouble{}; }

bargmann::EntireState solve_series(const RayOde& ode, const InitialData& init, std::size_t n_taylor) {
  ode.validate();
  const std::size_t K = ode.order();
  if (init.c.size() != K) throw DomainError("solve_series: expected one seed per order");
  struct Term {
    std::size_t k, m;
    cdouble p;
  };
  std::vector<Term> terms;
  long s = std::numeric_limits<long>::min();
  for (std::size_t k = 0; k <= K; ++k)
    for (std::size_t m = 0; m < ode.p[k].size(); ++m)
      if (ode.p[k][m] != cdouble{}) {
        terms.push_back({k, m, ode.p[k][m]});
        s = std::max(s, static_cast<long>(k) - static_cast<long>(m));
      }
  if (s < 0) throw DomainError("solve_series: recurrence does not advance (max(k - m) < 0)");

  // Scaled amplitudes c_j = a_j sqrt(j!). The z^N equation is
  //   sum p_{k,m} sqrt(j!)/(j-k)! c_j = 0,  j = N - m + k,
  // and its highest index is t = N + s.
  const std::size_t dim = std::max<std::size_t>(n_taylor + 1, K);
  fock::FockVector c(dim);
  for (std::size_t k = 0; k < K; ++k) c[k] = init.c[k] * std::exp(-0.5 * std::lgamma(k + 1.0));
  auto lw = [](std::size_t j, std::size_t k) { return 0.5 * std::lgamma(j + 1.0) - std::lgamma(j - k + 1.0); };
  const auto su = static_cast<std::size_t>(s);
  for (std::size_t N = 0; N + su < dim; ++N) {
    const std::size_t t = N + su;
    double lref = -std::numeric_limits<double>::infinity();
    for (const auto& tm : terms)
      if (N >= tm.m) lref = std::max(lref, lw(N - tm.m + tm.k, tm.k));
    if (!std::isfinite(lref)) continue;
    cdouble pivot{}, other{};
    double scale = 0.0, pscale = 0.0;
    for (const auto& tm : terms) {
      if (N < tm.m) continue;
      const std::size_t j = N - tm.m + tm.k;
      const cdouble w = tm.p * std::exp(lw(j, tm.k) - lref);
      if (j == t) {
        pivot += w;
        pscale = std::max(pscale, std::abs(w));
      } else {
        other += w * c[j];
        scale = std::max(scale, std::abs(w * c[j]));
      }
    }
    if (t < K) {
      const cdouble res = pivot * c[t] + other;
      const double sc = std::max(scale, std::abs(pivot * c[t]));
      if (std::abs(res) > 1e-12 * sc)
        throw RecurrenceBreakdown("solve_series: seeds violate the recurrence constraint at index " +
                                      std::to_string(t),
                                  RecurrenceBreakdown::Kind::inconsistent, t, 0);
      continue;
    }
    if (std::abs(pivot) <= 1e-14 * std::max(pscale, 1.0) || pivot == cdouble{}) {
      if (std::abs(other) > 1e-12 * std::max(scale, 1e-300))
        throw RecurrenceBreakdown("solve_series: vanishing pivot with inconsistent equation at index " +
                                      std::to_string(t),
                                  RecurrenceBreakdown::Kind::inconsistent, t, 0);
      throw RecurrenceBreakdown("solve_series: vanishing pivot leaves coefficient " + std::to_string(t) + " free",
                                RecurrenceBreakdown::Kind::underdetermined, t, 1);
    }
    c[t] = -other / pivot;
  }
  if (dim > n_taylor + 1) return bargmann::EntireState(c.resized(n_taylor + 1));
  return bargmann::EntireState(std::move(c));
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

using Vec = std::vector<cdouble>;

class RaySystem {
 public:
  RaySystem(const RayOde& ode, double phi) : ode_(ode), phi_(phi), K_(ode.order()) {}

  void operator()(double r, const Vec& y, Vec& dy) const {
    const auto c = ode_.coefficients(phi_, r);
    cdouble s{};
    for (std::size_t k = 0; k < K_; ++k) s += c[k] * y[k];
    for (std::size_t k = 0; k + 1 < K_; ++k) dy[k] = y[k + 1];
    dy[K_ - 1] = -s / c[K_];
  }

 private:
  const RayOde& ode_;
  double phi_;
  std::size_t K_;
};

// Smallest r > 0 on the ray where the leading coefficient vanishes.
std::optional<double> leading_zero_on_ray(const RayOde& ode, double phi, double r_end) {
  const auto lead = poly::trimmed(ode.p.back());
  if (lead.size() < 2) return std::nullopt;
  std::optional<double> best;
  for (const cdouble z0 : poly::roots(lead)) {
    const double r = std::abs(z0);
    if (r < 1e-8 || r > r_end * (1.0 + 1e-12)) continue;
    const double d = std::remainder(std::arg(z0) + phi, kTwoPi);
    if (std::abs(d) * r < 1e-9 * std::max(1.0, r) && (!best || r < *best)) best = r;
  }
  return best;
}

}  // namespace

RaySamples integrate_ray_values(const RayOde& ode, const std::vector<cdouble>& ray_init, double phi,
                                const std::vector<double>& rs, const RayOptions& opt) {
  ode.validate();
  const std::size_t K = ode.order();
  if (ray_init.size() != K) throw DomainError("integrate_ray: expected one initial value per order");
  if (!(opt.tol > 0.0)) throw DomainError("integrate_ray: tol must be positive");
  if (!std::is_sorted(rs.begin(), rs.end()) || (!rs.empty() && rs.front() < 0.0))
    throw DomainError("integrate_ray: radii must be ascending and nonnegative");

  RaySamples out;
  out.phi = phi;
  out.rs = rs;
  out.values.resize(rs.size());
  if (rs.empty()) return out;
  const double r_end = rs.back();
  if (const auto rz = leading_zero_on_ray(ode, phi, r_end))
    throw SolverError("integrate_ray: leading coefficient vanishes on the ray", *rz);

  Vec y = ray_init;
  double r = 0.0;
  std::size_t next = 0;
  if (ode.singular_at_origin()) {
    // Frobenius hand-off: values at r0 from the Taylor recurrence.
    InitialData germ;
    germ.c.resize(K);
    for (std::size_t k = 0; k < K; ++k) germ.c[k] = ray_init[k] * std::polar(1.0, static_cast<double>(k) * phi);
    const auto series = solve_series(ode, germ, opt.handoff_terms);
    r = std::min(opt.r0, r_end);
    for (; next < rs.size() && rs[next] <= r; ++next) out.values[next] = series.evaluate(std::polar(rs[next], -phi));
    const cdouble z0 = std::polar(r, -phi);
    for (std::size_t k = 0; k < K; ++k)
      y[k] = series.derivative(k, z0) * std::polar(1.0, -static_cast<double>(k) * phi);
  }
  for (; next < rs.size() && rs[next] <= r; ++next) out.values[next] = y[0];
  if (next == rs.size()) return out;

  const RaySystem f(ode, phi);
  Vec k1(K), k2(K), k3(K), k4(K), k5(K), k6(K), k7(K), tmp(K), y5(K);
  f(r, y, k1);
  double h = std::min(0.01 * (r_end - r), 0.1);
  for (;;) {
    if (next == rs.size()) break;
    if (out.steps + out.rejected > opt.max_steps) throw SolverError("integrate_ray: step budget exhausted", r);
    const double target = rs[next];
    bool hits = false;
    const double h_free = h;
    if (r + h >= target - 1e-14 * std::max(1.0, target)) {
      h = target - r;
      hits = true;
    }
    if (h < 1e-13 * std::max(1.0, r)) throw SolverError("integrate_ray: step size underflow", r);
    for (std::size_t i = 0; i < K; ++i) tmp[i] = y[i] + h * (a21 * k1[i]);
    f(r + c2 * h, tmp, k2);
    for (std::size_t i = 0; i < K; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    f(r + c3 * h, tmp, k3);
    for (std::size_t i = 0; i < K; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    f(r + c4 * h, tmp, k4);
    for (std::size_t i = 0; i < K; ++i)
      tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    f(r + c5 * h, tmp, k5);
    for (std::size_t i = 0; i < K; ++i)
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    f(r + h, tmp, k6);
    for (std::size_t i = 0; i < K; ++i)
      y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    f(r + h, y5, k7);
    double err = 0.0;
    for (std::size_t i = 0; i < K; ++i) {
      const cdouble e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = opt.atol + opt.tol * std::max(std::abs(y[i]), std::abs(y5[i]));
      err = std::max(err, std::abs(e) / sc);
    }
    if (!std::isfinite(err)) {
      ++out.rejected;
      h *= 0.2;
      continue;
    }
    if (err <= 1.0) {
      ++out.steps;
      r = hits ? target : r + h;
      y.swap(y5);
      k1.swap(k7);
      if (hits) {
        for (; next < rs.size() && rs[next] <= r; ++next) out.values[next] = y[0];
      }
      const double fac = err == 0.0 ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(err, -0.2)));
      h = hits ? std::max(h_free, h * fac) : h * fac;
    } else {
      ++out.rejected;
      h *= std::max(0.1, 0.9 * std::pow(err, -0.25));
    }
  }
  return out;
}

RaySamples integrate_ray(const RayOde& ode, const InitialData& init, double phi, const std::vector<double>& rs,
                         const RayOptions& opt) {
  std::vector<cdouble> y(init.c.size());
  for (std::size_t k = 0; k < y.size(); ++k) y[k] = init.c[k] * std::polar(1.0, -static_cast<double>(k) * phi);
  return integrate_ray_values(ode, y, phi, rs, opt);
}

RayField assemble_field(const RayOde& ode, const std::function<std::vector<cdouble>(double)>& ray_init,
                        const FieldOptions& opt) {
  if (opt.n_phi < 4) throw DomainError("assemble_field: need at least 4 rays");
  if (opt.n_r < 2) throw DomainError("assemble_field: need at least 2 radial samples");
  if (!(opt.r_max > 0.0)) throw DomainError("assemble_field: r_max must be positive");
  RayField field;
  field.phis.resize(opt.n_phi);
  field.rs.resize(opt.n_r);
  for (std::size_t j = 0; j < opt.n_phi; ++j) field.phis[j] = kTwoPi * static_cast<double>(j) / static_cast<double>(opt.n_phi);
  for (std::size_t i = 0; i < opt.n_r; ++i)
    field.rs[i] = opt.r_max * static_cast<double>(i) / static_cast<double>(opt.n_r - 1);
  field.values.resize(static_cast<Eigen::Index>(opt.n_phi), static_cast<Eigen::Index>(opt.n_r));
  parallel::parallel_for(opt.n_phi, [&](std::size_t j) {
    try {
      const auto ray = integrate_ray_values(ode, ray_init(field.phis[j]), field.phis[j], field.rs, opt.ray);
      for (std::size_t i = 0; i < opt.n_r; ++i) field.values(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = ray.values[i];
    } catch (const SolverError& e) {
      throw SolverError(std::string(e.what()) + " (ray " + std::to_string(j) + ")", e.r_star(), j);
    }
  });
  return field;
}

RayField assemble_field(const RayOde& ode, const InitialData& init, const FieldOptions& opt) {
  return assemble_field(
      ode,
      [&](double phi) {
        std::vector<cdouble> y(init.c.size());
        for (std::size_t k = 0; k < y.size(); ++k) y[k] = init.c[k] * std::polar(1.0, -static_cast<double>(k) * phi);
        return y;
      },
      opt);
}

AnalyticityReport analyticity_check(const RayField& field, std::size_t n_modes) {
  const std::size_t M = field.phis.size();
  const std::size_t R = field.rs.size();
  if (M < 4) throw DomainError("analyticity_check: need at least 4 rays");
  if (2 * n_modes >= M) throw DomainError("analyticity_check: n_modes must be below n_phi / 2");
  AnalyticityReport rep;
  rep.n_modes = n_modes;
  rep.positive_residual.assign(n_modes, 0.0);
  rep.profile_residual.assign(n_modes + 1, 0.0);

  std::vector<double> scale(R, 0.0);
  // modes[i][n_modes + m] for m in [-n_modes, n_modes]
  std::vector<std::vector<cdouble>> modes(R, std::vector<cdouble>(2 * n_modes + 1));
  for (std::size_t i = 0; i < R; ++i) {
    for (std::size_t j = 0; j < M; ++j)
      scale[i] = std::max(scale[i], std::abs(field.values(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i))));
    for (long m = -static_cast<long>(n_modes); m <= static_cast<long>(n_modes); ++m) {
      cdouble s{};
      for (std::size_t j = 0; j < M; ++j)
        s += field.values(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) *
             std::polar(1.0, -static_cast<double>(m) * field.phis[j]);
      modes[i][static_cast<std::size_t>(m + static_cast<long>(n_modes))] = s / static_cast<double>(M);
    }
  }
  for (std::size_t n = 1; n <= n_modes; ++n)
    for (std::size_t i = 0; i < R; ++i)
      if (scale[i] > 0.0)
        rep.positive_residual[n - 1] = std::max(rep.positive_residual[n - 1], std::abs(modes[i][n_modes + n]) / scale[i]);
  for (std::size_t n = 0; n <= n_modes; ++n) {
    cdouble num{};
    double den = 0.0;
    for (std::size_t i = 0; i < R; ++i) {
      if (!(scale[i] > 0.0)) continue;
      const double rn = std::pow(field.rs[i], static_cast<double>(n)) / scale[i];
      num += modes[i][n_modes - n] / scale[i] * rn;
      den += rn * rn;
    }
    const cdouble a = den > 0.0 ? num / den : cdouble{};
    for (std::size_t i = 0; i < R; ++i)
      if (scale[i] > 0.0)
        rep.profile_residual[n] = std::max(
            rep.profile_residual[n],
            std::abs(modes[i][n_modes - n] - a * std::pow(field.rs[i], static_cast<double>(n))) / scale[i]);
  }
  for (double v : rep.positive_residual) rep.max_positive = std::max(rep.max_positive, v);
  for (double v : rep.profile_residual) rep.max_profile = std::max(rep.max_profile, v);
  const auto i0 = std::min_element(field.rs.begin(), field.rs.end()) - field.rs.begin();
  for (std::size_t j = 1; j < M; ++j)
    rep.origin_spread = std::max(rep.origin_spread, std::abs(field.values(static_cast<Eigen::Index>(j), i0) - field.values(0, i0)));
  return rep;
}

double field_deviation(const RayField& field, const std::function<cdouble(cdouble)>& psi) {
  double dev = 0.0;
  for (std::size_t i = 0; i < field.rs.size(); ++i) {
    double scale = 0.0, worst = 0.0;
    for (std::size_t j = 0; j < field.phis.size(); ++j) {
      const cdouble ref = psi(std::polar(field.rs[i], -field.phis[j]));
      scale = std::max(scale, std::abs(ref));
      worst = std::max(worst, std::abs(field.values(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) - ref));
    }
    dev = std::max(dev, scale > 0.0 ? worst / scale : worst);
  }
  return dev;
}

}  // namespace squeezelab::solver
