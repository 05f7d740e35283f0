#include "squeezelab/models.hpp"

#include <algorithm>
#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

#include "squeezelab/numerics.hpp"
#include "squeezelab/roots.hpp"

namespace squeezelab::models {

namespace {

double factorial(std::size_t n) {
  double f = 1.0;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<double>(i);
  return f;
}

void check_lambda(cdouble lambda) {
  if (lambda == cdouble(-1.0, 0.0)) throw DomainError("lambda = -1 is not allowed (division by lambda + 1)");
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) throw DomainError("lambda must be finite");
}

bool is_lambda_one(cdouble lambda) { return std::abs(lambda - 1.0) <= 1e-14; }

}  // namespace

void PolyFSpec::validate() const {
  if (degree() < 1) throw DomainError("PolyFSpec: f must have degree >= 1");
  check_lambda(lambda);
}

std::size_t PolyFSpec::degree() const {
  std::size_t d = coeffs.size();
  while (d > 0 && coeffs[d - 1] == 0.0) --d;
  return d == 0 ? 0 : d - 1;
}

DeformedGSpec DeformedGSpec::from_function(std::function<double(std::size_t)> g, std::size_t K, cdouble lambda,
                                           cdouble beta) {
  DeformedGSpec s;
  for (std::size_t n = 0; n <= K; ++n) s.g_values.push_back(g(n));
  s.g_fn = std::move(g);
  s.lambda = lambda;
  s.beta = beta;
  return s;
}

DeformedGSpec DeformedGSpec::from_polynomial(std::span<const double> coeffs, cdouble lambda, cdouble beta) {
  DeformedGSpec s;
  s.g_values = ordering::ordered_number_function(coeffs).g_values;
  s.lambda = lambda;
  s.beta = beta;
  return s;
}

void DeformedGSpec::validate() const {
  if (g_values.empty()) throw DomainError("DeformedGSpec: g needs at least one sample");
  check_lambda(lambda);
}

ordering::DifferenceTable DeformedGSpec::table() const { return ordering::difference_table(g_values); }

double DeformedGSpec::g(std::size_t n) const {
  if (g_fn) return g_fn(n);
  if (n < g_values.size()) return g_values[n];
  // Newton forward formula g(n) = sum_k D_k C(n, k).
  const auto t = table();
  double s = 0.0, c = 1.0;
  for (std::size_t k = 0; k < t.deltas.size(); ++k) {
    s += t.deltas[k] * c;
    c *= static_cast<double>(n - k) / static_cast<double>(k + 1);
  }
  return s;
}

solver::RayOde build_poly_f_ode(const PolyFSpec& spec) {
  spec.validate();
  const std::size_t d = spec.degree();
  const cdouble w = (spec.lambda - 1.0) / (spec.lambda + 1.0);
  const cdouble u = spec.beta / (spec.lambda + 1.0);
  solver::RayOde ode;
  ode.lambda = spec.lambda;
  ode.beta = spec.beta;
  ode.label = "poly_f";
  ode.p.assign(d + 1, {});
  for (std::size_t k = 1; k <= d; ++k) ode.p[k] = {cdouble(spec.coeffs[k])};
  ode.p[0].assign(d + 1, cdouble{});
  for (std::size_t m = 0; m <= d; ++m) ode.p[0][m] = -w * spec.coeffs[m];
  ode.p[0][0] += spec.coeffs[0] - u;
  return ode;
}

solver::RayOde build_deformed_ode(const DeformedGSpec& spec, std::size_t K_max) {
  spec.validate();
  if (K_max < 1) throw DomainError("build_deformed_ode: K_max must be >= 1");
  const auto t = spec.table();
  solver::RayOde ode;
  ode.lambda = spec.lambda;
  ode.beta = spec.beta;
  ode.label = "deformed_g";
  const std::ptrdiff_t last = t.last_nonzero();
  if (last < 0) throw DomainError("build_deformed_ode: g is identically zero");
  std::size_t K = static_cast<std::size_t>(last) + 1;
  if (static_cast<std::size_t>(last) + 1 == t.deltas.size() && spec.g_fn)
    ode.warnings.push_back("difference table does not terminate within the supplied g samples");
  if (K > K_max) {
    ode.warnings.push_back("C_k series truncated at K_max = " + std::to_string(K_max));
    K = K_max;
  }
  auto D = [&](std::size_t k) { return k < t.deltas.size() && k + 1 <= K ? t.deltas[k] : 0.0; };
  ode.p.assign(K + 1, {});
  for (std::size_t j = 0; j <= K; ++j) {
    std::vector<cdouble> pj(j + 2, cdouble{});
    if (j >= 1) pj[j - 1] += (1.0 + spec.lambda) * D(j - 1) / factorial(j - 1);
    pj[j + 1] += (1.0 - spec.lambda) * D(j) / factorial(j);
    if (j == 0) pj[0] -= spec.beta;
    ode.p[j] = std::move(pj);
  }
  return ode;
}

namespace detail {

ICResult initial_condition_recurrence(const DeformedGSpec& spec, std::span<const cdouble> free_values,
                                      std::size_t n, double fault_sign) {
  spec.validate();
  if (free_values.empty()) throw DomainError("initial_condition_recurrence: psi(0) must be supplied");
  ICResult out;
  out.derivatives.assign(n + 1, cdouble{});
  out.derivatives[0] = free_values[0];
  out.free_indices.push_back(0);
  std::size_t used = 1;
  const cdouble lp = 1.0 + spec.lambda, lm = 1.0 - spec.lambda;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& d = out.derivatives;
    cdouble rhs = spec.beta * d[k];
    double rhs_scale = std::abs(rhs);
    if (k >= 1) {
      const cdouble t = fault_sign * static_cast<double>(k) * lm * spec.g(k - 1) * d[k - 1];
      rhs -= t;
      rhs_scale = std::max(rhs_scale, std::abs(t));
    }
    const cdouble pivot = lp * spec.g(k);
    if (pivot == cdouble{}) {
      if (std::abs(rhs) > 1e-14 * rhs_scale || (rhs_scale == 0.0 && rhs != cdouble{}))
        throw RecurrenceBreakdown("initial conditions inconsistent: g(" + std::to_string(k) +
                                      ") = 0 with nonzero right-hand side",
                                  RecurrenceBreakdown::Kind::inconsistent, k + 1, out.free_indices.size());
      if (used >= free_values.size())
        throw RecurrenceBreakdown("initial conditions underdetermined: psi^(" + std::to_string(k + 1) +
                                      ")(0) is free",
                                  RecurrenceBreakdown::Kind::underdetermined, k + 1,
                                  out.free_indices.size() + 1);
      out.derivatives[k + 1] = free_values[used++];
      out.free_indices.push_back(k + 1);
      continue;
    }
    out.derivatives[k + 1] = rhs / pivot;
  }
  return out;
}

}  // namespace detail

ICResult initial_condition_recurrence(const DeformedGSpec& spec, std::span<const cdouble> free_values,
                                      std::size_t n) {
  return detail::initial_condition_recurrence(spec, free_values, n, 1.0);
}

std::size_t RootSet::total_multiplicity() const {
  std::size_t s = 0;
  for (auto m : multiplicity) s += m;
  return s;
}

RootSet find_roots(std::span<const double> coeffs, cdouble gamma, double cluster_tol) {
  std::vector<cdouble> p = poly::to_complex(coeffs);
  if (p.empty()) throw DomainError("find_roots: empty polynomial");
  p[0] -= gamma;
  const auto raw = poly::roots(p);
  // Single-linkage clustering.
  std::vector<std::size_t> label(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) label[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
    return label[i] == i ? i : label[i] = find(label[i]);
  };
  for (std::size_t i = 0; i < raw.size(); ++i)
    for (std::size_t j = i + 1; j < raw.size(); ++j)
      if (std::abs(raw[i] - raw[j]) < cluster_tol) label[find(i)] = find(j);
  RootSet rs;
  rs.gamma = gamma;
  std::vector<std::size_t> seen;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const std::size_t r = find(i);
    const auto it = std::find(seen.begin(), seen.end(), r);
    if (it == seen.end()) {
      seen.push_back(r);
      rs.roots.push_back(raw[i]);
      rs.multiplicity.push_back(1);
    } else {
      const auto idx = static_cast<std::size_t>(it - seen.begin());
      const double m = static_cast<double>(rs.multiplicity[idx]);
      rs.roots[idx] = (rs.roots[idx] * m + raw[i]) / (m + 1.0);
      ++rs.multiplicity[idx];
    }
  }
  // Deterministic order: by real part, then imaginary part.
  std::vector<std::size_t> order(rs.roots.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const cdouble x = rs.roots[a], y = rs.roots[b];
    if (std::abs(x.real() - y.real()) > 1e-12) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  RootSet sorted;
  sorted.gamma = gamma;
  for (auto i : order) {
    // Snap polishing noise on exact zeros of components.
    cdouble z = rs.roots[i];
    if (std::abs(z.real()) < 1e-15) z.real(0.0);
    if (std::abs(z.imag()) < 1e-15) z.imag(0.0);
    sorted.roots.push_back(z);
    sorted.multiplicity.push_back(rs.multiplicity[i]);
  }
  return sorted;
}

namespace {

using boost::multiprecision::cpp_rational;

struct QI {
  cpp_rational re, im;
  QI operator+(const QI& o) const { return {re + o.re, im + o.im}; }
  QI operator-(const QI& o) const { return {re - o.re, im - o.im}; }
  QI operator*(const QI& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
  QI operator/(const QI& o) const {
    const cpp_rational den = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / den, (im * o.re - re * o.im) / den};
  }
  bool is_zero() const { return re == 0 && im == 0; }
};

cpp_rational exact(double x) {
  // Every finite double is a dyadic rational.
  int e = 0;
  const double m = std::frexp(x, &e);
  const auto mant = static_cast<long long>(std::ldexp(m, 53));
  cpp_rational r(mant);
  const int shift = e - 53;
  const boost::multiprecision::cpp_int one(1);
  if (shift > 0) r *= cpp_rational(one << shift);
  if (shift < 0) r /= cpp_rational(one << -shift);
  return r;
}

template <class T>
std::vector<std::vector<T>> sylvester(const std::vector<T>& p, const std::vector<T>& q, const T& zero) {
  // Coefficients high to low; size (m + n) with m = deg p, n = deg q.
  const std::size_t m = p.size() - 1, n = q.size() - 1;
  std::vector<std::vector<T>> s(m + n, std::vector<T>(m + n, zero));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= m; ++j) s[i][i + j] = p[j];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= n; ++j) s[n + i][i + j] = q[j];
  return s;
}

QI det_exact(std::vector<std::vector<QI>> a) {
  const std::size_t n = a.size();
  QI det{1, 0};
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c].is_zero()) ++piv;
    if (piv == n) return {0, 0};
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = det * QI{-1, 0};
    }
    det = det * a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c].is_zero()) continue;
      const QI f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] = a[r][k] - f * a[c][k];
    }
  }
  return det;
}

cdouble det_float(std::vector<std::vector<cdouble>> a) {
  const std::size_t n = a.size();
  cdouble det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    if (a[piv][c] == cdouble{}) return 0.0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const cdouble f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

std::string to_text(const cpp_rational& r) { return r.str(); }

}  // namespace

SeparabilityResult separability_check(std::span<const double> coeffs, cdouble gamma) {
  std::size_t d = coeffs.size();
  while (d > 0 && coeffs[d - 1] == 0.0) --d;
  if (d < 2) throw DomainError("separability_check: degree must be >= 1");
  const std::size_t deg = d - 1;
  SeparabilityResult res;
  if (deg == 1) {
    res.separable = true;
    res.discriminant = 1.0;
    res.resultant_exact = res.resultant_float = coeffs[1];
    res.resultant_text = to_text(exact(coeffs[1])) + " + 0i";
    return res;
  }
  // High-to-low coefficient lists of p = f - gamma and p'.
  std::vector<QI> pe(deg + 1), qe(deg);
  std::vector<cdouble> pf(deg + 1), qf(deg);
  for (std::size_t k = 0; k <= deg; ++k) {
    const std::size_t i = deg - k;
    pe[i] = {exact(coeffs[k]), 0};
    pf[i] = coeffs[k];
  }
  pe[deg] = pe[deg] - QI{exact(gamma.real()), exact(gamma.imag())};
  pf[deg] -= gamma;
  for (std::size_t k = 1; k <= deg; ++k) {
    const std::size_t i = deg - k;
    qe[i] = QI{exact(coeffs[k]), 0} * QI{cpp_rational(static_cast<long long>(k)), 0};
    qf[i] = coeffs[k] * static_cast<double>(k);
  }
  const QI r = det_exact(sylvester(pe, qe, QI{0, 0}));
  res.resultant_exact = {static_cast<double>(r.re), static_cast<double>(r.im)};
  res.resultant_float = det_float(sylvester(pf, qf, cdouble{}));
  res.separable = !r.is_zero();
  res.resultant_text = to_text(r.re) + " + " + to_text(r.im) + "i";
  // disc = (-1)^(n(n-1)/2) Res(p, p') / lead.
  const double sign = ((deg * (deg - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
  res.discriminant = sign * res.resultant_exact / coeffs[deg];
  return res;
}

std::vector<fock::FockVector> lambda_one_basis(const RootSet& roots, std::size_t dim) {
  std::vector<fock::FockVector> out;
  for (std::size_t i = 0; i < roots.roots.size(); ++i) {
    const cdouble alpha = roots.roots[i];
    const std::size_t k = roots.multiplicity[i];
    fock::FockVector v = fock::FockVector::coherent(dim + k, alpha);
    const std::vector<cdouble> shift = {-std::conj(alpha), 1.0};
    for (std::size_t j = 0; j < k; ++j) {
      out.push_back(v.resized(dim));
      v = fock::apply_creator_poly(shift, v).resized(dim + k);
    }
  }
  return out;
}

LambdaOneSolution lambda_one_solution_poly_f(const PolyFSpec& spec, const std::vector<std::vector<cdouble>>& weights,
                                             std::size_t dim) {
  spec.validate();
  if (!is_lambda_one(spec.lambda)) throw DomainError("lambda_one_solution_poly_f: requires lambda = 1");
  LambdaOneSolution sol;
  sol.roots = find_roots(spec.coeffs, spec.gamma());
  if (weights.size() != sol.roots.roots.size())
    throw DomainError("lambda_one_solution_poly_f: need one weight polynomial per distinct root");
  fock::FockVector acc(dim);
  const auto basis = lambda_one_basis(sol.roots, dim);
  std::size_t b = 0;
  for (std::size_t i = 0; i < sol.roots.roots.size(); ++i) {
    const std::size_t k = sol.roots.multiplicity[i];
    if (weights[i].size() > k) throw DomainError("lambda_one_solution_poly_f: weight degree exceeds multiplicity - 1");
    for (std::size_t j = 0; j < k; ++j, ++b)
      if (j < weights[i].size()) acc += weights[i][j] * basis[b];
  }
  sol.state = bargmann::EntireState(acc.normalized());
  return sol;
}

bargmann::EntireState nonlinear_coherent_state(const DeformedGSpec& spec, std::size_t dim) {
  spec.validate();
  if (!is_lambda_one(spec.lambda)) throw DomainError("nonlinear_coherent_state: requires lambda = 1");
  if (dim == 0) throw DomainError("nonlinear_coherent_state: dim must be >= 1");
  const cdouble gamma = spec.gamma();
  fock::FockVector v(dim);
  v[0] = 1.0;
  for (std::size_t n = 0; n + 1 < dim; ++n) {
    const double gn = spec.g(n);
    if (gn == 0.0)
      throw DomainError("nonlinear_coherent_state: g(" + std::to_string(n) +
                        ") = 0; solve through the ODE or the initial-condition recurrence instead");
    v[n + 1] = v[n] * gamma / (std::sqrt(static_cast<double>(n + 1)) * gn);
  }
  return bargmann::EntireState(v.normalized());
}

bargmann::EntireState g_n_closed_form(cdouble beta, std::size_t dim) {
  if (beta == cdouble{})
    throw DomainError("g_n_closed_form: beta = 0 leaves the solution space span{|0>, |1>}; supply c_0, c_1 directly");
  if (dim < 2) throw DomainError("g_n_closed_form: dim must be >= 2");
  const cdouble gamma = beta / 2.0;
  const cdouble norm = numerics::hyp0f2(cdouble(1.0), cdouble(2.0), cdouble(std::norm(gamma)));
  const double pref = 1.0 / std::sqrt(norm.real());
  // c_{k+1} = gamma^k / (sqrt((k+1)!) k!)
  fock::FockVector v(dim);
  cdouble c = 1.0;
  for (std::size_t k = 0; k + 1 < dim; ++k) {
    v[k + 1] = pref * c;
    c *= gamma / (std::sqrt(static_cast<double>(k + 2)) * static_cast<double>(k + 1));
  }
  return bargmann::EntireState(std::move(v));
}

fock::FockVector apply_pencil(const PolyFSpec& spec, const fock::FockVector& psi) {
  spec.validate();
  const std::vector<cdouble> f(spec.coeffs.begin(), spec.coeffs.end());
  const std::size_t deg = spec.degree();
  const fock::FockVector p = psi.resized(psi.dim() + deg);
  fock::FockVector out = (1.0 + spec.lambda) * fock::apply_annihilator_poly(f, p);
  out += (1.0 - spec.lambda) * fock::apply_creator_poly(f, psi);
  return out;
}

fock::FockVector apply_pencil(const DeformedGSpec& spec, const fock::FockVector& psi) {
  spec.validate();
  const std::size_t n = psi.dim() + 1;
  fock::FockVector out(n);
  for (std::size_t k = 0; k + 1 < psi.dim(); ++k)
    out[k] += (1.0 + spec.lambda) * spec.g(k) * std::sqrt(static_cast<double>(k + 1)) * psi[k + 1];
  for (std::size_t k = 1; k < n; ++k)
    out[k] += (1.0 - spec.lambda) * std::sqrt(static_cast<double>(k)) * spec.g(k - 1) * psi[k - 1];
  return out;
}

namespace {

double residual_rows(const fock::FockVector& tpsi, const fock::FockVector& psi, cdouble beta, std::size_t band) {
  const std::size_t rows = psi.dim() > band ? psi.dim() - band : 0;
  double s = 0.0;
  for (std::size_t n = 0; n < rows; ++n) s += std::norm(tpsi[n] - beta * psi[n]);
  return std::sqrt(s) / psi.norm();
}

}  // namespace

double pencil_residual(const PolyFSpec& spec, const fock::FockVector& psi) {
  return residual_rows(apply_pencil(spec, psi), psi, spec.beta, spec.degree());
}

double pencil_residual(const DeformedGSpec& spec, const fock::FockVector& psi) {
  return residual_rows(apply_pencil(spec, psi), psi, spec.beta, 1);
}

}  // namespace squeezelab::models
