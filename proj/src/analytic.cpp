#include "squeezelab/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/multiprecision/cpp_complex.hpp>

#include "squeezelab/error.hpp"

namespace squeezelab::analytic {

namespace mp = boost::multiprecision;

QuadratureParams QuadratureParams::make(cdouble lambda, cdouble beta) {
  if (!(lambda.real() > 0.0)) throw DomainError("quadrature state: Re lambda must be positive");
  QuadratureParams p;
  p.lambda = lambda;
  p.beta = beta;
  p.w = (lambda - 1.0) / (lambda + 1.0);
  p.u = beta / (lambda + 1.0);
  p.phi = std::arg(lambda);
  return p;
}

double quad_norm_sq(const QuadratureParams& p) {
  const double R = p.lambda.real();
  const cdouble q = (std::conj(p.lambda) - 1.0) / (p.lambda + 1.0);
  const double e = (std::norm(p.beta) + (q * p.beta * p.beta).real()) / (4.0 * R);
  return 2.0 * std::sqrt(R) / std::abs(p.lambda + 1.0) * std::exp(-e);
}

bargmann::EntireState quad_state(const QuadratureParams& p, std::size_t dim) {
  if (dim == 0) throw DomainError("quad_state: dim must be positive");
  fock::FockVector v(dim);
  v[0] = 1.0;
  if (dim > 1) v[1] = p.u;
  for (std::size_t n = 1; n + 1 < dim; ++n) {
    const double nn = static_cast<double>(n);
    v[n + 1] = (p.u * v[n] + p.w * std::sqrt(nn) * v[n - 1]) / std::sqrt(nn + 1.0);
  }
  v *= std::sqrt(quad_norm_sq(p));
  return bargmann::EntireState(std::move(v));
}

std::size_t quad_dim_for_tail(const QuadratureParams& p, double tail_tol) {
  for (std::size_t dim = 32; dim <= 16384; dim *= 2)
    if (quad_state(p, dim).fock().tail_mass(0.1) < tail_tol) return dim;
  throw ConvergenceError("quad_dim_for_tail: tail mass did not reach the tolerance", 0.0, 0.0, 16384);
}

cdouble quad_value(const QuadratureParams& p, cdouble z) {
  return std::exp(0.5 * p.w * z * z + p.u * z);
}

QuadDispersions quad_dispersions(const QuadratureParams& p) {
  QuadDispersions d;
  const double R = p.lambda.real();
  d.var_x = std::norm(p.lambda) / R;
  d.var_p = 1.0 / R;
  const double t = std::tan(p.phi);
  d.defect = t * t;
  const double a = std::abs(p.lambda - 1.0), b = std::abs(p.lambda + 1.0);
  d.min_no_quad_variance = -2.0 * a / (b + a);
  return d;
}

double min_normally_ordered_quadrature_variance(const bargmann::EntireState& psi) {
  const cdouble m1 = bargmann::moment(psi, 0, 1);
  const cdouble m2 = bargmann::moment(psi, 0, 2);
  const double n = bargmann::moment(psi, 1, 1).real();
  return 2.0 * (n - std::norm(m1)) - 2.0 * std::abs(m2 - m1 * m1);
}

namespace {

// Polynomial in (x, y) stored densely as c[i][j] x^i y^j.
using Bivariate = std::vector<std::vector<cdouble>>;

Bivariate biv_zero(std::size_t deg) { return Bivariate(deg + 1, std::vector<cdouble>(deg + 1)); }

// P -> P_x + P E_x (or the y analogue), E = (xy + q x^2/2 + conj(q) y^2/2) / (4R).
Bivariate biv_step(const Bivariate& P, bool along_x, cdouble q, double R) {
  const std::size_t deg = P.size() - 1;
  Bivariate out = biv_zero(deg + 1);
  const cdouble qq = along_x ? q : std::conj(q);
  const double s = 1.0 / (4.0 * R);
  for (std::size_t i = 0; i <= deg; ++i) {
    for (std::size_t j = 0; j <= deg; ++j) {
      const cdouble c = P[i][j];
      if (c == cdouble{}) continue;
      if (along_x) {
        if (i > 0) out[i - 1][j] += static_cast<double>(i) * c;
        out[i][j + 1] += s * c;       // y / 4R
        out[i + 1][j] += s * qq * c;  // q x / 4R
      } else {
        if (j > 0) out[i][j - 1] += static_cast<double>(j) * c;
        out[i + 1][j] += s * c;
        out[i][j + 1] += s * qq * c;
      }
    }
  }
  return out;
}

cdouble biv_eval(const Bivariate& P, cdouble x, cdouble y) {
  cdouble sum{};
  cdouble xi = 1.0;
  for (std::size_t i = 0; i < P.size(); ++i) {
    cdouble yj = 1.0;
    for (std::size_t j = 0; j < P.size(); ++j) {
      sum += P[i][j] * xi * yj;
      yj *= y;
    }
    xi *= x;
  }
  return sum;
}

double binom(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

double falling(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 0; i < k; ++i) r *= static_cast<double>(n - i);
  return r;
}

}  // namespace

cdouble quad_antinormal_moment(const QuadratureParams& p, std::size_t n, std::size_t m) {
  const double R = p.lambda.real();
  const cdouble q = (std::conj(p.lambda) - 1.0) / (p.lambda + 1.0);
  Bivariate P = biv_zero(0);
  P[0][0] = 1.0;
  for (std::size_t k = 0; k < m; ++k) P = biv_step(P, true, q, R);
  for (std::size_t k = 0; k < n; ++k) P = biv_step(P, false, q, R);
  const cdouble d = biv_eval(P, p.beta, std::conj(p.beta));
  return std::pow(std::conj(p.lambda) + 1.0, static_cast<double>(n)) *
         std::pow(p.lambda + 1.0, static_cast<double>(m)) * d;
}

cdouble quad_moment(const QuadratureParams& p, std::size_t n, std::size_t m) {
  // a^m a^dag^n = sum_k C(m,k) n!/(n-k)! a^dag^(n-k) a^(m-k); solve for the k = 0 term.
  cdouble out = quad_antinormal_moment(p, m, n);
  for (std::size_t k = 1; k <= std::min(n, m); ++k)
    out -= binom(m, k) * falling(n, k) * quad_moment(p, n - k, m - k);
  return out;
}

std::string parity_name(Parity p) { return p == Parity::even ? "even" : "odd"; }

AmpSquaredParams AmpSquaredParams::make(cdouble lambda, cdouble beta, int branch) {
  if (!(lambda.real() > 0.0)) throw DomainError("amplitude-squared state: Re lambda must be positive");
  if (branch != 1 && branch != -1) throw DomainError("amplitude-squared state: branch must be +1 or -1");
  AmpSquaredParams p;
  p.lambda = lambda;
  p.beta = beta;
  p.branch = branch;
  if (lambda == cdouble(1.0)) {
    if (beta != cdouble{})
      throw DomainError(
          "amplitude-squared state: lambda = 1 with beta != 0 has no closed form here; "
          "use models::lambda_one_solution_poly_f");
    p.b = 0.25;
    return p;
  }
  p.s = static_cast<double>(branch) * std::sqrt((lambda - 1.0) / (lambda + 1.0));
  p.c = 0.5 * p.s;
  p.sqrt_l2m1 = (lambda - 1.0) / p.s;
  p.b = 0.25 * (1.0 + beta / p.sqrt_l2m1);
  const double as = std::abs(p.s);
  const double r = std::atanh(as);
  const cdouble phase = std::polar(1.0, std::arg(p.s));
  p.xi = r * phase;
  p.mu = std::cosh(r);
  p.nu = std::sinh(r) * phase;
  p.zeta = p.s;
  p.v = p.s / (1.0 + as * as);
  return p;
}

cdouble amp2_fb_value(const AmpSquaredParams& p, Parity parity, cdouble z) {
  using numerics::complex50;
  const complex50 c = numerics::from_cdouble<complex50>(p.c);
  const complex50 zz = numerics::from_cdouble<complex50>(z);
  const complex50 z2 = zz * zz;
  const complex50 arg = complex50(2) * c * z2;
  complex50 out;
  if (parity == Parity::even) {
    out = exp(-c * z2) *
          numerics::hyp1f1(numerics::from_cdouble<complex50>(p.b), complex50(0.5), arg);
  } else {
    out = zz * exp(-c * z2) *
          numerics::hyp1f1(numerics::from_cdouble<complex50>(p.b + 0.5), complex50(1.5), arg);
  }
  return numerics::to_cdouble(out);
}

namespace {

struct FbCoeffs {
  std::vector<cdouble> amps;
  double loss_digits = 0.0;
};

// Cauchy product of exp(-c z^2) and the Kummer series, term by term.
template <class C>
FbCoeffs fb_coeffs_cauchy(const AmpSquaredParams& p, Parity parity, std::size_t dim) {
  using std::abs;
  using std::log10;
  using std::sqrt;
  using R = typename C::value_type;
  const bool odd = parity == Parity::odd;
  const C b = numerics::from_cdouble<C>(odd ? p.b + 0.5 : p.b);
  const R lower(odd ? 1.5 : 0.5);
  const C c = numerics::from_cdouble<C>(p.c);
  FbCoeffs out;
  out.amps.assign(dim, cdouble{});
  const std::size_t off = odd ? 1 : 0;
  C cm(1);           // c^m
  R inv_mfact(1);    // 1/m!
  R sqrt_nfact(1);   // sqrt(n!) for n = 2m + off
  for (std::size_t m = 0; 2 * m + off < dim; ++m) {
    if (m > 0) {
      cm *= c;
      inv_mfact /= R(static_cast<double>(m));
      const std::size_t n = 2 * m + off;
      sqrt_nfact *= sqrt(R(static_cast<double>(n)) * R(static_cast<double>(n - 1)));
    }
    C term = (m % 2 == 0 ? C(inv_mfact) : C(-inv_mfact));
    C sum = term;
    R abs_sum = abs(term);
    for (std::size_t k = 1; k <= m; ++k) {
      const R kk(static_cast<double>(k));
      term *= C(R(-2) * R(static_cast<double>(m - k + 1)) / ((lower + kk - R(1)) * kk)) *
              (b + C(kk - R(1)));
      sum += term;
      abs_sum += abs(term);
    }
    const R as = abs(sum);
    if (as > R(0)) {
      const double loss = static_cast<double>(log10(abs_sum / as));
      out.loss_digits = std::max(out.loss_digits, loss);
    }
    out.amps[2 * m + off] = numerics::to_cdouble(cm * sum * C(sqrt_nfact));
  }
  return out;
}

// The z^(2m+off) coefficient is (-c)^m/m! 2F1(-m, b; lower; 2). Gauss's
// contiguous relation in the first parameter gives
//   (lower + m) F_{m+1} = (lower - 2b) F_m + m F_{m-1},
// whose two solutions differ only by a power of m, so the forward recurrence
// loses O(log m) digits instead of the O(m) of the alternating sum.
template <class C>
std::vector<C> fb_coeffs_recurrence(const AmpSquaredParams& p, Parity parity, std::size_t dim) {
  using std::sqrt;
  using R = typename C::value_type;
  const bool odd = parity == Parity::odd;
  const C b = numerics::from_cdouble<C>(odd ? p.b + 0.5 : p.b);
  const C lower(odd ? 1.5 : 0.5);
  const C minus_c = -numerics::from_cdouble<C>(p.c);
  const std::size_t off = odd ? 1 : 0;
  std::vector<C> amps(dim, C(0));
  C f_prev(0), f(1);
  C scale(1);  // (-c)^m sqrt((2m+off)!)/m!
  for (std::size_t m = 0; 2 * m + off < dim; ++m) {
    amps[2 * m + off] = scale * f;
    const R mm(static_cast<double>(m));
    const C f_next = ((lower - C(2) * b) * f + C(mm) * f_prev) / (lower + C(mm));
    f_prev = f;
    f = f_next;
    const R n(static_cast<double>(2 * m + off));
    scale *= minus_c * C(sqrt((n + R(1)) * (n + R(2))) / (mm + R(1)));
  }
  return amps;
}

// Runs the recurrence in Lo and Hi = twice the digits and measures agreement.
template <class Lo, class Hi>
FbCoeffs fb_coeffs_checked(const AmpSquaredParams& p, Parity parity, std::size_t dim, unsigned lo_digits) {
  using std::abs;
  using std::log10;
  using R = typename Hi::value_type;
  const auto lo = fb_coeffs_recurrence<Lo>(p, parity, dim);
  const auto hi = fb_coeffs_recurrence<Hi>(p, parity, dim);
  R peak(0);
  for (const auto& x : hi) peak = std::max(peak, R(abs(x)));
  R worst(0);
  FbCoeffs out;
  out.amps.resize(dim);
  for (std::size_t n = 0; n < dim; ++n) {
    const Hi l(R(lo[n].real()), R(lo[n].imag()));
    // Relative error, floored far below anything a double state resolves.
    const R scale = std::max(R(abs(hi[n])), peak * R(1e-40));
    if (scale > R(0)) worst = std::max(worst, R(abs(l - hi[n]) / scale));
    out.amps[n] = numerics::to_cdouble(hi[n]);
  }
  const double agree = worst > R(0) ? -static_cast<double>(log10(worst)) : static_cast<double>(lo_digits);
  out.loss_digits = std::max(0.0, static_cast<double>(lo_digits) - agree);
  return out;
}

using complex200 = mp::cpp_complex<200>;
using complex400 = mp::cpp_complex<400>;
using complex800 = mp::cpp_complex<800>;

}  // namespace

Amp2FbResult amp2_fb_solution_detail(const AmpSquaredParams& p, Parity parity, std::size_t dim) {
  if (dim == 0) throw DomainError("amp2_fb_solution: dim must be positive");
  static constexpr unsigned kTiers[] = {50, 100, 200, 400};
  for (unsigned digits : kTiers) {
    FbCoeffs r;
    switch (digits) {
      case 50: r = fb_coeffs_checked<numerics::complex50, numerics::complex100>(p, parity, dim, 50); break;
      case 100: r = fb_coeffs_checked<numerics::complex100, complex200>(p, parity, dim, 100); break;
      case 200: r = fb_coeffs_checked<complex200, complex400>(p, parity, dim, 200); break;
      default: r = fb_coeffs_checked<complex400, complex800>(p, parity, dim, 400); break;
    }
    if (static_cast<double>(digits) - r.loss_digits >= 17.0) {
      Amp2FbResult res;
      res.state = bargmann::EntireState(fock::FockVector(std::move(r.amps)));
      res.digits = digits;
      res.loss_digits = r.loss_digits;
      return res;
    }
  }
  throw ConvergenceError("amp2_fb_solution: recurrence error exceeds the largest precision tier", 0.0, 0.0,
                         dim);
}

Amp2FbResult amp2_fb_solution_cauchy(const AmpSquaredParams& p, Parity parity, std::size_t dim) {
  if (dim == 0) throw DomainError("amp2_fb_solution: dim must be positive");
  const double m_max = static_cast<double>(dim / 2);
  const double predicted = m_max * std::log10(3.0) + 17.0;
  static constexpr unsigned kTiers[] = {50, 100, 200, 400, 800};
  for (unsigned digits : kTiers) {
    if (digits < predicted && digits != kTiers[std::size(kTiers) - 1]) continue;
    FbCoeffs r;
    switch (digits) {
      case 50: r = fb_coeffs_cauchy<numerics::complex50>(p, parity, dim); break;
      case 100: r = fb_coeffs_cauchy<numerics::complex100>(p, parity, dim); break;
      case 200: r = fb_coeffs_cauchy<complex200>(p, parity, dim); break;
      case 400: r = fb_coeffs_cauchy<complex400>(p, parity, dim); break;
      default: r = fb_coeffs_cauchy<complex800>(p, parity, dim); break;
    }
    if (static_cast<double>(digits) - r.loss_digits >= 17.0) {
      Amp2FbResult res;
      res.state = bargmann::EntireState(fock::FockVector(std::move(r.amps)));
      res.digits = digits;
      res.loss_digits = r.loss_digits;
      return res;
    }
  }
  throw ConvergenceError("amp2_fb_solution: cancellation exceeds the largest precision tier", 0.0, 0.0,
                         dim);
}

bargmann::EntireState amp2_fb_solution(const AmpSquaredParams& p, Parity parity, std::size_t dim) {
  return amp2_fb_solution_detail(p, parity, dim).state;
}

std::size_t amp2_dim_for_tail(const AmpSquaredParams& p, Parity parity, double tail_tol) {
  // Amplitudes decay like |s|^(n/2); start from that estimate and confirm.
  std::size_t dim = 32;
  const double as = std::abs(p.s);
  if (as > 0.0) {
    const double est = 1.4 * std::log(tail_tol) / std::log(as) + 24.0;
    dim = std::max<std::size_t>(dim, static_cast<std::size_t>(std::ceil(est)));
  }
  dim += dim % 2;
  for (int iter = 0; iter < 6; ++iter) {
    const auto psi = amp2_fb_solution(p, parity, dim);
    if (psi.fock().tail_mass(0.1) < tail_tol) return dim;
    dim = dim + dim / 2;
    dim += dim % 2;
  }
  throw ConvergenceError("amp2_dim_for_tail: tail mass did not reach the tolerance", 0.0, 0.0, dim);
}

fock::FockVector amp2_presqueeze(const AmpSquaredParams& p, Parity parity) {
  const bool odd = parity == Parity::odd;
  const cdouble b = odd ? p.b + 0.5 : p.b;
  const double lower = odd ? 1.5 : 0.5;
  const std::size_t off = odd ? 1 : 0;
  constexpr std::size_t kMaxDim = 40000;
  std::vector<cdouble> pre;
  cdouble cur = 1.0;
  double peak = 1.0;
  std::size_t m = 0;
  for (;; ++m) {
    const std::size_t n = 2 * m + off;
    if (n >= kMaxDim) throw ConvergenceError("amp2_presqueeze: amplitudes decay too slowly", cur, 0.0, n);
    pre.resize(n + 1);
    pre[n] = cur;
    peak = std::max(peak, std::abs(cur));
    const double mm = static_cast<double>(m);
    const double nn = static_cast<double>(n);
    const cdouble ratio = (b + mm) * p.v * std::sqrt((nn + 1.0) * (nn + 2.0)) / ((lower + mm) * (mm + 1.0));
    if (std::abs(cur) < 1e-18 * peak && std::abs(ratio) < 1.0) break;
    if (cur == cdouble{} && m > 0) break;
    cur *= ratio;
  }
  return fock::FockVector(std::move(pre));
}

Amp2SqueezedResult amp2_squeezed_form_detail(const AmpSquaredParams& p, Parity parity, std::size_t dim) {
  if (dim == 0) throw DomainError("amp2_squeezed_form: dim must be positive");
  const fock::FockVector pre = amp2_presqueeze(p, parity);
  Amp2SqueezedResult out;
  out.presqueeze_norm_sq = pre.norm_squared();
  out.work_dim = std::max(dim, pre.dim() + pre.dim() / 10 + 64);
  fock::FockVector sq = fock::apply_squeeze(pre, p.xi, out.work_dim);
  sq *= 1.0 / std::sqrt(amp2_norm_inv_sq(p, parity));
  out.state = bargmann::EntireState(sq.resized(dim));
  return out;
}

bargmann::EntireState amp2_squeezed_form(const AmpSquaredParams& p, Parity parity, std::size_t dim) {
  return amp2_squeezed_form_detail(p, parity, dim).state;
}

namespace {

template <class C>
C hyp2f1_conj_pair(cdouble a, double c, double x, double rel_tol) {
  numerics::SeriesControl ctl;
  ctl.rel_tol = rel_tol;
  ctl.max_terms = 200000;
  return numerics::hyp2f1(numerics::from_cdouble<C>(a), numerics::from_cdouble<C>(std::conj(a)),
                          C(c), C(x), ctl);
}

double hyp2f1_pair(cdouble a, double c, double x, numerics::Precision prec) {
  if (prec == numerics::Precision::extended)
    return numerics::to_cdouble(hyp2f1_conj_pair<numerics::complex50>(a, c, x, 1e-30)).real();
  return hyp2f1_conj_pair<cdouble>(a, c, x, 1e-16).real();
}

}  // namespace

double amp2_norm_inv_sq(const AmpSquaredParams& p, Parity parity, numerics::Precision prec) {
  const double X = p.four_v_sq();
  if (parity == Parity::even) return hyp2f1_pair(p.b, 0.5, X, prec);
  return hyp2f1_pair(p.b + 0.5, 1.5, X, prec);
}

double amp2_mean_photon_formula(const AmpSquaredParams& p, bool use_v) {
  const double lp = std::abs(p.lambda + 1.0), lm = std::abs(p.lambda - 1.0);
  const double K = std::abs(p.lambda * p.lambda - 1.0) / p.lambda.real();
  const double r = (lp - lm) / (lp + lm);
  const double X = use_v ? p.four_v_sq() : p.four_c_sq();
  const auto ext = numerics::Precision::extended;
  const double ratio = hyp2f1_pair(p.b + 1.0, 1.5, X, ext) / hyp2f1_pair(p.b, 0.5, X, ext);
  return 4.0 * std::norm(p.b) * K * r * r * ratio - 2.0 * K * p.b.real() + lm / (lp - lm);
}

MeanPhotonReport amp2_mean_photon_even(const AmpSquaredParams& p, double rel_tol) {
  MeanPhotonReport rep;
  rep.printed = amp2_mean_photon_formula(p, false);
  rep.variant = amp2_mean_photon_formula(p, true);
  const std::size_t dim = amp2_dim_for_tail(p, Parity::even, 1e-20);
  // With 4|v|^2 close to 1 the presqueeze vector gets too long to squeeze
  // (the cost is quadratic in its length); the Taylor route is used instead.
  constexpr std::size_t kMaxSqueezeDim = 4000;
  bool squeezable = false;
  try {
    squeezable = amp2_presqueeze(p, Parity::even).dim() <= kMaxSqueezeDim;
  } catch (const ConvergenceError&) {
  }
  if (squeezable) {
    rep.numeric = bargmann::moment(amp2_squeezed_form(p, Parity::even, dim), 1, 1).real();
    rep.numeric_source = "squeezed_form";
  } else {
    rep.numeric = bargmann::moment(amp2_fb_solution(p, Parity::even, dim), 1, 1).real();
    rep.numeric_source = "fb_series";
  }
  const auto close = [&](double x) {
    return std::abs(x - rep.numeric) <= rel_tol * std::max(1.0, std::abs(rep.numeric));
  };
  rep.printed_matches = close(rep.printed);
  rep.variant_matches = close(rep.variant);
  if (rep.printed_matches && !rep.variant_matches) {
    rep.matched = "4|c|^2";
    rep.value = rep.printed;
  } else if (rep.variant_matches && !rep.printed_matches) {
    rep.matched = "4|v|^2";
    rep.value = rep.variant;
  } else if (rep.variant_matches && rep.printed_matches) {
    rep.matched = "both";
    rep.value = rep.variant;
  } else {
    throw Error("amp2_mean_photon_even: neither closed form matches the numerical <n>: 4|c|^2 form " +
                std::to_string(rep.printed) + ", 4|v|^2 form " + std::to_string(rep.variant) + ", numeric " +
                std::to_string(rep.numeric));
  }
  return rep;
}

uncertainty::UncertaintyReport amp2_uncertainty(const AmpSquaredParams& p, Parity parity, std::size_t dim) {
  if (dim == 0) dim = amp2_dim_for_tail(p, parity, 1e-18);
  const auto psi = amp2_fb_solution(p, parity, dim);
  const cdouble f[] = {0.0, 0.0, 1.0};
  return uncertainty::uncertainty_report(psi.fock(), std::span<const cdouble>(f));
}

}  // namespace squeezelab::analytic
