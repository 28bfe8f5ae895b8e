#include "dunkl/special_functions.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "dunkl/error.hpp"

namespace dunkl {

namespace {

using mp_real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<80>>;

constexpr double kSeriesRadius = 60.0;

cplx series_j(double alpha, cplx z) {
  // t_n = t_{n-1} · (-(z/2)^2) / (n (n + α)), t_0 = 1.
  const mp_real zr = z.real() / 2, zi = z.imag() / 2;
  const mp_real qr = -(zr * zr - zi * zi), qi = -(2 * zr * zi);
  mp_real tr = 1, ti = 0, sr = 1, si = 0;
  const mp_real eps = mp_real(1e-40);
  const double zabs = std::abs(z);
  for (int n = 1; n < 10000; ++n) {
    const mp_real den = mp_real(n) * (mp_real(n) + alpha);
    const mp_real nr = (tr * qr - ti * qi) / den;
    const mp_real ni = (tr * qi + ti * qr) / den;
    tr = nr;
    ti = ni;
    sr += tr;
    si += ti;
    if (n > zabs && abs(tr) + abs(ti) < eps * (abs(sr) + abs(si) + mp_real(1e-300))) break;
  }
  return {static_cast<double>(sr), static_cast<double>(si)};
}

}  // namespace

cplx bessel_j_normalized(double alpha, cplx z) {
  if (!(alpha > -1.0)) throw Error(ErrorCode::PreconditionViolated, "Bessel order must exceed -1");
  if (std::abs(z) <= kSeriesRadius) return series_j(alpha, z);
  if (z.imag() == 0.0) return NormalizedBessel(alpha)(z.real());
  std::ostringstream os;
  os << "complex argument " << z << " beyond the series radius " << kSeriesRadius;
  throw Error(ErrorCode::ArgumentTooLarge, os.str());
}

NormalizedBessel::NormalizedBessel(double alpha)
    : alpha_(alpha), log_prefactor_(alpha * std::numbers::ln2 + std::lgamma(alpha + 1.0)) {
  if (!(alpha > -1.0)) throw Error(ErrorCode::PreconditionViolated, "Bessel order must exceed -1");
}

double NormalizedBessel::operator()(double x) const {
  const double ax = std::fabs(x);
  if (ax < 2.0) {
    // Short alternating series; terms shrink geometrically for |x| < 2.
    const double q = -0.25 * ax * ax;
    double term = 1.0, sum = 1.0;
    for (int n = 1; n < 60; ++n) {
      term *= q / (n * (n + alpha_));
      sum += term;
      if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
    }
    return sum;
  }
  return std::exp(log_prefactor_ - alpha_ * std::log(ax)) * boost::math::cyl_bessel_j(alpha_, ax);
}

KernelEvaluation dunkl_kernel(const DunklParameter& param, cplx z, KernelMethod method) {
  const double lam = param.lambda;
  if (method == KernelMethod::Laplace && z.imag() == 0.0) {
    const double x = z.real();
    auto laplace = [&](int n) {
      const JacobiRule rule = build_jacobi_rule(param, n);
      cplx acc = 0.0;
      for (std::size_t k = 0; k < rule.nodes.size(); ++k)
        acc += rule.weights[k] * std::polar(1.0, x * rule.nodes[k]);
      return param.c_prime * acc;
    };
    const int n = 64 + static_cast<int>(std::ceil(std::fabs(x)));
    const cplx v = laplace(n);
    const cplx v2 = laplace(n + 32);
    return {v2, KernelMethod::Laplace, std::abs(v2 - v) + 1e-15};
  }
  if (std::abs(z) > kSeriesRadius && z.imag() != 0.0) {
    std::ostringstream os;
    os << "no accurate branch for complex argument " << z;
    throw Error(ErrorCode::ArgumentTooLarge, os.str());
  }
  const cplx je = bessel_j_normalized(lam - 0.5, z);
  const cplx jo = bessel_j_normalized(lam + 0.5, z);
  const cplx v = je + cplx(0.0, 1.0) * z / (2.0 * lam + 1.0) * jo;
  return {v, KernelMethod::Series, 1e-15 * (1.0 + std::abs(v))};
}

DunklKernel::DunklKernel(const DunklParameter& param)
    : je_(param.lambda - 0.5), jo_(param.lambda + 0.5), inv_(1.0 / (2.0 * param.lambda + 1.0)) {}

cplx DunklKernel::operator()(double x) const { return {even(x), odd(x)}; }

double dunkl_kernel_eigen_residual(const DunklParameter& param, double x, double xi, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::PreconditionViolated, "step must be positive");
  const DunklKernel E(param);
  auto f = [&](double s) { return E(s * xi); };
  const cplx deriv = (f(x + h) - f(x - h)) / (2.0 * h);
  cplx Df;
  if (x == 0.0) {
    Df = (1.0 + 2.0 * param.lambda) * deriv;
  } else {
    Df = deriv + (param.lambda / x) * (f(x) - f(-x));
  }
  return std::abs(Df - cplx(0.0, xi) * f(x));
}

AngularIntegral::AngularIntegral(double lambda) : lambda_(lambda) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::NonPositiveLambda, "angular integral needs lambda > 0");
  const double lg_l = std::lgamma(lambda), lg_l1 = std::lgamma(lambda + 1.0);
  const double lg_2l1 = std::lgamma(2.0 * lambda + 1.0);
  k0_ = std::exp(2.0 * lambda * std::numbers::ln2 + lg_l + lg_l1 - lg_2l1);
  g_even_0_ = std::exp(lg_2l1 - 2.0 * lg_l1);
  g_even_1_ = std::exp(lg_2l1 - 2.0 * lg_l);
  g_odd_ = std::exp(lg_2l1 - lg_l1 - lg_l);
  psi_lam_ = boost::math::digamma(lambda);
}

double AngularIntegral::F_even(double w) const {
  const double a = lambda_;
  double term = 1.0, sum = 1.0;
  for (int n = 0; n < 400; ++n) {
    term *= (a + n) * (a + n) / ((2.0 * a + 1.0 + n) * (n + 1.0)) * w;
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

double AngularIntegral::F_odd(double w) const {
  const double a = lambda_;
  double term = 1.0, sum = 1.0;
  for (int n = 0; n < 400; ++n) {
    term *= (a + 1.0 + n) * (a + n) / ((2.0 * a + 1.0 + n) * (n + 1.0)) * w;
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

double AngularIntegral::operator()(double y, double x, double t) const {
  const double a = lambda_;
  const double ax = std::fabs(x), at = std::fabs(t);
  const double dm = ax - at, dp = ax + at;
  const double am = y * y + dm * dm;  // A - |B|
  const double ap = y * y + dp * dp;  // A + |B|
  if (ap == 0.0) return std::numeric_limits<double>::infinity();
  const double w = 4.0 * ax * at / ap;
  const double u = am / ap;  // 1 - w without cancellation
  const bool same_sign = (x >= 0.0) == (t >= 0.0) || ax == 0.0 || at == 0.0;
  constexpr double euler = 0.57721566490153286061;

  if (same_sign) {
    if (am == 0.0) return std::numeric_limits<double>::infinity();
    double F;
    if (w <= 0.5) {
      F = F_even(w);
    } else {
      const double L = std::log(u);
      double cn = 1.0, un = 1.0, S = 0.0;
      double psi1 = -euler, psi2 = 1.0 - euler, psia = psi_lam_ + 1.0 / a;
      for (int n = 0; n < 400; ++n) {
        const double term = cn * un * (L - psi1 - psi2 + 2.0 * psia);
        S += term;
        if (n > 2 && std::fabs(term) < 1e-17 * std::fabs(S)) break;
        cn *= (a + 1.0 + n) * (a + 1.0 + n) / ((n + 1.0) * (n + 2.0));
        un *= u;
        psi1 += 1.0 / (n + 1.0);
        psi2 += 1.0 / (n + 2.0);
        psia += 1.0 / (a + 1.0 + n);
      }
      F = g_even_0_ + u * g_even_1_ * S;
    }
    return k0_ * F / (am * std::pow(ap, a));
  }

  double F;
  if (w <= 0.5) {
    F = F_odd(w);
  } else {
    if (u == 0.0) return std::numeric_limits<double>::infinity();
    const double L = std::log(u);
    double dn = 1.0, un = 1.0, S = 0.0;
    double psi1 = -euler, psia1 = psi_lam_ + 1.0 / a, psia = psi_lam_;
    for (int n = 0; n < 400; ++n) {
      const double term = dn * un * (2.0 * psi1 - psia1 - psia - L);
      S += term;
      if (n > 2 && std::fabs(term) < 1e-17 * std::fabs(S)) break;
      dn *= (a + 1.0 + n) * (a + n) / ((n + 1.0) * (n + 1.0));
      un *= u;
      psi1 += 1.0 / (n + 1.0);
      psia1 += 1.0 / (a + 1.0 + n);
      psia += 1.0 / (a + n);
    }
    F = g_odd_ * S;
  }
  return k0_ * F / std::pow(ap, a + 1.0);
}

double angular_integral_quadrature(double lambda, double y, double x, double t, int panel_order) {
  const double ax = std::fabs(x), at = std::fabs(t);
  const double sgn = ((x >= 0.0) == (t >= 0.0)) ? 1.0 : -1.0;
  return angular_integral_quadrature_ab(lambda, y * y + (ax - at) * (ax - at), sgn * 2.0 * ax * at, panel_order);
}

double angular_integral_quadrature_ab(double lambda, double am, double b, int panel_order) {
  const double bb = std::fabs(b);
  const bool same_sign = b >= 0.0;
  // Substitute u = 1 - s·sgn(B): A - Bs = (A - |B|) + |B| u and the weight
  // becomes u^β (2-u)^γ.
  const double beta = same_sign ? lambda - 1.0 : lambda;
  const double gam = same_sign ? lambda : lambda - 1.0;
  auto core = [&](double u) { return std::pow(am + bb * u, -lambda - 1.0); };

  const double ustar = (bb > 0.0) ? am / bb : std::numeric_limits<double>::infinity();
  std::vector<double> edges{0.0};
  double e = std::min(1.0, std::max(ustar, 1e-300));
  while (e < 1.0) {
    edges.push_back(e);
    e *= 2.0;
  }
  edges.push_back(1.0);

  const GaussRule gl = gauss_legendre(panel_order);
  const GaussRule left = gauss_jacobi(panel_order, 0.0, beta);
  const GaussRule right = gauss_jacobi(panel_order, gam, 0.0);
  double total = 0.0;
  // Panel [0, e1] with u^β in the weight.
  {
    const double h = edges[1];
    const double fac = std::pow(0.5 * h, beta + 1.0);
    for (int j = 0; j < panel_order; ++j) {
      const double u = 0.5 * h * (1.0 + left.nodes[j]);
      total += fac * left.weights[j] * std::pow(2.0 - u, gam) * core(u);
    }
  }
  for (std::size_t k = 1; k + 1 < edges.size(); ++k) {
    const double a = edges[k], b = edges[k + 1];
    for (int j = 0; j < panel_order; ++j) {
      const double u = 0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[j];
      total += 0.5 * (b - a) * gl.weights[j] * std::pow(u, beta) * std::pow(2.0 - u, gam) * core(u);
    }
  }
  // Panel [1, 2] with (2-u)^γ in the weight.
  {
    const double fac = std::pow(0.5, gam + 1.0);
    for (int j = 0; j < panel_order; ++j) {
      const double u = 1.5 + 0.5 * right.nodes[j];
      total += fac * right.weights[j] * std::pow(u, beta) * core(u);
    }
  }
  return total;
}

}  // namespace dunkl
