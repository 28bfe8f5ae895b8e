#include "dunkl/dunkl_operator.hpp"

#include <cmath>
#include <sstream>

#include "dunkl/error.hpp"

namespace dunkl {

namespace {

void require_symmetric(const WeightedGrid& g) {
  const auto& x = g.nodes();
  for (std::size_t i = 0; i < g.half_size(); ++i)
    if (x[i] != -x[g.mirror(i)]) throw Error(ErrorCode::AsymmetricGrid, "node set is not closed under negation");
}

void require_interior(double x, double y, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::PreconditionViolated, "step must be positive");
  if (!(y - h > 0.0) || !(std::fabs(x) > h)) {
    std::ostringstream os;
    os << "stencil at (" << x << ", " << y << ") with step " << h << " leaves the open half plane or crosses x = 0";
    throw Error(ErrorCode::BoundaryPoint, os.str());
  }
}

}  // namespace

int scheme_order(const WeightedGrid& grid) { return grid.order(); }

SampledFunction apply_D(const DunklParameter& param, const SampledFunction& f) {
  const WeightedGrid& g = f.grid();
  require_symmetric(g);
  const auto& v = f.values();
  std::vector<cplx> d = g.differentiate(v);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] += (param.lambda / g.nodes()[i]) * (v[i] - v[g.mirror(i)]);
  return SampledFunction(f.grid_ptr(), std::move(d));
}

SampledFunction apply_D_squared(const DunklParameter& param, const SampledFunction& f) {
  const WeightedGrid& g = f.grid();
  require_symmetric(g);
  const auto& v = f.values();
  const std::vector<cplx> d1 = g.differentiate(v);
  std::vector<cplx> d2 = g.differentiate(d1);
  const double lam = param.lambda;
  for (std::size_t i = 0; i < d2.size(); ++i) {
    const double x = g.nodes()[i];
    d2[i] += (2.0 * lam / x) * d1[i] - (lam / (x * x)) * (v[i] - v[g.mirror(i)]);
  }
  return SampledFunction(f.grid_ptr(), std::move(d2));
}

double inverse_D_pointwise(const DunklParameter& param, const SampledFunction& g, double f0, double x) {
  if (x == 0.0) return f0;
  const double a = std::fabs(x), sg = (x > 0.0) ? 1.0 : -1.0;
  const PanelRules& pr = panel_rules(param.lambda, 16);
  const double tl = 2.0 * param.lambda;
  // Integrate in u = s·|x| panel by panel so interpolated samples are
  // integrated exactly on each grid panel.
  std::vector<double> cuts{0.0};
  if (!g.has_profile()) {
    for (double e : g.grid().edges())
      if (e > 0.0 && e < a) cuts.push_back(e);
  } else {
    for (double e = 1.0; e < a; e += 1.0) cuts.push_back(e);
  }
  cuts.push_back(a);
  double odd_part = 0.0, weighted_even = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = cuts[k], len = cuts[k + 1] - cuts[k];
    for (std::size_t j = 0; j < pr.gl_x.size(); ++j) {
      const double u = lo + len * pr.gl_x[j];
      const double gp = g(sg * u).real(), gm = g(-sg * u).real();
      odd_part += len * pr.gl_w[j] * (gp - gm);
      if (k > 0) weighted_even += len * pr.gl_w[j] * std::pow(u / a, tl) * (gp + gm);
    }
    if (k == 0) {
      // Power weight u^{2λ} carried by the Jacobi panel rule.
      const double fac = std::pow(len, tl + 1.0) / std::pow(a, tl);
      for (std::size_t j = 0; j < pr.gj_x.size(); ++j) {
        const double u = len * pr.gj_x[j];
        weighted_even += fac * pr.gj_w[j] * (g(u).real() + g(-u).real());
      }
    }
  }
  // ∫_{-1}^{1} (...) ds = (1/a) ∫_0^a (...) du.
  return f0 + 0.5 * x * (odd_part + weighted_even) / a;
}

double lambda_laplacian_residual(const DunklParameter& param, const HalfPlaneFunction& u, double x, double y,
                                 double h) {
  require_interior(x, y, h);
  const double lam = param.lambda;
  const double c = u(x, y);
  const double uxp = u(x + h, y), uxm = u(x - h, y);
  const double uyp = u(x, y + h), uym = u(x, y - h);
  const double uxx = (uxp - 2.0 * c + uxm) / (h * h);
  const double uyy = (uyp - 2.0 * c + uym) / (h * h);
  const double ux = (uxp - uxm) / (2.0 * h);
  const double refl = c - u(-x, y);
  return std::fabs(uxx + uyy + (2.0 * lam / x) * ux - (lam / (x * x)) * refl);
}

std::pair<double, double> cauchy_riemann_residuals(const DunklParameter& param, const HalfPlaneFunction& u,
                                                   const HalfPlaneFunction& v, double x, double y, double h) {
  require_interior(x, y, h);
  const double lam = param.lambda;
  auto Dx = [&](const HalfPlaneFunction& w) {
    return (w(x + h, y) - w(x - h, y)) / (2.0 * h) + (lam / x) * (w(x, y) - w(-x, y));
  };
  auto Dy = [&](const HalfPlaneFunction& w) { return (w(x, y + h) - w(x, y - h)) / (2.0 * h); };
  return {std::fabs(Dx(u) - Dy(v)), std::fabs(Dy(u) + Dx(v))};
}

}  // namespace dunkl
