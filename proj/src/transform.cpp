#include "dunkl/transform.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "dunkl/dunkl_operator.hpp"
#include "dunkl/error.hpp"
#include "dunkl/parallel.hpp"
#include "dunkl/special_functions.hpp"

namespace dunkl {

namespace {

// Wynn-ε extrapolation of a sequence of partial sums; returns the deepest
// even-column entry of the table.
cplx wynn_epsilon(const std::vector<cplx>& s) {
  const std::size_t n = s.size();
  if (n < 3) return s.back();
  std::vector<cplx> prev(n + 1, 0.0), cur(s.begin(), s.end());
  cplx best = s.back();
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<cplx> next(n - k);
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      const cplx d = cur[i + 1] - cur[i];
      if (d == cplx(0.0)) return (k % 2 == 1) ? cur[i + 1] : best;
      next[i] = prev[i + 1] + 1.0 / d;
    }
    prev = cur;
    cur = next;
    if (k % 2 == 0) best = cur.back();
  }
  return best;
}

struct TailParts {
  cplx even{0.0}, odd{0.0};
};

// 2 c_λ ∫_S^∞ [h_e(s) j_{λ-1/2}(sw), h_o(s) s w j_{λ+1/2}(sw)/(2λ+1)] s^{2λ} ds.
TailParts tail_parts(const DunklParameter& param, const DunklKernel& E, const Profile& h, double S, double w) {
  const PanelRules& pr = panel_rules(param.lambda, 16);
  const double tl = 2.0 * param.lambda;
  const double pref = 2.0 * param.c_lambda;
  auto panel = [&](double a, double b) {
    TailParts r;
    const double len = b - a;
    for (std::size_t j = 0; j < pr.gl_x.size(); ++j) {
      const double s = a + len * pr.gl_x[j];
      const cplx hp = h(s), hm = h(-s);
      const double wt = pref * len * pr.gl_w[j] * std::pow(s, tl);
      r.even += wt * 0.5 * (hp + hm) * E.even(s * w);
      r.odd += wt * 0.5 * (hp - hm) * E.odd(s * w);
    }
    return r;
  };

  TailParts sum;
  double a = S;
  // Geometric panels while a panel spans less than ~1.3 periods.
  for (int k = 0; k < 60 && a * w < 8.0; ++k) {
    const TailParts p = panel(a, 2.0 * a);
    sum.even += p.even;
    sum.odd += p.odd;
    a *= 2.0;
    if (std::abs(p.even) + std::abs(p.odd) < 1e-18 * (std::abs(sum.even) + std::abs(sum.odd)) ||
        std::abs(p.even) + std::abs(p.odd) < 1e-300)
      return sum;
  }
  if (w == 0.0) return sum;
  // Half-period panels, partial sums extrapolated.
  const double L = std::numbers::pi / w;
  std::vector<cplx> se{sum.even}, so{sum.odd};
  cplx last_e = sum.even, last_o = sum.odd;
  for (int n = 0; n < 400; ++n) {
    const TailParts p = panel(a + n * L, a + (n + 1) * L);
    se.push_back(se.back() + p.even);
    so.push_back(so.back() + p.odd);
    if (n < 6) continue;
    const std::size_t keep = std::min<std::size_t>(se.size(), 24);
    const std::vector<cplx> we(se.end() - keep, se.end()), wo(so.end() - keep, so.end());
    const cplx ee = wynn_epsilon(we), eo = wynn_epsilon(wo);
    const double scale = std::abs(ee) + std::abs(eo) + 1e-300;
    const double change = std::abs(ee - last_e) + std::abs(eo - last_o);
    last_e = ee;
    last_o = eo;
    if (change < 1e-15 * scale || change < 1e-19) return {ee, eo};
  }
  return {last_e, last_o};
}

}  // namespace

cplx oscillatory_tail(const DunklParameter& param, const Profile& h, double S, double w, int sigma) {
  const DunklKernel E(param);
  const TailParts p = tail_parts(param, E, h, S, std::fabs(w));
  const double sw = (w >= 0.0) ? 1.0 : -1.0;
  return p.even + cplx(0.0, sigma * sw) * p.odd;
}

TransformPlan::TransformPlan(const DunklParameter& param, GridPtr x_grid, GridPtr xi_grid)
    : param_(param), x_grid_(std::move(x_grid)), xi_grid_(std::move(xi_grid)) {
  if (x_grid_->lambda() != param.lambda || xi_grid_->lambda() != param.lambda)
    throw Error(ErrorCode::PreconditionViolated, "grids were built for a different lambda");
  mx_ = x_grid_->half_size();
  mk_ = xi_grid_->half_size();
  even_.resize(mx_ * mk_);
  odd_.resize(mx_ * mk_);
  const DunklKernel E(param_);
  const auto& xs = x_grid_->nodes();
  const auto& ks = xi_grid_->nodes();
  parallel_for(mk_, [&](std::size_t k) {
    const double xi = ks[mk_ + k];
    for (std::size_t j = 0; j < mx_; ++j) {
      const double z = xi * xs[mx_ + j];
      even_[k * mx_ + j] = E.even(z);
      odd_[k * mx_ + j] = E.odd(z);
    }
  });
}

std::vector<cplx> TransformPlan::apply(const SampledFunction& f, bool to_frequency) const {
  const WeightedGrid& src = to_frequency ? *x_grid_ : *xi_grid_;
  const WeightedGrid& dst = to_frequency ? *xi_grid_ : *x_grid_;
  if (&f.grid() != &src && f.grid().nodes() != src.nodes())
    throw Error(ErrorCode::PreconditionViolated, "input is not sampled on the plan's grid");
  const std::size_t ms = src.half_size(), md = dst.half_size();
  const auto& v = f.values();
  const auto& w = src.weights();
  std::vector<cplx> fe(ms), fo(ms);
  for (std::size_t j = 0; j < ms; ++j) {
    const cplx p = v[ms + j], m = v[ms - 1 - j];
    fe[j] = w[ms + j] * 0.5 * (p + m);
    fo[j] = w[ms + j] * 0.5 * (p - m);
  }
  std::vector<cplx> ae(md, 0.0), ao(md, 0.0);
  if (to_frequency) {
    parallel_for(md, [&](std::size_t k) {
      const double* re = &even_[k * mx_];
      const double* ro = &odd_[k * mx_];
      cplx se = 0.0, so = 0.0;
      for (std::size_t j = 0; j < ms; ++j) {
        se += re[j] * fe[j];
        so += ro[j] * fo[j];
      }
      ae[k] = 2.0 * se;
      ao[k] = 2.0 * so;
    });
  } else {
    for (std::size_t k = 0; k < ms; ++k) {
      const double* re = &even_[k * mx_];
      const double* ro = &odd_[k * mx_];
      for (std::size_t j = 0; j < md; ++j) {
        ae[j] += 2.0 * re[j] * fe[k];
        ao[j] += 2.0 * ro[j] * fo[k];
      }
    }
  }

  // Contribution of |s| > truncation for profiles with slow decay.
  if (f.has_profile() && f.tail_matters()) {
    const DunklKernel E(param_);
    const auto& dn = dst.nodes();
    parallel_for(md, [&](std::size_t k) {
      const TailParts p = tail_parts(param_, E, f.profile(), src.truncation(), dn[md + k]);
      ae[k] += p.even;
      ao[k] += p.odd;
    }, 1);
  } else if (!f.has_profile()) {
    double peak = 0.0;
    for (const auto& x : v) peak = std::max(peak, std::abs(x));
    const double edge = std::max(std::abs(v.front()), std::abs(v.back()));
    if (edge > 1e-12 * peak) {
      std::ostringstream os;
      os << "samples at the truncation are " << edge / peak << " of the peak; enlarge the domain or attach a profile";
      throw Error(ErrorCode::TruncationTooTight, os.str());
    }
  }

  // Forward kernel E(-ixξ) = je - i·odd; inverse kernel E(ixξ) = je + i·odd.
  const double sigma = to_frequency ? -1.0 : 1.0;
  std::vector<cplx> out(2 * md);
  for (std::size_t k = 0; k < md; ++k) {
    out[md + k] = ae[k] + cplx(0.0, sigma) * ao[k];
    out[md - 1 - k] = ae[k] - cplx(0.0, sigma) * ao[k];
  }
  return out;
}

Spectrum TransformPlan::forward(const SampledFunction& f) const { return Spectrum(xi_grid_, apply(f, true)); }

SampledFunction TransformPlan::inverse(const Spectrum& g) const { return SampledFunction(x_grid_, apply(g, false)); }

std::shared_ptr<const TransformPlan> transform_plan(const DunklParameter& param, const GridPtr& x_grid,
                                                    const GridPtr& xi_grid) {
  struct Entry {
    std::weak_ptr<const WeightedGrid> x, xi;
    std::shared_ptr<const TransformPlan> plan;
  };
  static std::mutex mu;
  static std::vector<Entry> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    for (const auto& e : cache)
      if (e.x.lock() == x_grid && e.xi.lock() == xi_grid && e.plan->param().lambda == param.lambda) return e.plan;
  }
  auto plan = std::make_shared<const TransformPlan>(param, x_grid, xi_grid);
  std::lock_guard<std::mutex> lock(mu);
  std::erase_if(cache, [](const Entry& e) { return e.x.expired() || e.xi.expired(); });
  if (cache.size() >= 6) cache.erase(cache.begin());
  cache.push_back({x_grid, xi_grid, plan});
  return plan;
}

Spectrum forward(const DunklParameter& param, const SampledFunction& f, const GridPtr& xi_grid) {
  return transform_plan(param, f.grid_ptr(), xi_grid)->forward(f);
}

SampledFunction inverse(const DunklParameter& param, const Spectrum& g, const GridPtr& x_grid) {
  return transform_plan(param, x_grid, g.grid_ptr())->inverse(g);
}

double relative_l2_error(const SampledFunction& g, const SampledFunction& f) {
  if (g.values().size() != f.values().size())
    throw Error(ErrorCode::PreconditionViolated, "functions live on different grids");
  const auto& w = f.grid().weights();
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    num += w[i] * std::norm(g.values()[i] - f.values()[i]);
    den += w[i] * std::norm(f.values()[i]);
  }
  if (den == 0.0) throw Error(ErrorCode::ZeroFunction, "reference function vanishes");
  return std::sqrt(num / den);
}

double plancherel_defect(const DunklParameter& param, const SampledFunction& f, GridPtr xi_grid) {
  if (!xi_grid) xi_grid = f.grid_ptr();
  const double nf = f.norm(2.0);
  if (nf == 0.0) throw Error(ErrorCode::ZeroFunction, "Plancherel defect of the zero function");
  const Spectrum F = forward(param, f, xi_grid);
  return std::fabs(F.norm(2.0) - nf) / nf;
}

double derivative_multiplier_defect(const DunklParameter& param, const SampledFunction& f, GridPtr xi_grid) {
  if (!xi_grid) xi_grid = f.grid_ptr();
  const SampledFunction Df = apply_D(param, f);
  const SampledFunction plain(f.grid_ptr(), f.values());
  const Spectrum lhs = forward(param, Df, xi_grid);
  const Spectrum rhs = forward(param, plain, xi_grid);
  double worst = 0.0;
  const auto& xi = xi_grid->nodes();
  for (std::size_t k = 0; k < xi.size(); ++k)
    worst = std::max(worst, std::abs(lhs.values()[k] - cplx(0.0, xi[k]) * rhs.values()[k]));
  return worst;
}

double hausdorff_young_ratio(const DunklParameter& param, const SampledFunction& f, double p, GridPtr xi_grid) {
  if (!(p >= 1.0 && p <= 2.0)) throw Error(ErrorCode::PreconditionViolated, "Hausdorff-Young needs p in [1, 2]");
  if (!xi_grid) xi_grid = f.grid_ptr();
  const double nf = f.norm(p);
  if (nf == 0.0) throw Error(ErrorCode::ZeroFunction, "Hausdorff-Young ratio of the zero function");
  const double q = (p == 1.0) ? std::numeric_limits<double>::infinity() : p / (p - 1.0);
  return forward(param, f, xi_grid).norm(q) / nf;
}

}  // namespace dunkl
