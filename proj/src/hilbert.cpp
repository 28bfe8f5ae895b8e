#include "dunkl/hilbert.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "dunkl/error.hpp"
#include "dunkl/parallel.hpp"
#include "dunkl/transform.hpp"

namespace dunkl {

namespace {

// f off the grid: the profile when present, else panel interpolation inside
// [-X, X] and zero beyond (profile-less inputs are taken to have decayed).
struct PointValue {
  const SampledFunction& f;
  cplx operator()(double t) const {
    if (f.has_profile()) return f.profile()(t);
    if (std::fabs(t) <= f.grid().truncation()) return f.grid().interpolate(f.values(), t);
    return 0.0;
  }
};

// c_λ ∫ f(t) h(x, t) |t|^{2λ} dt with the window [lo, hi] handed to
// `window(a, b)` piece by piece. Panels away from ±x and the window use the
// stored samples; the rest are graded toward x and -x.
template <class Window>
cplx walk_panels(const PoissonKernels& k, const SampledFunction& f, double x, double lo, double hi,
                 const Window& window) {
  const WeightedGrid& g = f.grid();
  const double lam = g.lambda(), c = g.c_lambda();
  const Singularity sings[2] = {{x, 0.0}, {-x, 0.0}};
  const std::span<const Singularity> sp(sings, 2);
  const PanelOptions opt;
  const PointValue fv{f};
  // Panels at the minimum width can round a node onto ±x; that point has
  // measure zero and is dropped.
  auto fh = [&](double t) { return (t == x || t == -x) ? cplx(0.0) : fv(t) * k.hilbert(x, t); };

  auto panel = [&](double u, double v, const auto& fast) -> cplx {
    const double hw = 0.5 * (v - u);
    bool easy = v <= lo || u >= hi;
    for (const auto& s : sings) {
      const double dist = std::max({0.0, u - s.location, s.location - v});
      if (dist < opt.ratio * hw) easy = false;
    }
    if (easy) return fast();
    cplx acc = c * integrate_weighted(lam, u, std::min(v, lo), fh, sp);
    acc += c * integrate_weighted(lam, std::max(u, hi), v, fh, sp);
    const double a = std::max(u, lo), b = std::min(v, hi);
    if (b > a) acc += window(a, b);
    return acc;
  };

  const auto& edges = g.edges();
  const auto& xs = g.nodes();
  const auto& ws = g.weights();
  const std::size_t M = g.half_size();
  const std::size_t q = static_cast<std::size_t>(g.order());
  cplx acc = 0.0;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    for (int side = 0; side < 2; ++side) {
      const double u = side ? edges[p] : -edges[p + 1];
      const double v = side ? edges[p + 1] : -edges[p];
      acc += panel(u, v, [&] {
        cplx s = 0.0;
        for (std::size_t j = 0; j < q; ++j) {
          const std::size_t ip = M + p * q + j;
          const std::size_t i = side ? ip : g.mirror(ip);
          s += ws[i] * f.values()[i] * k.hilbert(x, xs[i]);
        }
        return s;
      });
    }
  }
  if (f.has_profile() && f.tail_matters()) {
    const auto& tn = g.tail_nodes();
    const auto& tw = g.tail_weights();
    const std::size_t T = tn.size() / 2;
    const double X = g.truncation();
    for (std::size_t p = 0; p * q < T; ++p) {
      const double u = X * std::ldexp(1.0, static_cast<int>(p)), v = 2.0 * u;
      for (int side = 0; side < 2; ++side) {
        acc += panel(side ? u : -v, side ? v : -u, [&] {
          cplx s = 0.0;
          for (std::size_t j = 0; j < q; ++j) {
            const std::size_t ip = T + p * q + j;
            const std::size_t i = side ? ip : tn.size() - 1 - ip;
            s += tw[i] * f.tail_values()[i] * k.hilbert(x, tn[i]);
          }
          return s;
        });
      }
    }
  }
  return acc;
}

double sup_abs(const SampledFunction& f) {
  double m = 0.0;
  for (const auto& v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

void check_levels(const std::vector<double>& ys) {
  if (ys.size() < 2) throw Error(ErrorCode::PreconditionViolated, "boundary extrapolation needs at least 2 levels");
  for (std::size_t k = 0; k < ys.size(); ++k) {
    if (!(ys[k] > 0.0)) throw Error(ErrorCode::NonPositiveY, "boundary levels must be positive");
    if (k > 0 && !(ys[k] < ys[k - 1]))
      throw Error(ErrorCode::PreconditionViolated, "boundary levels must decrease strictly");
  }
}

// Successive-level distances must shrink; `dist(k)` compares levels k, k+1.
template <class Dist>
void check_boundary_convergence(std::size_t levels, const Dist& dist) {
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < levels; ++k) {
    const double d = dist(k);
    if (d > prev) {
      std::ostringstream os;
      os << "distance between levels " << k << " and " << k + 1 << " is " << d << ", previous " << prev;
      throw Error(ErrorCode::NonConvergentBoundary, os.str());
    }
    prev = d;
  }
}

}  // namespace

double hilbert_kernel(const DunklParameter& param, double x, double t, KernelRoute route) {
  return PoissonKernels(param, route).hilbert(x, t);
}

void validate(const PVSchedule& s) {
  const auto& e = s.epsilons;
  auto fail = [](const std::string& why) { throw Error(ErrorCode::InvalidConfig, "PV schedule: " + why); };
  if (e.size() < 3) fail("needs at least 3 radii");
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (!(e[k] > 0.0) || !std::isfinite(e[k])) fail("radii must be positive");
    if (k > 0) {
      const double r = e[k - 1] / e[k];
      if (!(r >= 2.0 && r <= 4.0)) fail("successive radius ratios must lie in [2, 4]");
    }
  }
  if (s.extrapolation_order < 1 || static_cast<std::size_t>(s.extrapolation_order) >= e.size())
    fail("extrapolation order must be at least 1 and below the number of radii");
  if (!(s.tolerance > 0.0)) fail("tolerance must be positive");
}

cplx extrapolate_to_zero(const std::vector<double>& h, const std::vector<cplx>& v) {
  if (h.size() != v.size() || h.empty()) throw Error(ErrorCode::PreconditionViolated, "extrapolation needs matching samples");
  std::vector<cplx> p(v);
  const std::size_t n = h.size();
  for (std::size_t m = 1; m < n; ++m)
    for (std::size_t i = 0; i + m < n; ++i)
      p[i] = (h[i + m] * p[i] - h[i] * p[i + 1]) / (h[i + m] - h[i]);
  return p[0];
}

PVResult hilbert_pv(const DunklParameter& param, const SampledFunction& f, double x, const PVSchedule& schedule) {
  validate(schedule);
  const PoissonKernels k(param);
  PVResult r;
  const auto none = [](double, double) { return cplx(0.0); };
  // The excised integral is analytic in ε only while the window stays clear
  // of t = 0 and t = -x, and the kernel varies on the scale |x|/(2λ+1), so
  // radii shrink with |x| near the origin.
  std::vector<double> eps = schedule.epsilons;
  const double scale_x = 0.5 * std::fabs(x) / (2.0 * param.lambda + 1.0);
  const double shrink = (x == 0.0) ? 1.0 : std::min(1.0, scale_x / eps.front());
  for (double& e : eps) e *= shrink;
  for (double e : eps) r.excised.push_back(walk_panels(k, f, x, x - e, x + e, none));

  const std::size_t n = r.excised.size(), K = static_cast<std::size_t>(schedule.extrapolation_order);
  auto extrap = [&](std::size_t first, std::size_t count) {
    std::vector<double> h(eps.begin() + first, eps.begin() + first + count);
    std::vector<cplx> v(r.excised.begin() + first, r.excised.begin() + first + count);
    return extrapolate_to_zero(h, v);
  };
  r.value = extrap(n - K - 1, K + 1);
  const cplx other = (n >= K + 2) ? extrap(n - K - 2, K + 1) : extrap(n - K, K);
  r.error_estimate = std::abs(r.value - other);
  const double scale = sup_abs(f);
  if (r.error_estimate > schedule.tolerance * scale) {
    std::ostringstream os;
    os << "extrapolants at x = " << x << " differ by " << r.error_estimate << " (tolerance "
       << schedule.tolerance * scale << ")";
    throw Error(ErrorCode::NonConvergentPV, os.str());
  }
  return r;
}

cplx hilbert_at(const PoissonKernels& k, const SampledFunction& f, double x) {
  const WeightedGrid& g = f.grid();
  const double lam = g.lambda(), c = g.c_lambda();
  if (x == 0.0) {
    // h(0, ·) is odd, so pair t with -t: the integrand (f(t) - f(-t)) h(0, t)
    // |t|^{2λ} stays bounded at the origin and plain Gauss panels suffice.
    const PointValue fv{f};
    const PanelRules& pr = panel_rules(lam);
    auto odd_part = [&](double u, double v) {
      cplx s = 0.0;
      for (std::size_t j = 0; j < pr.gl_x.size(); ++j) {
        const double t = u + (v - u) * pr.gl_x[j];
        s += (v - u) * pr.gl_w[j] * (fv(t) - fv(-t)) * k.hilbert(0.0, t) * std::pow(t, 2.0 * lam);
      }
      return s;
    };
    cplx acc = 0.0;
    const auto& edges = g.edges();
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) acc += odd_part(edges[p], edges[p + 1]);
    if (f.has_profile() && f.tail_matters()) {
      const std::size_t panels = g.tail_nodes().size() / (2 * static_cast<std::size_t>(g.order()));
      for (std::size_t p = 0; p < panels; ++p) {
        const double u = g.truncation() * std::ldexp(1.0, static_cast<int>(p));
        acc += odd_part(u, 2.0 * u);
      }
    }
    return c * acc;
  }
  const double delta = std::min(1.0, 0.5 * std::fabs(x));
  const PointValue fv{f};
  const cplx fx = fv(x);
  const Singularity at_x[1] = {{x, 0.0}};
  const std::span<const Singularity> sp(at_x, 1);
  const double tl = 2.0 * lam;
  // Near t = x, c h(x, t) |t|^{2λ} = 1/(π (x - t)) + O(log|x - t|).
  auto subtracted = [&](double t) {
    if (t == x) return cplx(0.0);
    return c * fv(t) * k.hilbert(x, t) - fx / (std::numbers::pi * (x - t) * std::pow(std::fabs(t), tl));
  };
  auto window = [&](double a, double b) { return integrate_weighted(lam, a, b, subtracted, sp); };
  return walk_panels(k, f, x, x - delta, x + delta, window);
}

SampledFunction hilbert_multiplier(const DunklParameter& param, const SampledFunction& f, GridPtr xi_grid,
                                   bool extend_tail) {
  if (!xi_grid) xi_grid = f.grid_ptr();
  const Spectrum F = forward(param, f, xi_grid);
  std::vector<cplx> m(F.values());
  const auto& xi = xi_grid->nodes();
  for (std::size_t i = 0; i < m.size(); ++i) m[i] *= (xi[i] > 0.0) ? cplx(0.0, -1.0) : cplx(0.0, 1.0);
  SampledFunction core = inverse(param, Spectrum(xi_grid, std::move(m)), f.grid_ptr());
  if (!extend_tail) return core;
  const PoissonKernels k(param);
  const auto& tn = f.grid().tail_nodes();
  std::vector<cplx> tail(tn.size());
  parallel_for(tn.size(), [&](std::size_t i) { tail[i] = hilbert_at(k, f, tn[i]); }, 4);
  return SampledFunction::with_tail(f.grid_ptr(), core.values(), std::move(tail));
}

std::vector<cplx> hilbert_boundary_at(const DunklParameter& param, const SampledFunction& f,
                                      const std::vector<double>& x_points, const std::vector<double>& ys) {
  check_levels(ys);
  const PoissonKernels k(param);
  const std::size_t nx = x_points.size(), ny = ys.size();
  std::vector<cplx> q(nx * ny);
  parallel_for(q.size(), [&](std::size_t idx) {
    q[idx] = conjugate_poisson_at(k, f, x_points[idx % nx], ys[idx / nx]);
  }, 1);
  check_boundary_convergence(ny, [&](std::size_t j) {
    double d = 0.0;
    for (std::size_t i = 0; i < nx; ++i) d = std::max(d, std::abs(q[j * nx + i] - q[(j + 1) * nx + i]));
    return d;
  });
  std::vector<cplx> out(nx), col(ny);
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) col[j] = q[j * nx + i];
    out[i] = extrapolate_to_zero(ys, col);
  }
  return out;
}

SampledFunction hilbert_boundary(const DunklParameter& param, const SampledFunction& f, const std::vector<double>& ys) {
  check_levels(ys);
  const WeightedGrid& g = f.grid();
  const PoissonKernels k(param);
  const std::size_t nx = g.size(), ny = ys.size();
  std::vector<cplx> q(nx * ny);
  parallel_for(q.size(), [&](std::size_t idx) {
    q[idx] = conjugate_poisson_at(k, f, g.nodes()[idx % nx], ys[idx / nx]);
  }, 1);
  check_boundary_convergence(ny, [&](std::size_t j) {
    double s = 0.0;
    for (std::size_t i = 0; i < nx; ++i) s += g.weights()[i] * std::norm(q[j * nx + i] - q[(j + 1) * nx + i]);
    return std::sqrt(s);
  });
  std::vector<cplx> out(nx), col(ny);
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) col[j] = q[j * nx + i];
    out[i] = extrapolate_to_zero(ys, col);
  }
  return SampledFunction(f.grid_ptr(), std::move(out));
}

}  // namespace dunkl
