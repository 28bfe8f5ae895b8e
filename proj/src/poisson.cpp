#include "dunkl/poisson.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "dunkl/error.hpp"
#include "dunkl/parallel.hpp"

namespace dunkl {

namespace {

void require_positive_y(double y) {
  if (!(y > 0.0)) {
    std::ostringstream os;
    os << "y must be positive, got " << y;
    throw Error(ErrorCode::NonPositiveY, os.str());
  }
}

// c_λ ∫ f(t) kern(t) |t|^{2λ} dt for a kernel that is analytic except near
// t = ±x within distance `width`.
template <class Kern>
cplx integrate_against(const SampledFunction& f, double x, double width, const Kern& kern) {
  const WeightedGrid& g = f.grid();
  const double lam = g.lambda();
  const Singularity sings[2] = {{x, width}, {-x, width}};
  const std::span<const Singularity> sp(sings, 2);
  const PanelOptions opt;
  auto admissible = [&](double u, double v) {
    const double hw = 0.5 * (v - u);
    for (const auto& s : sings) {
      const double dist = std::max({0.0, u - s.location, s.location - v});
      if (std::hypot(dist, s.width) < opt.ratio * hw) return false;
    }
    return true;
  };
  auto fg = [&](double t) { return f(t) * kern(t); };

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
      if (admissible(u, v)) {
        for (std::size_t j = 0; j < q; ++j) {
          const std::size_t ip = M + p * q + j;
          const std::size_t i = side ? ip : g.mirror(ip);
          acc += ws[i] * f.values()[i] * kern(xs[i]);
        }
      } else {
        acc += g.c_lambda() * integrate_weighted(lam, u, v, fg, sp);
      }
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
        const double a = side ? u : -v, b = side ? v : -u;
        if (admissible(a, b)) {
          for (std::size_t j = 0; j < q; ++j) {
            const std::size_t ip = T + p * q + j;
            const std::size_t i = side ? ip : tn.size() - 1 - ip;
            acc += tw[i] * f.tail_values()[i] * kern(tn[i]);
          }
        } else {
          acc += g.c_lambda() * integrate_weighted(lam, a, b, fg, sp);
        }
      }
    }
  }
  return acc;
}

double spectral_kernel(const DunklParameter& param, double x, double y, double t, bool conjugate) {
  require_positive_y(y);
  const double Xi = 40.0 / y;
  const int panels = static_cast<int>(std::ceil(2.0 * Xi * std::max(1.0, 0.25 * (std::fabs(x) + std::fabs(t)))));
  const DunklKernel E(param);
  auto integrand = [&](double xi) {
    const double ex = E.even(x * xi), et = E.even(t * xi);
    const double ox = E.odd(x * xi), ot = E.odd(t * xi);
    const double m = conjugate ? (ox * et - ex * ot) : (ex * et + ox * ot);
    return std::exp(-y * xi) * m;
  };
  double acc = 0.0;
  const std::span<const Singularity> none;
  for (int k = 0; k < panels; ++k) {
    const double a = Xi * k / panels, b = Xi * (k + 1) / panels;
    acc += integrate_weighted(param.lambda, a, b, integrand, none);
  }
  return 2.0 * param.c_lambda * acc;
}

}  // namespace

PoissonKernels::PoissonKernels(const DunklParameter& param, KernelRoute route)
    : param_(param), route_(route), angular_(param.lambda), K_(param.m_lambda * param.c_prime) {}

double PoissonKernels::I(double y, double x, double t) const {
  if (route_ == KernelRoute::Quadrature) return angular_integral_quadrature(param_.lambda, y, x, t);
  return angular_(y, x, t);
}

double PoissonKernels::poisson(double x, double y, double t) const { return K_ * y * I(y, x, t); }

double PoissonKernels::conjugate(double x, double y, double t) const { return K_ * (x - t) * I(y, x, t); }

double PoissonKernels::hilbert(double x, double t) const {
  if (x == t || (x == -t && x != 0.0)) {
    std::ostringstream os;
    os << "Hilbert kernel is singular at x = " << x << ", t = " << t;
    throw Error(ErrorCode::DiagonalPoint, os.str());
  }
  return K_ * (x - t) * I(0.0, x, t);
}

double poisson_kernel(const DunklParameter& param, double x, double y, double t, KernelRoute route) {
  require_positive_y(y);
  return PoissonKernels(param, route).poisson(x, y, t);
}

double conjugate_poisson_kernel(const DunklParameter& param, double x, double y, double t, KernelRoute route) {
  require_positive_y(y);
  return PoissonKernels(param, route).conjugate(x, y, t);
}

double poisson_kernel_spectral(const DunklParameter& param, double x, double y, double t) {
  return spectral_kernel(param, x, y, t, false);
}

double conjugate_poisson_kernel_spectral(const DunklParameter& param, double x, double y, double t) {
  return spectral_kernel(param, x, y, t, true);
}

double poisson_profile(const DunklParameter& param, double y, double x) {
  return param.m_lambda * y * std::pow(y * y + x * x, -param.lambda - 1.0);
}

double conjugate_profile(const DunklParameter& param, double y, double x) {
  return param.m_lambda * x * std::pow(y * y + x * x, -param.lambda - 1.0);
}

HalfPlaneLattice make_lattice(GridPtr x_grid, double y_min, double y_max, int levels) {
  require_positive_y(y_min);
  if (levels < 1 || !(y_max >= y_min)) throw Error(ErrorCode::BadResolution, "lattice needs y_max ≥ y_min and ≥ 1 level");
  HalfPlaneLattice lat;
  lat.x_grid = std::move(x_grid);
  lat.y.resize(levels);
  for (int j = 0; j < levels; ++j)
    lat.y[j] = (levels == 1) ? y_min : y_min * std::pow(y_max / y_min, static_cast<double>(j) / (levels - 1));
  return lat;
}

cplx poisson_at(const PoissonKernels& k, const SampledFunction& f, double x, double y) {
  require_positive_y(y);
  return integrate_against(f, x, y, [&](double t) { return k.poisson(x, y, t); });
}

cplx conjugate_poisson_at(const PoissonKernels& k, const SampledFunction& f, double x, double y) {
  require_positive_y(y);
  return integrate_against(f, x, y, [&](double t) { return k.conjugate(x, y, t); });
}

namespace {

LatticeSamples fill_lattice(const DunklParameter& param, const SampledFunction& f, const HalfPlaneLattice& lattice,
                            bool conjugate) {
  for (double y : lattice.y) require_positive_y(y);
  const PoissonKernels k(param);
  LatticeSamples s;
  s.nx = lattice.x_grid->size();
  s.ny = lattice.y.size();
  s.values.resize(s.nx * s.ny);
  const auto& xs = lattice.x_grid->nodes();
  parallel_for(s.values.size(), [&](std::size_t idx) {
    const std::size_t i = idx % s.nx, j = idx / s.nx;
    s.values[idx] = conjugate ? conjugate_poisson_at(k, f, xs[i], lattice.y[j]) : poisson_at(k, f, xs[i], lattice.y[j]);
  }, 1);
  return s;
}

}  // namespace

LatticeSamples poisson_integral(const DunklParameter& param, const SampledFunction& f, const HalfPlaneLattice& lattice) {
  return fill_lattice(param, f, lattice, false);
}

LatticeSamples conjugate_poisson_integral(const DunklParameter& param, const SampledFunction& f,
                                          const HalfPlaneLattice& lattice) {
  return fill_lattice(param, f, lattice, true);
}

ConjugatePair conjugate_pair(const DunklParameter& param, const SampledFunction& f, const HalfPlaneLattice& lattice) {
  return {lattice, poisson_integral(param, f, lattice), conjugate_poisson_integral(param, f, lattice), f};
}

MaximalSample maximal(const HalfPlaneLattice& lattice, const LatticeSamples& samples, MaximalKind kind,
                      double aperture) {
  const auto& xs = lattice.x_grid->nodes();
  if (samples.nx != xs.size() || samples.ny != lattice.y.size())
    throw Error(ErrorCode::PreconditionViolated, "samples do not match the lattice");
  MaximalSample m;
  m.kind = kind;
  m.values.assign(xs.size(), 0.0);
  if (kind == MaximalKind::Radial) {
    if (samples.ny == 0) throw Error(ErrorCode::EmptyCone, "lattice has no y levels");
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (std::size_t j = 0; j < samples.ny; ++j) m.values[i] = std::max(m.values[i], std::abs(samples.at(i, j)));
    m.cone_samples = static_cast<int>(samples.ny);
    return m;
  }
  // Level by level, the cone |s - x| < aperture·y is a window sliding
  // monotonically with x; a deque of decreasing magnitudes gives its max.
  const std::size_t nx = xs.size();
  std::vector<int> count(nx, 0);
  std::vector<std::size_t> dq(nx);
  for (std::size_t j = 0; j < samples.ny; ++j) {
    const double r = aperture * lattice.y[j];
    std::size_t lo = 0, hi = 0, head = 0, tail = 0;
    for (std::size_t i = 0; i < nx; ++i) {
      while (hi < nx && xs[hi] < xs[i] + r) {
        const double v = std::abs(samples.at(hi, j));
        while (tail > head && std::abs(samples.at(dq[tail - 1], j)) <= v) --tail;
        dq[tail++] = hi++;
      }
      while (lo < hi && !(xs[lo] > xs[i] - r)) ++lo;
      while (tail > head && dq[head] < lo) ++head;
      count[i] += static_cast<int>(hi - lo);
      if (tail > head) m.values[i] = std::max(m.values[i], std::abs(samples.at(dq[head], j)));
    }
  }
  int fewest = -1;
  for (std::size_t i = 0; i < nx; ++i) {
    if (count[i] == 0) {
      std::ostringstream os;
      os << "cone at x = " << xs[i] << " contains no lattice point";
      throw Error(ErrorCode::EmptyCone, os.str());
    }
    fewest = (fewest < 0) ? count[i] : std::min(fewest, count[i]);
  }
  m.cone_samples = fewest;
  return m;
}

MaximalSample maximal(const DunklParameter& param, MaximalKind kind, const SampledFunction& f,
                      const HalfPlaneLattice& lattice, double aperture) {
  return maximal(lattice, poisson_integral(param, f, lattice), kind, aperture);
}

}  // namespace dunkl
