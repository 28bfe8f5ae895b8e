#include <algorithm>
#include <cmath>
#include <random>

#include "dunkl/dunkl_operator.hpp"
#include "dunkl/params.hpp"
#include "dunkl/poisson.hpp"
#include "dunkl/transform.hpp"
#include "suite_common.hpp"

namespace dunkl::suites {

namespace {

double uniform01(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

// A positive, non-symmetric smooth boundary datum.
cplx bump(double x) { return cplx(std::exp(-(x - 0.5) * (x - 0.5))); }

}  // namespace

void run_poisson(Recorder& rec) {
  const SuiteConfig& c = rec.config();
  for (double lam : lambdas_or(c, {0.25, 0.5, 1.0, 3.0})) {
    const DunklParameter param = make_parameter(lam);
    const PoissonKernels K(param);
    const int n = c.grid_n.value_or(640);
    rec.set_resolution(640, n);
    const GridPtr grid = build_weighted_grid(param, c.domain.value_or(10.0), n);
    const int levels = c.y_levels.value_or(64);
    const Params gp{{"X", grid->truncation()}, {"n", grid->size()}, {"y_levels", levels}};
    const SampledFunction f = SampledFunction::from_profile(grid, bump);

    // Closed-form kernels against their spectral integrals at random triples.
    std::mt19937_64 gen(c.seed);
    std::vector<std::array<double, 3>> triples(20);
    for (auto& tr : triples) tr = {-3.0 + 6.0 * uniform01(gen), 0.5 + 1.5 * uniform01(gen), -3.0 + 6.0 * uniform01(gen)};
    Params tp = gp;
    tp["triples"] = triples.size();
    tp["seed"] = c.seed;
    rec.record("kernel_spectral", "kernel/poisson_vs_spectral/lambda=" + label(lam), lam, kNaN, tp, "abs", 1e-6, [&] {
      double worst = 0.0;
      for (auto [x, y, t] : triples) worst = std::max(worst, std::fabs(K.poisson(x, y, t) - poisson_kernel_spectral(param, x, y, t)));
      return Measured{worst, 0.0};
    });
    rec.record("kernel_spectral", "kernel/conjugate_vs_spectral/lambda=" + label(lam), lam, kNaN, tp, "abs", 1e-6, [&] {
      double worst = 0.0;
      for (auto [x, y, t] : triples)
        worst = std::max(worst, std::fabs(K.conjugate(x, y, t) - conjugate_poisson_kernel_spectral(param, x, y, t)));
      return Measured{worst, 0.0};
    });
    rec.record("kernel_positivity", "kernel/positivity/lambda=" + label(lam), lam, kNaN, tp, "ge", 0.0, [&] {
      double lo = INFINITY;
      for (auto [x, y, t] : triples) lo = std::min({lo, K.poisson(x, y, t), K.poisson(x, 1e-2 * y, t)});
      return Measured{lo, 0.0};
    });
    rec.record("kernel_origin", "kernel/x=0/lambda=" + label(lam), lam, kNaN, gp, "abs", 1e-13, [&] {
      double worst = 0.0;
      for (double y : {0.1, 1.0, 3.0})
        for (double t : {-2.0, 0.0, 0.4, 1.0}) {
          worst = std::max(worst, std::fabs(K.poisson(0.0, y, t) - poisson_profile(param, y, t)) / poisson_profile(param, y, 0.0));
          worst = std::max(worst, std::fabs(K.conjugate(0.0, y, t) - conjugate_profile(param, y, -t)) / poisson_profile(param, y, 0.0));
        }
      return Measured{worst, 0.0};
    });
    rec.record("kernel_antisymmetry", "kernel/conjugate_antisymmetry/lambda=" + label(lam), lam, kNaN, tp, "abs", 1e-13,
               [&] {
                 double worst = 0.0;
                 for (auto [x, y, t] : triples)
                   worst = std::max(worst, std::fabs(K.conjugate(x, y, t) + K.conjugate(t, y, x)) /
                                               std::max(1.0, std::fabs(K.conjugate(x, y, t))));
                 return Measured{worst, 0.0};
               });
    rec.record("kernel_mass", "kernel/unit_mass/lambda=" + label(lam), lam, kNaN, gp, "abs", 1e-8, [&] {
      const SampledFunction one = SampledFunction::from_profile(grid, [](double) { return cplx(1.0); });
      double worst = 0.0;
      for (double x : {-2.0, 0.3, 1.7})
        for (double y : {0.01, 0.2, 1.0}) worst = std::max(worst, std::abs(poisson_at(K, one, x, y) - 1.0));
      return Measured{worst, 0.0};
    });

    // Poisson integrals of Poisson profiles compose exactly.
    const double y0 = 0.7;
    const SampledFunction py0 =
        SampledFunction::from_profile(grid, [&](double x) { return cplx(poisson_profile(param, y0, x)); });
    rec.record("semigroup", "semigroup/poisson_profile/lambda=" + label(lam), lam, kNaN, gp, "abs", 1e-5, [&] {
      double worst = 0.0;
      for (double x : {-2.0, 0.3, 1.7, 6.5})
        for (double y : {0.01, 0.2, 1.0}) {
          worst = std::max(worst, std::abs(poisson_at(K, py0, x, y) - poisson_profile(param, y0 + y, x)));
          worst = std::max(worst, std::abs(conjugate_poisson_at(K, py0, x, y) - conjugate_profile(param, y0 + y, x)));
        }
      return Measured{worst, 0.0};
    });

    // P[(Pf)(·, y0)](x, y) = (Pf)(x, y0 + y) for the bump.
    rec.record("semigroup", "semigroup/bump/lambda=" + label(lam), lam, kNaN, gp, "abs", 1e-5, [&] {
      const double s0 = 0.5;
      const SampledFunction u0 = SampledFunction::from_profile(grid, [&](double x) { return poisson_at(K, f, x, s0); });
      double worst = 0.0;
      for (double x : {-2.0, -0.7, 0.3, 1.9})
        for (double y : {0.05, 0.3, 1.0}) worst = std::max(worst, std::abs(poisson_at(K, u0, x, y) - poisson_at(K, f, x, s0 + y)));
      return Measured{worst, 0.0};
    });

    // e^{-y|ξ|} F f transformed back.
    rec.record("spectral_route", "spectral_route/bump/lambda=" + label(lam), lam, kNaN, gp, "abs", 1e-5, [&] {
      const GridPtr g12 = build_weighted_grid(param, 12.0, 768);
      const SampledFunction fb = SampledFunction::from_profile(g12, bump);
      const Spectrum F = forward(param, fb, g12);
      double worst = 0.0;
      for (double y : {0.1, 0.5, 2.0}) {
        std::vector<cplx> v(F.values());
        for (std::size_t k = 0; k < v.size(); ++k) v[k] *= std::exp(-y * std::fabs(g12->nodes()[k]));
        const SampledFunction u = inverse(param, Spectrum(g12, v), g12);
        for (std::size_t i = 0; i < g12->size(); i += 7) {
          const double x = g12->nodes()[i];
          if (std::fabs(x) > 3.0) continue;
          worst = std::max(worst, std::abs(u.values()[i] - poisson_at(K, f, x, y)));
        }
      }
      return Measured{worst, 0.0};
    });

    // Contraction and boundary convergence over the lattice levels.
    const HalfPlaneLattice lattice = make_lattice(grid, 1e-3, 10.0, levels);
    std::vector<double> r1, r2, dist;
    bool slices_ok = true;
    std::string slice_error;
    try {
      const double n1 = f.norm(1.0), n2 = f.norm(2.0);
      for (double y : lattice.y) {
        const SampledFunction u = SampledFunction::from_profile(grid, [&](double x) { return poisson_at(K, f, x, y); });
        r1.push_back(u.norm(1.0) / n1);
        r2.push_back(u.norm(2.0) / n2);
        std::vector<cplx> d(u.values());
        for (std::size_t i = 0; i < d.size(); ++i) d[i] -= f.values()[i];
        std::vector<cplx> dt(u.tail_values());
        for (std::size_t i = 0; i < dt.size(); ++i) dt[i] -= f.tail_values().empty() ? cplx(0.0) : f.tail_values()[i];
        dist.push_back(SampledFunction::with_tail(grid, d, dt).norm(2.0));
      }
    } catch (const Error& e) {
      slices_ok = false;
      slice_error = e.what();
    }
    for (int pp : {1, 2}) {
      const std::string id = "contraction/p=" + std::to_string(pp) + "/lambda=" + label(lam);
      if (!slices_ok) {
        rec.record_error("contraction", id, lam, pp, slice_error);
        continue;
      }
      const auto& r = pp == 1 ? r1 : r2;
      rec.record("contraction", id, lam, pp, gp, "le", 1e-3, [&] {
        return Measured{*std::max_element(r.begin(), r.end()), 1.0};
      });
    }
    if (slices_ok) {
      rec.record("boundary_convergence", "boundary/l2_distance_at_min_y/lambda=" + label(lam), lam, kNaN, gp, "abs", 1e-3,
                 [&] { return Measured{dist.front(), 0.0}; });
      rec.record("boundary_convergence", "boundary/monotone_violations/lambda=" + label(lam), lam, kNaN, gp, "abs", 0.0,
                 [&] {
                   double violations = 0;
                   for (std::size_t j = 1; j < dist.size(); ++j) violations += dist[j] < dist[j - 1] ? 1 : 0;
                   return Measured{violations, 0.0};
                 });
    } else {
      rec.record_error("boundary_convergence", "boundary/l2_distance_at_min_y/lambda=" + label(lam), lam, kNaN, slice_error);
    }

    // Maximal functions of a Poisson profile on a small lattice.
    rec.record("maximal", "maximal/radial_near_origin/lambda=" + label(lam), lam, kNaN, gp, "rel", 1e-6, [&] {
      const HalfPlaneLattice small = make_lattice(build_weighted_grid(param, 4.0, 128), 1e-3, 10.0, levels);
      const MaximalSample m = maximal(param, MaximalKind::Radial, py0, small);
      const std::size_t i0 = small.x_grid->half_size();
      const double x0 = small.x_grid->nodes()[i0];
      return Measured{m.values[i0], poisson_profile(param, y0 + small.y.front(), x0)};
    });
    rec.record("maximal", "maximal/nontangential_dominates/lambda=" + label(lam), lam, kNaN, gp, "ge", 1e-14, [&] {
      const HalfPlaneLattice small = make_lattice(build_weighted_grid(param, 4.0, 128), 1e-3, 10.0, levels);
      const LatticeSamples s = poisson_integral(param, f, small);
      const MaximalSample a = maximal(small, s, MaximalKind::Radial), b = maximal(small, s, MaximalKind::Nontangential);
      double lo = INFINITY;
      for (std::size_t i = 0; i < a.values.size(); ++i) lo = std::min(lo, b.values[i] - a.values[i]);
      return Measured{lo, 0.0};
    });
  }
}

void run_cauchy_riemann(Recorder& rec) {
  const SuiteConfig& c = rec.config();
  const double h = 1e-3;
  const std::vector<double> xs{-1.7, -0.6, 0.45, 1.3, 2.2}, ys{0.2, 0.6, 1.5};
  for (double lam : lambdas_or(c, {0.25, 0.5, 1.0, 3.0})) {
    const DunklParameter param = make_parameter(lam);
    const PoissonKernels K(param);
    const int n = c.grid_n.value_or(640);
    rec.set_resolution(640, n);
    const GridPtr grid = build_weighted_grid(param, c.domain.value_or(10.0), n);
    const SampledFunction f = SampledFunction::from_profile(grid, bump);

    // A kernel slice is Pf for a point mass; it peaks like y^{-2λ-1}, so its
    // residuals are measured relative to its size over the sample points.
    struct Pair {
      std::string name;
      HalfPlaneFunction u, v;
      bool relative;
      std::vector<double> ys;
    };
    // The slice varies on the scale y, and the stencil error grows like (h/y)²;
    // it is sampled from unit height up.
    const std::vector<double> slice_ys{1.0, 2.0, 4.0};
    const double t0 = 0.7;
    const std::vector<Pair> pairs{
        {"kernel_t=0.7", [&](double x, double y) { return K.poisson(x, y, t0); },
         [&](double x, double y) { return K.conjugate(x, y, t0); }, true, slice_ys},
        {"bump", [&](double x, double y) { return poisson_at(K, f, x, y).real(); },
         [&](double x, double y) { return conjugate_poisson_at(K, f, x, y).real(); }, false, ys},
    };

    for (const auto& pr : pairs) {
      Params pp{{"h", h}, {"points", xs.size() * pr.ys.size()}, {"X", grid->truncation()}, {"n", grid->size()}};
      pp["f"] = pr.name;
      double scale = 1.0;
      if (pr.relative) {
        scale = 0.0;
        for (double x : xs)
          for (double y : pr.ys) scale = std::max({scale, std::fabs(pr.u(x, y)), std::fabs(pr.v(x, y))});
        pp["normalized_by"] = scale;
      }
      // Worst residual of each equation at step h and h/2.
      std::array<std::array<double, 2>, 4> worst{};
      std::string err;
      try {
        for (int k = 0; k < 2; ++k) {
          const double hk = k == 0 ? h : 0.5 * h;
          for (double x : xs)
            for (double y : pr.ys) {
              worst[0][k] = std::max(worst[0][k], lambda_laplacian_residual(param, pr.u, x, y, hk));
              worst[1][k] = std::max(worst[1][k], lambda_laplacian_residual(param, pr.v, x, y, hk));
              const auto [a, b] = cauchy_riemann_residuals(param, pr.u, pr.v, x, y, hk);
              worst[2][k] = std::max(worst[2][k], a);
              worst[3][k] = std::max(worst[3][k], b);
            }
        }
      } catch (const Error& e) {
        err = e.what();
      }
      const char* names[4] = {"laplacian_u", "laplacian_v", "cr_Dxu_dyv", "cr_dyu_minus_Dxv"};
      for (int q = 0; q < 4; ++q) {
        const std::string base = std::string(names[q]) + "/" + pr.name + "/lambda=" + label(lam);
        if (!err.empty()) {
          rec.record_error("residual", "residual/" + base, lam, kNaN, err);
          continue;
        }
        rec.record("residual", "residual/" + base, lam, kNaN, pp, "abs", 1e-4, [&] { return Measured{worst[q][0] / scale, 0.0}; });
        rec.record("residual_order", "order/" + base, lam, kNaN, pp, "ge", 0.0,
                   [&] { return Measured{worst[q][0] / worst[q][1], 3.5}; });
      }
    }
  }
}

}  // namespace dunkl::suites
