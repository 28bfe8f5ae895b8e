#include <algorithm>
#include <cmath>

#include "dunkl/params.hpp"
#include "dunkl/poisson.hpp"
#include "dunkl/special_functions.hpp"
#include "dunkl/transform.hpp"
#include "dunkl/translation.hpp"
#include "suite_common.hpp"

namespace dunkl::suites {

namespace {

struct Battery {
  const char* name;
  Profile profile;
};

std::vector<Battery> smooth_battery(const DunklParameter& param) {
  return {{"gauss", [](double x) { return cplx(std::exp(-0.5 * x * x)); }},
          {"xgauss", [](double x) { return cplx(x * std::exp(-0.5 * x * x)); }},
          {"poisson_y1", [param](double x) { return cplx(poisson_profile(param, 1.0, x)); }}};
}

double max_abs_diff(const SampledFunction& f, const std::function<cplx(double)>& exact) {
  double m = 0.0;
  const auto& x = f.grid().nodes();
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(f.values()[i] - exact(x[i])));
  return m;
}

// Space grid (domain X, n nodes) and the frequency grid (Ξ = 36, n nodes).
struct TransformGrids {
  GridPtr x, xi;
};

TransformGrids transform_grids(Recorder& rec, const DunklParameter& param) {
  const SuiteConfig& c = rec.config();
  const int n = c.grid_n.value_or(2048);
  rec.set_resolution(2048, n);
  return {build_weighted_grid(param, c.domain.value_or(40.0), n), build_weighted_grid(param, 36.0, n)};
}

}  // namespace

void run_plancherel(Recorder& rec) {
  for (double lam : lambdas_or(rec.config(), {0.25, 0.5, 1.0, 3.0})) {
    const DunklParameter param = make_parameter(lam);
    const TransformGrids g = transform_grids(rec, param);
    const Params grid{{"X", g.x->truncation()}, {"n", g.x->size()}, {"Xi", g.xi->truncation()}};

    for (const auto& b : smooth_battery(param)) {
      Params pr = grid;
      pr["f"] = b.name;
      rec.record("plancherel_defect", std::string("plancherel/") + b.name + "/lambda=" + label(lam), lam, kNaN, pr, "abs",
                 1e-6, [&] {
                   const SampledFunction f = SampledFunction::from_profile(g.x, b.profile);
                   return Measured{plancherel_defect(param, f, g.xi), 0.0};
                 });
    }

    rec.record("forward_exact", "forward/poisson_y1/lambda=" + label(lam), lam, kNaN, grid, "abs", 1e-6, [&] {
      const SampledFunction f =
          SampledFunction::from_profile(g.x, [&](double x) { return cplx(poisson_profile(param, 1.0, x)); });
      return Measured{max_abs_diff(forward(param, f, g.xi), [](double xi) { return cplx(std::exp(-std::fabs(xi))); }),
                      0.0};
    });
    rec.record("forward_exact", "forward/gauss/lambda=" + label(lam), lam, kNaN, grid, "abs", 1e-6, [&] {
      const SampledFunction f = SampledFunction::from_profile(g.x, [](double x) { return cplx(std::exp(-0.5 * x * x)); });
      return Measured{max_abs_diff(forward(param, f, g.xi), [](double xi) { return cplx(std::exp(-0.5 * xi * xi)); }),
                      0.0};
    });

    // Product formula ⟨F f, g⟩ = ⟨f, F g⟩ for a Gaussian and a Poisson profile.
    rec.record("product_formula", "product/gauss_poisson/lambda=" + label(lam), lam, kNaN, grid, "abs", 1e-7, [&] {
      const Profile fp = [](double x) { return cplx(std::exp(-0.5 * x * x)); };
      const Profile gp = [&](double x) { return cplx(poisson_profile(param, 1.0, x)); };
      const SampledFunction f = SampledFunction::from_profile(g.x, fp);
      const SampledFunction gx = SampledFunction::from_profile(g.xi, gp);
      const cplx lhs = inner_product(forward(param, f, g.xi), gx);
      const cplx rhs = inner_product(f, forward(param, gx, g.x));
      return Measured{std::abs(lhs - rhs), 0.0};
    });

    rec.record("hausdorff_young", "hausdorff_young/gauss/p=1/lambda=" + label(lam), lam, 1.0, grid, "le", 1e-9, [&] {
      const SampledFunction f = SampledFunction::from_profile(g.x, [](double x) { return cplx(std::exp(-0.5 * x * x)); });
      return Measured{hausdorff_young_ratio(param, f, 1.0, g.xi), 1.0};
    });
    rec.record("hausdorff_young", "hausdorff_young/poisson_y1/p=1.5/lambda=" + label(lam), lam, 1.5, grid, "le", 1e-9,
               [&] {
                 const SampledFunction f = SampledFunction::from_profile(
                     g.x, [&](double x) { return cplx(poisson_profile(param, 1.0, x)); });
                 return Measured{hausdorff_young_ratio(param, f, 1.5, g.xi), 1.0};
               });
    rec.record("hausdorff_young", "hausdorff_young/gauss/p=2/lambda=" + label(lam), lam, 2.0, grid, "abs", 1e-6, [&] {
      const SampledFunction f = SampledFunction::from_profile(g.x, [](double x) { return cplx(std::exp(-0.5 * x * x)); });
      return Measured{hausdorff_young_ratio(param, f, 2.0, g.xi), 1.0};
    });

    for (const char* name : {"gauss", "xgauss"}) {
      const std::string nm = name;
      Params pr = grid;
      pr["f"] = nm;
      rec.record("derivative_multiplier", "derivative/" + nm + "/lambda=" + label(lam), lam, kNaN, pr, "abs", 1e-5, [&] {
        const Profile prof = nm == "gauss" ? Profile([](double x) { return cplx(std::exp(-0.5 * x * x)); })
                                           : Profile([](double x) { return cplx(x * std::exp(-0.5 * x * x)); });
        return Measured{derivative_multiplier_defect(param, SampledFunction::from_profile(g.x, prof), g.xi), 0.0};
      });
    }
  }
}

void run_inversion(Recorder& rec) {
  for (double lam : lambdas_or(rec.config(), {0.25, 0.5, 1.0, 3.0})) {
    const DunklParameter param = make_parameter(lam);
    const TransformGrids g = transform_grids(rec, param);
    const Params grid{{"X", g.x->truncation()}, {"n", g.x->size()}, {"Xi", g.xi->truncation()}};

    for (const auto& b : smooth_battery(param)) {
      Params pr = grid;
      pr["f"] = b.name;
      rec.record("round_trip", std::string("round_trip/") + b.name + "/lambda=" + label(lam), lam, kNaN, pr, "abs", 1e-6,
                 [&] {
                   const SampledFunction f = SampledFunction::from_profile(g.x, b.profile);
                   return Measured{relative_l2_error(inverse(param, forward(param, f, g.xi), g.x), f), 0.0};
                 });
    }

    // e^{-|ξ|} transforms back to the Poisson profile; error relative to its sup m_λ.
    rec.record("inverse_exact", "inverse/exp_abs/lambda=" + label(lam), lam, kNaN, grid, "abs", 1e-6, [&] {
      const Spectrum s = SampledFunction::from_profile(g.xi, [](double xi) { return cplx(std::exp(-std::fabs(xi))); });
      const SampledFunction back = inverse(param, s, g.x);
      const double err =
          max_abs_diff(back, [&](double x) { return cplx(poisson_profile(param, 1.0, x)); }) / param.m_lambda;
      return Measured{err, 0.0};
    });

    rec.record("zero", "inverse/zero/lambda=" + label(lam), lam, kNaN, grid, "abs", 0.0, [&] {
      const Spectrum s(g.xi, std::vector<cplx>(g.xi->size()));
      const SampledFunction back = inverse(param, s, g.x);
      return Measured{back.norm(INFINITY), 0.0};
    });
  }
}

void run_translation(Recorder& rec) {
  const SuiteConfig& c = rec.config();
  for (double lam : lambdas_or(c, {0.25, 0.5, 1.0, 3.0})) {
    const DunklParameter param = make_parameter(lam);
    const int n = c.grid_n.value_or(512);
    rec.set_resolution(512, n);
    const GridPtr grid = build_weighted_grid(param, c.domain.value_or(14.0), n);
    const Params gp{{"X", grid->truncation()}, {"n", grid->size()}};
    const Profile fprof = [](double x) { return cplx(std::exp(-0.5 * x * x) * (1.0 + 0.3 * x)); };
    const SampledFunction f = SampledFunction::from_profile(grid, fprof);
    const JacobiRule rule = build_jacobi_rule(param, 96);

    const std::vector<std::pair<double, double>> pairs{{0.7, 1.3}, {-0.4, 2.1}, {1.5, -1.1}, {2.0, 2.0}, {-1.0, 1.0}};

    rec.record("kernel_mass", "kernel_W/mass/lambda=" + label(lam), lam, kNaN, gp, "abs", 1e-8, [&] {
      double worst = 0.0;
      const Profile one = [](double) { return cplx(1.0); };
      for (auto [x, t] : pairs) worst = std::max(worst, std::abs(translate_via_kernel(param, one, t, x) - 1.0));
      return Measured{worst, 0.0};
    });
    rec.record("kernel_symmetry", "kernel_W/symmetry/lambda=" + label(lam), lam, kNaN, gp, "abs", 1e-12, [&] {
      double worst = 0.0;
      for (auto [x, t] : pairs)
        for (double z : {0.3, 0.9, 1.7, 2.5, 3.3}) {
          const double a = kernel_W(param, x, t, z), b = kernel_W(param, t, x, z);
          worst = std::max(worst, std::fabs(a - b) / std::max(1.0, std::fabs(a)));
        }
      return Measured{worst, 0.0};
    });
    rec.record("kernel_support", "kernel_W/support/lambda=" + label(lam), lam, kNaN, gp, "abs", 0.0, [&] {
      double worst = 0.0;
      for (auto [x, t] : pairs) {
        const double lo = std::fabs(std::fabs(x) - std::fabs(t)), hi = std::fabs(x) + std::fabs(t);
        for (double z : {0.5 * lo, hi + 0.1, -(hi + 1.0)}) worst = std::max(worst, std::fabs(kernel_W(param, x, t, z)));
      }
      return Measured{worst, 0.0};
    });
    rec.record("translate_routes", "translate/angular_vs_kernel/lambda=" + label(lam), lam, kNaN, gp, "abs", 1e-8, [&] {
      double worst = 0.0;
      for (auto [x, t] : pairs)
        worst = std::max(worst, std::abs(translate_at(param, f, t, x, rule) - translate_via_kernel(param, fprof, t, x)));
      return Measured{worst, 0.0};
    });
    rec.record("translate_symmetry", "translate/symmetry/lambda=" + label(lam), lam, kNaN, gp, "abs", 1e-12, [&] {
      double worst = 0.0;
      for (auto [x, t] : pairs)
        worst = std::max(worst, std::abs(translate_at(param, f, t, x, rule) - translate_at(param, f, x, t, rule)));
      return Measured{worst, 0.0};
    });
    rec.record("translate_identity", "translate/t=0/lambda=" + label(lam), lam, kNaN, gp, "abs", 1e-14, [&] {
      const SampledFunction g0 = translate(param, f, 0.0);
      double worst = 0.0;
      for (std::size_t i = 0; i < grid->size(); ++i) worst = std::max(worst, std::abs(g0.values()[i] - f.values()[i]));
      return Measured{worst, 0.0};
    });

    SampledFunction tf;
    rec.record("translate_multiplier", "translate/multiplier/t=1/lambda=" + label(lam), lam, kNaN, gp, "abs", 1e-5, [&] {
      tf = translate(param, f, 1.0);
      const Spectrum F1 = forward(param, tf, grid), F0 = forward(param, f, grid);
      const DunklKernel E(param);
      double worst = 0.0;
      for (std::size_t k = 0; k < grid->size(); ++k) {
        const double xi = grid->nodes()[k];
        worst = std::max(worst, std::abs(F1.values()[k] - E(xi) * F0.values()[k]));
      }
      return Measured{worst, 0.0};
    });

    for (double p : {1.0, 2.0, static_cast<double>(INFINITY)}) {
      const std::string pl = std::isinf(p) ? "inf" : label(p);
      rec.record("translate_bound", "translate/bound/p=" + pl + "/lambda=" + label(lam), lam, std::isinf(p) ? kNaN : p,
                 gp, "le", 0.05, [&] {
                   double worst = 0.0;
                   for (double t : {0.5, 1.0, 3.0}) {
                     const SampledFunction g1 = translate(param, f, t);
                     worst = std::max(worst, g1.norm(p) / f.norm(p));
                   }
                   return Measured{worst, 4.0};
                 });
    }

    // Convolution theorem and commutativity on a Gaussian pair.
    const Profile gprof = [](double x) { return cplx(std::exp(-x * x)); };
    const SampledFunction g2 = SampledFunction::from_profile(grid, gprof);
    SampledFunction fg;
    rec.record("convolution_theorem", "convolution/theorem/lambda=" + label(lam), lam, kNaN, gp, "abs", 1e-5, [&] {
      fg = convolve(param, f, g2);
      const Spectrum A = forward(param, fg, grid), B = forward(param, f, grid), C = forward(param, g2, grid);
      double worst = 0.0;
      for (std::size_t k = 0; k < grid->size(); ++k)
        worst = std::max(worst, std::abs(A.values()[k] - B.values()[k] * C.values()[k]));
      return Measured{worst, 0.0};
    });
    rec.record("convolution_commutative", "convolution/commutative/lambda=" + label(lam), lam, kNaN, gp, "abs", 1e-6,
               [&] {
                 if (fg.values().empty()) fg = convolve(param, f, g2);
                 const SampledFunction gf = convolve(param, g2, f);
                 double worst = 0.0;
                 for (std::size_t i = 0; i < grid->size(); ++i)
                   worst = std::max(worst, std::abs(fg.values()[i] - gf.values()[i]));
                 return Measured{worst, 0.0};
               });
  }
}

}  // namespace dunkl::suites
