#include <gtest/gtest.h>

#include <cmath>

#include "dunkl/dunkl_operator.hpp"
#include "dunkl/error.hpp"
#include "dunkl/params.hpp"
#include "dunkl/poisson.hpp"
#include "dunkl/special_functions.hpp"
#include "dunkl/transform.hpp"

using namespace dunkl;

namespace {

struct Grids {
  GridPtr x, xi;
};

Grids grids(const DunklParameter& p, double X = 20.0, int n = 768, double Xi = 20.0) {
  return {build_weighted_grid(p, X, n), build_weighted_grid(p, Xi, n)};
}

cplx gauss(double x) { return std::exp(-x * x / 2); }

// Direct quadrature of c_λ ∫ f(x) E_λ(-ixξ) |x|^{2λ} dx on a fine grid
// with the Laplace-integral kernel, independent of the transform plan.
cplx forward_oracle(const DunklParameter& p, const Profile& f, double xi) {
  const GridPtr g = build_weighted_grid(p, 14.0, 1536);
  cplx acc = 0.0;
  for (std::size_t i = 0; i < g->size(); ++i) {
    const double x = g->nodes()[i];
    acc += g->weights()[i] * f(x) * dunkl_kernel(p, -x * xi, KernelMethod::Laplace).value;
  }
  return acc;
}

}  // namespace

TEST(Forward, GaussianFixedPointAgainstOracle) {
  for (double lam : {0.25, 1.0}) {
    const DunklParameter p = make_parameter(lam);
    for (double xi : {0.0, 0.8, 2.5}) {
      const cplx o = forward_oracle(p, gauss, xi);
      EXPECT_NEAR(std::abs(o - std::exp(-xi * xi / 2)), 0.0, 1e-10) << lam << " " << xi;
    }
    const auto [x, k] = grids(p);
    const Spectrum s = forward(p, SampledFunction::from_profile(x, gauss), k);
    double m = 0.0;
    for (std::size_t i = 0; i < k->size(); ++i) m = std::max(m, std::abs(s.values()[i] - gauss(k->nodes()[i])));
    EXPECT_LE(m, 1e-10);
  }
}

TEST(Forward, PoissonProfileGivesExponential) {
  const DunklParameter p = make_parameter(0.5);
  const auto [x, k] = grids(p, 40.0, 2048, 36.0);
  const auto f = SampledFunction::from_profile(x, [&](double t) { return cplx(poisson_profile(p, 1.0, t)); });
  const Spectrum s = forward(p, f, k);
  double m = 0.0;
  for (std::size_t i = 0; i < k->size(); ++i) m = std::max(m, std::abs(s.values()[i] - std::exp(-std::fabs(k->nodes()[i]))));
  EXPECT_LE(m, 1e-6);
}

TEST(Forward, ZeroAndConjugateSymmetry) {
  const DunklParameter p = make_parameter(0.7);
  const auto [x, k] = grids(p);
  const Spectrum z = forward(p, SampledFunction::from_profile(x, [](double) { return cplx(0.0); }), k);
  for (const cplx& v : z.values()) EXPECT_EQ(v, cplx(0.0));
  const Spectrum s = forward(p, SampledFunction::from_profile(x, [](double t) { return cplx((1 + t) * gauss(t)); }), k);
  for (std::size_t i = 0; i < k->size(); ++i) EXPECT_NEAR(std::abs(s.values()[k->mirror(i)] - std::conj(s.values()[i])), 0.0, 1e-13);
}

TEST(Forward, OddGaussian) {
  // F(x e^{-x²/2}) = -iξ e^{-ξ²/2}, from D e^{-x²/2} = -x e^{-x²/2}.
  const DunklParameter p = make_parameter(1.5);
  const auto [x, k] = grids(p);
  const Spectrum s = forward(p, SampledFunction::from_profile(x, [](double t) { return t * gauss(t); }), k);
  for (std::size_t i = 0; i < k->size(); i += 7) {
    const double xi = k->nodes()[i];
    EXPECT_NEAR(std::abs(s.values()[i] - cplx(0, -xi) * gauss(xi)), 0.0, 1e-10);
  }
}

TEST(Forward, TruncationTooTight) {
  const DunklParameter p = make_parameter(0.5);
  const auto [x, k] = grids(p, 3.0, 256);
  std::vector<cplx> v(x->size(), cplx(1.0));
  try {
    forward(p, SampledFunction(x, v), k);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TruncationTooTight);
  }
}

TEST(Inverse, RoundTripAndExponential) {
  const DunklParameter p = make_parameter(1.0);
  const auto [x, k] = grids(p);
  const auto f = SampledFunction::from_profile(x, [](double t) { return gauss(t) * (1.0 + 0.3 * t); });
  const SampledFunction back = inverse(p, forward(p, f, k), x);
  EXPECT_LE(relative_l2_error(back, f), 1e-6);

  const DunklParameter ph = make_parameter(0.5);
  const auto g2 = grids(ph, 40.0, 2048, 36.0);
  const auto e = SampledFunction::from_profile(g2.xi, [](double s) { return cplx(std::exp(-std::fabs(s))); });
  const SampledFunction py = inverse(ph, e, g2.x);
  for (std::size_t i = 0; i < g2.x->size(); i += 31) {
    const double t = g2.x->nodes()[i];
    EXPECT_NEAR(std::abs(py.values()[i] - poisson_profile(ph, 1.0, t)), 0.0, 1e-6) << t;
  }
}

TEST(Plancherel, GaussianHomogeneityAndPoisson) {
  const DunklParameter p = make_parameter(0.5);
  const auto [x, k] = grids(p);
  const auto f = SampledFunction::from_profile(x, gauss);
  const double d = plancherel_defect(p, f, k);
  EXPECT_LE(d, 1e-6);
  const auto f3 = SampledFunction::from_profile(x, [](double t) { return 3.0 * gauss(t); });
  EXPECT_NEAR(plancherel_defect(p, f3, k), d, 1e-12);

  const auto g2 = grids(p, 40.0, 2048, 36.0);
  const auto py = SampledFunction::from_profile(g2.x, [&](double t) { return cplx(poisson_profile(p, 1.0, t)); });
  EXPECT_LE(plancherel_defect(p, py, g2.xi), 1e-6);
  // ‖e^{-|ξ|}‖² = c_λ · 2 Γ(2λ+1) / 2^{2λ+1}.
  const auto e = SampledFunction::from_profile(g2.xi, [](double s) { return cplx(std::exp(-std::fabs(s))); });
  const double exact = p.c_lambda * 2.0 * std::tgamma(2 * p.lambda + 1) / std::pow(2.0, 2 * p.lambda + 1);
  EXPECT_NEAR(e.norm(2) * e.norm(2) / exact, 1.0, 1e-10);

  try {
    plancherel_defect(p, SampledFunction::from_profile(x, [](double) { return cplx(0.0); }), k);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::ZeroFunction);
  }
}

TEST(DerivativeMultiplier, GaussianAndOdd) {
  for (double lam : {0.25, 1.0, 3.0}) {
    const DunklParameter p = make_parameter(lam);
    const auto [x, k] = grids(p);
    EXPECT_LE(derivative_multiplier_defect(p, SampledFunction::from_profile(x, gauss), k), 1e-5);
    EXPECT_LE(derivative_multiplier_defect(p, SampledFunction::from_profile(x, [](double t) { return t * gauss(t); }), k), 1e-5);
  }
}

TEST(DerivativeMultiplier, EvenInputGivesOddSpectrum) {
  const DunklParameter p = make_parameter(0.5);
  const auto [x, k] = grids(p);
  const Spectrum s = forward(p, apply_D(p, SampledFunction::from_profile(x, gauss)), k);
  for (std::size_t i = 0; i < k->size(); ++i) EXPECT_NEAR(std::abs(s.values()[i] + s.values()[k->mirror(i)]), 0.0, 1e-10);
}

TEST(HausdorffYoung, Ratios) {
  const DunklParameter p = make_parameter(0.5);
  const auto [x, k] = grids(p);
  const auto f = SampledFunction::from_profile(x, gauss);
  EXPECT_NEAR(hausdorff_young_ratio(p, f, 2.0, k), 1.0, 1e-6);
  EXPECT_LE(hausdorff_young_ratio(p, f, 1.0, k), 1.0);
  const auto g2 = grids(p, 40.0, 2048, 36.0);
  const auto py = SampledFunction::from_profile(g2.x, [&](double t) { return cplx(poisson_profile(p, 1.0, t)); });
  EXPECT_LE(hausdorff_young_ratio(p, py, 1.5, g2.xi), 1.0);
}

TEST(Transform, ProductFormulaAndLinearity) {
  const DunklParameter p = make_parameter(0.8);
  const GridPtr g = build_weighted_grid(p, 20.0, 768);
  const auto f = SampledFunction::from_profile(g, [](double t) { return gauss(t) * (1.0 + t); });
  const auto h = SampledFunction::from_profile(g, [](double t) { return cplx(std::exp(-t * t)); });
  const cplx lhs = inner_product(forward(p, f, g), h);
  const cplx rhs = inner_product(f, forward(p, h, g));
  // The identity is bilinear; h and its transform are real, so the
  // conjugation inside inner_product changes nothing.
  EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-7);

  const Spectrum a = forward(p, f, g), b = forward(p, h, g);
  std::vector<cplx> mix(g->size());
  for (std::size_t i = 0; i < g->size(); ++i) mix[i] = 2.0 * f.values()[i] - cplx(0, 3) * h.values()[i];
  const Spectrum c = forward(p, SampledFunction(g, mix), g);
  for (std::size_t i = 0; i < g->size(); ++i)
    EXPECT_NEAR(std::abs(c.values()[i] - (2.0 * a.values()[i] - cplx(0, 3) * b.values()[i])), 0.0, 1e-13);
}

TEST(Transform, RealEvenInputGivesRealEvenSpectrum) {
  const DunklParameter p = make_parameter(2.0);
  const auto [x, k] = grids(p);
  const Spectrum s = forward(p, SampledFunction::from_profile(x, [](double t) { return cplx(std::exp(-t * t) * std::cos(t)); }), k);
  for (std::size_t i = 0; i < k->size(); ++i) {
    EXPECT_LE(std::fabs(s.values()[i].imag()), 1e-10);
    EXPECT_NEAR(s.values()[i].real(), s.values()[k->mirror(i)].real(), 1e-13);
  }
}

TEST(OscillatoryTail, ExponentialTailMatchesClosedForm) {
  // ∫_{|s|>S} e^{-|s|} E(isw) c_λ |s|^{2λ} ds at w = 0 is the incomplete
  // gamma mass c_λ · 2 Γ(2λ+1, S), here Γ(2, S) = (S+1) e^{-S}.
  const DunklParameter p = make_parameter(0.5);
  const double S = 5.0;
  const cplx v = oscillatory_tail(p, [](double s) { return cplx(std::exp(-std::fabs(s))); }, S, 0.0, 1);
  const double exact = p.c_lambda * 2.0 * std::exp(-S) * (S + 1);
  EXPECT_NEAR(std::abs(v - exact), 0.0, 1e-10);
}
