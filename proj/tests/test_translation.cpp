#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "dunkl/error.hpp"
#include "dunkl/params.hpp"
#include "dunkl/special_functions.hpp"
#include "dunkl/transform.hpp"
#include "dunkl/translation.hpp"

using namespace dunkl;

namespace {

cplx gauss(double x) { return std::exp(-x * x / 2); }
cplx skew(double x) { return std::exp(-x * x) * (1.0 + x); }

// c_λ ∫ W(x, t, z) |z|^{2λ} dz over both support intervals. W behaves like
// ((|z|-a)(b-|z|))^{λ-1} at the ends, so that factor is moved into a
// Gauss–Jacobi weight.
double kernel_mass(const DunklParameter& p, double x, double t) {
  const double a = std::fabs(std::fabs(x) - std::fabs(t)), b = std::fabs(x) + std::fabs(t);
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const GaussRule r = gauss_jacobi(64, p.lambda - 1, p.lambda - 1);
  double acc = 0.0;
  for (int sgn : {-1, 1}) {
    for (std::size_t k = 0; k < r.nodes.size(); ++k) {
      const double s = r.nodes[k];
      const double z = c + h * s;
      acc += r.weights[k] * h * kernel_W(p, x, t, sgn * z) * std::pow(z, 2 * p.lambda) /
             std::pow(1 - s * s, p.lambda - 1);
    }
  }
  return p.c_lambda * acc;
}

}  // namespace

TEST(KernelW, SupportAndSymmetry) {
  const DunklParameter p = make_parameter(0.7);
  EXPECT_EQ(kernel_W(p, 1.0, 2.0, 0.5), 0.0);
  EXPECT_EQ(kernel_W(p, 1.0, 2.0, 3.5), 0.0);
  EXPECT_EQ(kernel_W(p, -1.0, 2.0, -3.01), 0.0);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 50; ++k) {
    const double x = u(rng), t = u(rng), z = u(rng);
    EXPECT_NEAR(kernel_W(p, x, t, z), kernel_W(p, t, x, z), 1e-12 * (1 + std::fabs(kernel_W(p, x, t, z))));
  }
  try {
    kernel_W(p, 0.0, 1.0, 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateArguments);
  }
}

TEST(KernelW, UnitMass) {
  for (double lam : {0.5, 1.0, 2.0}) {
    const DunklParameter p = make_parameter(lam);
    for (auto [x, t] : {std::pair{1.0, 0.5}, std::pair{-0.7, 1.3}, std::pair{2.0, -2.5}}) {
      EXPECT_NEAR(kernel_mass(p, x, t), 1.0, 1e-8) << lam << " " << x << " " << t;
      const cplx via = translate_via_kernel(p, [](double) { return cplx(1.0); }, t, x);
      EXPECT_NEAR(std::abs(via - 1.0), 0.0, 1e-8);
    }
  }
}

TEST(Translate, IdentityAtZeroAndOrigin) {
  const DunklParameter p = make_parameter(0.5);
  const GridPtr g = build_weighted_grid(p, 8.0, 256);
  const auto f = SampledFunction::from_profile(g, skew);
  const SampledFunction t0 = translate(p, f, 0.0);
  for (std::size_t i = 0; i < g->size(); ++i) EXPECT_EQ(t0.values()[i], f.values()[i]);
  const JacobiRule rule = build_jacobi_rule(p, 96);
  EXPECT_EQ(translate_at(p, f, 1.3, 0.0, rule), skew(1.3));
  // Continuity of the x = 0 convention.
  EXPECT_NEAR(std::abs(translate_at(p, f, 1.3, 1e-7, rule) - skew(1.3)), 0.0, 1e-6);
}

TEST(Translate, SymmetryAndKernelRoute) {
  for (double lam : {0.25, 0.5, 1.5}) {
    const DunklParameter p = make_parameter(lam);
    const GridPtr g = build_weighted_grid(p, 8.0, 256);
    const auto f = SampledFunction::from_profile(g, skew);
    const JacobiRule rule = build_jacobi_rule(p, 96);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-2.5, 2.5);
    for (int k = 0; k < 8; ++k) {
      const double x = u(rng), t = u(rng);
      const cplx a = translate_at(p, f, t, x, rule);
      EXPECT_NEAR(std::abs(a - translate_at(p, f, x, t, rule)), 0.0, 1e-10);
      EXPECT_NEAR(std::abs(a - translate_via_kernel(p, skew, t, x)), 0.0, 1e-7) << lam << " " << x << " " << t;
    }
  }
}

TEST(Translate, SpectralMultiplier) {
  const DunklParameter p = make_parameter(0.5);
  const GridPtr x = build_weighted_grid(p, 20.0, 768);
  const GridPtr k = build_weighted_grid(p, 12.0, 512);
  const auto f = SampledFunction::from_profile(x, gauss);
  const double t = 1.0;
  const Spectrum lhs = forward(p, translate(p, f, t), k);
  const Spectrum ff = forward(p, f, k);
  const DunklKernel E(p);
  double m = 0.0;
  for (std::size_t i = 0; i < k->size(); ++i) m = std::max(m, std::abs(lhs.values()[i] - E(t * k->nodes()[i]) * ff.values()[i]));
  EXPECT_LE(m, 1e-5);
}

TEST(Translate, UniformBound) {
  const DunklParameter p = make_parameter(0.5);
  const GridPtr g = build_weighted_grid(p, 16.0, 512);
  const auto f = SampledFunction::from_profile(g, skew);
  for (double t : {0.5, 2.0, -3.0}) {
    const SampledFunction tf = translate(p, f, t);
    for (double q : {1.0, 2.0, std::numeric_limits<double>::infinity()}) EXPECT_LE(tf.norm(q) / f.norm(q), 4.05) << t << " " << q;
  }
}

TEST(Convolve, ZeroAndCommutative) {
  const DunklParameter p = make_parameter(0.5);
  const GridPtr g = build_weighted_grid(p, 10.0, 256);
  const auto f = SampledFunction::from_profile(g, skew);
  const auto h = SampledFunction::from_profile(g, gauss);
  const auto z = convolve(p, f, SampledFunction::from_profile(g, [](double) { return cplx(0.0); }));
  for (const cplx& v : z.values()) EXPECT_EQ(v, cplx(0.0));
  const auto a = convolve(p, f, h), b = convolve(p, h, f);
  EXPECT_LE(relative_l2_error(a, b), 1e-6);
}

TEST(Convolve, ConvolutionTheorem) {
  const DunklParameter p = make_parameter(1.0);
  const GridPtr x = build_weighted_grid(p, 12.0, 384);
  const GridPtr k = build_weighted_grid(p, 10.0, 384);
  const auto f = SampledFunction::from_profile(x, skew);
  const auto h = SampledFunction::from_profile(x, gauss);
  const Spectrum lhs = forward(p, convolve(p, f, h), k);
  const Spectrum a = forward(p, f, k), b = forward(p, h, k);
  double m = 0.0;
  for (std::size_t i = 0; i < k->size(); ++i) m = std::max(m, std::abs(lhs.values()[i] - a.values()[i] * b.values()[i]));
  EXPECT_LE(m, 1e-5);
}

TEST(Convolve, ApproximateIdentity) {
  const DunklParameter p = make_parameter(0.5);
  const GridPtr g = build_weighted_grid(p, 10.0, 512);
  const auto f = SampledFunction::from_profile(g, skew);
  double prev = INFINITY;
  for (double eps : {1.0, 0.5, 0.25}) {
    // φ_ε with unit λ-mass: the Gaussian e^{-x²/(2ε²)} scaled by ε^{-2λ-1}.
    const double scale = std::pow(eps, -2 * p.lambda - 1);
    const auto phi = SampledFunction::from_profile(g, [&](double x) { return scale * gauss(x / eps); });
    const double d = relative_l2_error(convolve(p, f, phi), f);
    EXPECT_LT(d, prev) << eps;
    prev = d;
  }
}
