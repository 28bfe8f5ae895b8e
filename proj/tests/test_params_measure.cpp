#include <gtest/gtest.h>

#include <cmath>

#include "dunkl/error.hpp"
#include "dunkl/params.hpp"
#include "dunkl/quadrature.hpp"

using namespace dunkl;

namespace {

// ∫_{-1}^{1} s^{2m} (1-s²)^{λ-1} ds = B(m + 1/2, λ).
double even_moment(int m, double lam) {
  return std::exp(std::lgamma(m + 0.5) + std::lgamma(lam) - std::lgamma(m + 0.5 + lam));
}

// ∫_{-1}^{1} s^k (1+s)(1-s²)^{λ-1} ds from the even moments.
double angular_moment(int k, double lam) {
  return (k % 2 == 0) ? even_moment(k / 2, lam) : even_moment((k + 1) / 2, lam);
}

}  // namespace

TEST(Parameter, HalfIntegerConstants) {
  const DunklParameter p = make_parameter(0.5);
  EXPECT_NEAR(p.m_lambda, 1.0, 1e-15);
  EXPECT_NEAR(p.gamma_lambda, 0.25, 1e-15);
  EXPECT_NEAR(p.p_critical, 0.8, 1e-15);
  EXPECT_NEAR(p.c_lambda, 0.5, 1e-15);
  EXPECT_NEAR(p.c_prime, 1.0 / M_PI, 1e-15);
  EXPECT_NEAR(p.p0, 0.5, 1e-15);
}

TEST(Parameter, RejectsNonPositiveLambda) {
  for (double lam : {0.0, -1.0, -1e-300}) {
    try {
      make_parameter(lam);
      FAIL() << "accepted lambda " << lam;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::NonPositiveLambda);
    }
  }
  EXPECT_THROW(make_parameter(std::nan("")), Error);
}

TEST(Parameter, OrderingOfExponents) {
  for (double lam : {1e-3, 0.25, 0.5, 1.0, 3.0, 50.0}) {
    const DunklParameter p = make_parameter(lam);
    EXPECT_GT(p.c_lambda, 0.0);
    EXPECT_GT(p.c_prime, 0.0);
    EXPECT_GT(p.c_dprime, 0.0);
    EXPECT_GT(p.m_lambda, 0.0);
    EXPECT_LT(p.p0, p.p_critical);
    EXPECT_LT(p.p_critical, 1.0);
    EXPECT_NEAR(p.gamma_lambda, 1.0 / (2.0 * (2.0 * lam + 1.0)), 1e-15);
  }
}

TEST(JacobiRule, MassIsReciprocalOfAngularConstant) {
  for (double lam : {0.25, 0.5, 1.0, 1.5, 3.0}) {
    const DunklParameter p = make_parameter(lam);
    const JacobiRule rule = build_jacobi_rule(p, 32);
    const double mass = rule.integrate([](double) { return 1.0; });
    const double exact = std::tgamma(lam) * std::sqrt(M_PI) / std::tgamma(lam + 0.5);
    EXPECT_NEAR(mass / exact, 1.0, 1e-12) << "lambda " << lam;
    EXPECT_NEAR(p.c_prime * mass, 1.0, 1e-12);
  }
}

TEST(JacobiRule, LambdaOneExamples) {
  const JacobiRule rule = build_jacobi_rule(make_parameter(1.0), 16);
  EXPECT_NEAR(rule.integrate([](double) { return 1.0; }), 2.0, 1e-13);
  EXPECT_NEAR(rule.integrate([](double s) { return s; }), 2.0 / 3.0, 1e-13);
}

TEST(JacobiRule, ExactOnPolynomials) {
  const int n = 12;
  for (double lam : {0.25, 1.0, 3.0}) {
    const JacobiRule rule = build_jacobi_rule(make_parameter(lam), n);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      const double q = rule.integrate([k](double s) { return std::pow(s, k); });
      EXPECT_NEAR(q, angular_moment(k, lam), 1e-12 * std::max(1.0, angular_moment(0, lam))) << "degree " << k;
    }
  }
}

TEST(JacobiRule, TooFewNodes) {
  try {
    build_jacobi_rule(make_parameter(1.0), 7);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadResolution);
  }
}

TEST(WeightedGrid, StructuralInvariants) {
  const GridPtr g = build_weighted_grid(make_parameter(0.75), 5.0, 256);
  const auto& x = g->nodes();
  const auto& w = g->weights();
  ASSERT_EQ(x.size(), 256u);
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_GE(w[i], 0.0);
    if (i > 0) EXPECT_LT(x[i - 1], x[i]);
    EXPECT_EQ(x[i], -x[g->mirror(i)]);
    EXPECT_EQ(w[i], w[g->mirror(i)]);
  }
}

TEST(WeightedGrid, ConstantAndLinearIntegrands) {
  const DunklParameter p1 = make_parameter(1.0);
  const GridPtr g = build_weighted_grid(p1, 2.0, 128);
  EXPECT_NEAR(g->mass() / (p1.c_lambda * 2.0 * 8.0 / 3.0), 1.0, 1e-10);
  double odd = 0.0;
  for (std::size_t i = 0; i < g->size(); ++i) odd += g->weights()[i] * g->nodes()[i];
  EXPECT_NEAR(odd, 0.0, 1e-12);

  const DunklParameter ph = make_parameter(0.5);
  const GridPtr gh = build_weighted_grid(ph, 1.0, 64);
  double second = 0.0;
  for (std::size_t i = 0; i < gh->size(); ++i) second += gh->weights()[i] * gh->nodes()[i] * gh->nodes()[i];
  EXPECT_NEAR(second / (ph.c_lambda / 2.0), 1.0, 1e-10);
}

TEST(WeightedGrid, EvenMonomials) {
  for (double lam : {0.25, 0.5, 1.0, 3.0}) {
    const DunklParameter p = make_parameter(lam);
    const double X = 3.0;
    const GridPtr g = build_weighted_grid(p, X, 256);
    for (int k = 0; k <= 8; k += 2) {
      double q = 0.0;
      for (std::size_t i = 0; i < g->size(); ++i) q += g->weights()[i] * std::pow(g->nodes()[i], k);
      const double exact = p.c_lambda * 2.0 * std::pow(X, k + 2 * lam + 1) / (k + 2 * lam + 1);
      EXPECT_NEAR(q / exact, 1.0, 1e-10) << "lambda " << lam << " degree " << k;
    }
  }
}

TEST(WeightedGrid, RefinementOfSmoothIntegrand) {
  const DunklParameter p = make_parameter(0.3);
  auto quad = [&](int n) {
    const GridPtr g = build_weighted_grid(p, 8.0, n);
    double q = 0.0;
    for (std::size_t i = 0; i < g->size(); ++i) q += g->weights()[i] * std::exp(-g->nodes()[i] * g->nodes()[i]) * std::cos(g->nodes()[i]);
    return q;
  };
  EXPECT_NEAR(quad(256), quad(512), 1e-10);
}

TEST(WeightedGrid, BadInput) {
  const DunklParameter p = make_parameter(1.0);
  try {
    build_weighted_grid(p, 1.0, 8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadResolution);
  }
  try {
    build_weighted_grid(p, -1.0, 64);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PreconditionViolated);
  }
}

TEST(WeightedGrid, InterpolationAndDerivative) {
  const DunklParameter p = make_parameter(0.5);
  const GridPtr g = build_weighted_grid(p, 4.0, 256);
  const SampledFunction f = SampledFunction::from_profile(g, [](double x) { return cplx(std::sin(x)); });
  const SampledFunction s(g, f.values());
  for (double x : {-3.3, -0.01, 0.7, 2.9}) EXPECT_NEAR(std::abs(s(x) - std::sin(x)), 0.0, 1e-12);
  const auto d = g->differentiate(f.values());
  for (std::size_t i = 0; i < g->size(); i += 17) EXPECT_NEAR(d[i].real(), std::cos(g->nodes()[i]), 1e-10);
  try {
    s(5.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InterpolationOutOfRange);
  }
}

TEST(WeightedGrid, NormsOfGaussian) {
  // ‖e^{-x²}‖_2² = c_λ ∫ e^{-2x²}|x|^{2λ} dx = c_λ Γ(λ+1/2) 2^{-λ-1/2}.
  for (double lam : {0.25, 1.0}) {
    const DunklParameter p = make_parameter(lam);
    const GridPtr g = build_weighted_grid(p, 8.0, 256);
    const SampledFunction f = SampledFunction::from_profile(g, [](double x) { return cplx(std::exp(-x * x)); });
    const double exact2 = p.c_lambda * std::tgamma(lam + 0.5) * std::pow(2.0, -lam - 0.5);
    EXPECT_NEAR(f.norm(2) * f.norm(2) / exact2, 1.0, 1e-12);
    // The origin is not a node, so the discrete sup sits at the central pair.
    const double xc = g->nodes()[g->half_size()];
    EXPECT_NEAR(f.norm(INFINITY), std::exp(-xc * xc), 1e-15);
  }
}
