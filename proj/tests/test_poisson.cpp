#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dunkl/error.hpp"
#include "dunkl/params.hpp"
#include "dunkl/poisson.hpp"
#include "dunkl/transform.hpp"

using namespace dunkl;

namespace {

// c_λ ∫ K(t) |t|^{2λ} dt for a kernel decaying like P_y(t): graded panels up
// to T plus the analytic tail 2 c_λ m_λ y / T of the far-field profile.
double kernel_mass(const DunklParameter& p, double y, const std::function<double(double)>& k) {
  std::vector<double> edges{0.0};
  for (double e = 1.0 / 64; e < 1e4; e *= 1.25) edges.push_back(e);
  edges.push_back(1e4);
  const GridPtr g = build_graded_grid(p, edges, 16);
  double acc = 0.0;
  for (std::size_t i = 0; i < g->size(); ++i) acc += g->weights()[i] * k(g->nodes()[i]);
  return acc + 2.0 * p.c_lambda * p.m_lambda * y / 1e4;
}

}  // namespace

TEST(PoissonKernel, ValueAtOrigin) {
  const DunklParameter p = make_parameter(0.5);
  EXPECT_NEAR(poisson_kernel(p, 0.0, 1.0, 0.0), 1.0, 1e-14);
  for (double lam : {0.25, 1.0, 3.0}) {
    const DunklParameter q = make_parameter(lam);
    for (double t : {-2.0, 0.3, 1.7}) EXPECT_NEAR(poisson_kernel(q, 0.0, 0.8, t) / poisson_profile(q, 0.8, t), 1.0, 1e-13);
  }
}

TEST(PoissonKernel, PositiveAndRoutesAgree) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-4.0, 4.0), ly(-3.0, 1.0);
  for (double lam : {0.25, 0.5, 1.0, 3.0}) {
    const DunklParameter p = make_parameter(lam);
    for (int k = 0; k < 40; ++k) {
      const double x = u(rng), t = u(rng), y = std::pow(10.0, ly(rng));
      const double a = poisson_kernel(p, x, y, t);
      EXPECT_GT(a, 0.0);
      EXPECT_NEAR(a / poisson_kernel(p, x, y, t, KernelRoute::Quadrature), 1.0, 1e-10);
      const double c = conjugate_poisson_kernel(p, x, y, t);
      EXPECT_NEAR(c, conjugate_poisson_kernel(p, x, y, t, KernelRoute::Quadrature), 1e-10 * std::max(1.0, std::fabs(c)));
    }
  }
}

TEST(PoissonKernel, UnitMass) {
  for (double lam : {0.5, 1.0}) {
    const DunklParameter p = make_parameter(lam);
    for (auto [x, y] : {std::pair{0.0, 1.0}, std::pair{0.7, 0.5}, std::pair{-1.5, 2.0}}) {
      const double m = kernel_mass(p, y, [&](double t) { return poisson_kernel(p, x, y, t); });
      EXPECT_NEAR(m, 1.0, 1e-6) << lam << " " << x << " " << y;
    }
  }
}

TEST(PoissonKernel, SpectralIdentity) {
  const DunklParameter p = make_parameter(0.5);
  for (auto [x, y, t] : {std::array{0.3, 1.0, -0.8}, std::array{1.2, 0.5, 0.9}, std::array{-2.0, 2.0, 1.0}}) {
    EXPECT_NEAR(poisson_kernel(p, x, y, t), poisson_kernel_spectral(p, x, y, t), 1e-6);
    EXPECT_NEAR(conjugate_poisson_kernel(p, x, y, t), conjugate_poisson_kernel_spectral(p, x, y, t), 1e-6);
  }
}

TEST(ConjugateKernel, ZeroOnDiagonalAndProfileAtOrigin) {
  const DunklParameter p = make_parameter(0.5);
  EXPECT_EQ(conjugate_poisson_kernel(p, 0.8, 0.3, 0.8), 0.0);
  // (τ_0 Q_1)(-1) = Q_1(-1) = -m_λ 2^{-3/2} with m_λ = 1.
  EXPECT_NEAR(conjugate_poisson_kernel(p, 0.0, 1.0, 1.0), -std::pow(2.0, -1.5), 1e-14);
}

TEST(PoissonKernel, NonPositiveY) {
  const DunklParameter p = make_parameter(1.0);
  for (double y : {0.0, -1.0}) {
    try {
      poisson_kernel(p, 0.5, y, 0.2);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::NonPositiveY);
    }
    EXPECT_THROW(conjugate_poisson_kernel(p, 0.5, y, 0.2), Error);
  }
}

TEST(Lattice, Construction) {
  const DunklParameter p = make_parameter(1.0);
  const GridPtr g = build_weighted_grid(p, 4.0, 64);
  const HalfPlaneLattice L = make_lattice(g, 1e-3, 10.0, 64);
  ASSERT_EQ(L.y.size(), 64u);
  EXPECT_NEAR(L.y.front(), 1e-3, 1e-15);
  EXPECT_NEAR(L.y.back(), 10.0, 1e-12);
  for (std::size_t j = 1; j < L.y.size(); ++j) EXPECT_GT(L.y[j], L.y[j - 1]);
  EXPECT_THROW(make_lattice(g, 0.0, 1.0, 8), Error);
  EXPECT_THROW(make_lattice(g, 1e-3, 1.0, 0), Error);
  EXPECT_THROW(make_lattice(g, 1.0, 1e-3, 8), Error);
  EXPECT_EQ(make_lattice(g, 0.5, 10.0, 1).y, std::vector<double>{0.5});
}

TEST(PoissonIntegral, SemigroupOnPoissonProfile) {
  const DunklParameter p = make_parameter(0.5);
  const PoissonKernels K(p);
  const GridPtr g = build_weighted_grid(p, 12.0, 384);
  const double y0 = 0.5;
  const auto f = SampledFunction::from_profile(g, [&](double t) { return cplx(poisson_profile(p, y0, t)); });
  for (double x : {0.0, 0.4, -1.3, 3.0})
    for (double y : {0.05, 0.5, 2.0}) {
      EXPECT_NEAR(std::abs(poisson_at(K, f, x, y) - poisson_profile(p, y0 + y, x)), 0.0, 1e-5) << x << " " << y;
      EXPECT_NEAR(std::abs(conjugate_poisson_at(K, f, x, y) - conjugate_profile(p, y0 + y, x)), 0.0, 1e-5) << x << " " << y;
    }
}

TEST(PoissonIntegral, SpectralRouteOnGaussian) {
  const DunklParameter p = make_parameter(1.0);
  const PoissonKernels K(p);
  const GridPtr x = build_weighted_grid(p, 16.0, 512);
  const GridPtr k = build_weighted_grid(p, 16.0, 512);
  const auto f = SampledFunction::from_profile(x, [](double t) { return cplx(std::exp(-t * t / 2) * (1 + t)); });
  const Spectrum s = forward(p, f, k);
  for (double y : {0.1, 1.0}) {
    std::vector<cplx> m(k->size());
    for (std::size_t i = 0; i < k->size(); ++i) m[i] = std::exp(-y * std::fabs(k->nodes()[i])) * s.values()[i];
    const SampledFunction u = inverse(p, SampledFunction(k, m), x);
    for (std::size_t i = 0; i < x->size(); i += 41) {
      const double xi = x->nodes()[i];
      if (std::fabs(xi) > 6) continue;
      EXPECT_NEAR(std::abs(poisson_at(K, f, xi, y) - u.values()[i]), 0.0, 1e-5) << xi << " " << y;
    }
  }
}

TEST(PoissonIntegral, ZeroAndContraction) {
  const DunklParameter p = make_parameter(0.5);
  const GridPtr g = build_weighted_grid(p, 10.0, 256);
  const HalfPlaneLattice L = make_lattice(g, 1e-2, 5.0, 6);
  const auto z = poisson_integral(p, SampledFunction::from_profile(g, [](double) { return cplx(0.0); }), L);
  for (const cplx& v : z.values) EXPECT_EQ(v, cplx(0.0));
  const auto f = SampledFunction::from_profile(g, [](double t) { return cplx(std::exp(-t * t) * (1 + t)); });
  const auto u = poisson_integral(p, f, L);
  for (std::size_t j = 0; j < L.y.size(); ++j) {
    std::vector<cplx> row(u.values.begin() + j * u.nx, u.values.begin() + (j + 1) * u.nx);
    const SampledFunction uy(g, row);
    for (double q : {1.0, 2.0}) EXPECT_LE(uy.norm(q), f.norm(q) * (1 + 1e-3)) << L.y[j] << " " << q;
  }
}

TEST(Maximal, PoissonProfileAndOrdering) {
  const DunklParameter p = make_parameter(0.5);
  const GridPtr g = build_weighted_grid(p, 12.0, 256);
  const HalfPlaneLattice L = make_lattice(g, 1e-3, 10.0, 12);
  const double y0 = 1.0;
  const auto f = SampledFunction::from_profile(g, [&](double t) { return cplx(poisson_profile(p, y0, t)); });
  const auto u = poisson_integral(p, f, L);
  const MaximalSample rad = maximal(L, u, MaximalKind::Radial);
  const MaximalSample nt = maximal(L, u, MaximalKind::Nontangential);
  // x = 0 is not a node; use the central pair, whose sup sits at y_min.
  const std::size_t c = g->half_size();
  EXPECT_NEAR(rad.values[c], poisson_profile(p, y0 + L.y.front(), g->nodes()[c]), 1e-6);
  EXPECT_NEAR(rad.values[c] / (p.m_lambda * std::pow(y0, -2 * p.lambda - 1)), 1.0, 3e-3);
  for (std::size_t i = 0; i < rad.values.size(); ++i) {
    EXPECT_GE(rad.values[i], 0.0);
    EXPECT_GE(nt.values[i], rad.values[i]);
  }
  EXPECT_GE(nt.cone_samples, 1);
}
