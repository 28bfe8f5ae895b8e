#include <gtest/gtest.h>

#include <cmath>

#include "dunkl/error.hpp"
#include "dunkl/params.hpp"
#include "dunkl/special_functions.hpp"

using namespace dunkl;

TEST(Bessel, ValueAtZero) {
  for (double a : {-0.5, 0.0, 0.25, 1.5, 7.0}) EXPECT_EQ(bessel_j_normalized(a, 0.0), cplx(1.0));
}

TEST(Bessel, HalfIntegerClosedForms) {
  EXPECT_NEAR(std::abs(bessel_j_normalized(0.5, M_PI)), 0.0, 1e-15);
  const double z = M_PI / 2;
  const double j32 = 3.0 * (std::sin(z) - z * std::cos(z)) / (z * z * z);
  EXPECT_NEAR(bessel_j_normalized(1.5, z).real(), j32, 1e-14);
  // j_{1/2}(x) = sin x / x, on both sides of the series/library switch.
  for (double x : {0.3, 5.0, 31.0, 59.5, 75.0, 200.0}) {
    EXPECT_NEAR(bessel_j_normalized(0.5, x).real(), std::sin(x) / x, 1e-14) << x;
    EXPECT_NEAR(bessel_j_normalized(-0.5, x).real(), std::cos(x), 1e-13) << x;
  }
}

TEST(Bessel, AgreesWithStandardLibrary) {
  // j_α(x) = Γ(α+1) (2/x)^α J_α(x).
  for (double a : {0.25, 1.0, 2.75}) {
    const NormalizedBessel fast(a);
    for (double x : {0.01, 1.7, 9.0, 33.0, 58.0}) {
      const double ref = std::tgamma(a + 1) * std::pow(2.0 / x, a) * std::cyl_bessel_j(a, x);
      EXPECT_NEAR(bessel_j_normalized(a, x).real(), ref, 1e-13) << a << " " << x;
      EXPECT_NEAR(fast(x), ref, 1e-13) << a << " " << x;
    }
  }
}

TEST(Bessel, ComplexArgument) {
  // j_{-1/2}(iy) = cosh y.
  EXPECT_NEAR(std::abs(bessel_j_normalized(-0.5, cplx(0.0, 2.0)) - std::cosh(2.0)), 0.0, 1e-13);
  try {
    bessel_j_normalized(0.5, cplx(70.0, 1.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ArgumentTooLarge);
  }
}

TEST(DunklKernel, UnitAtOrigin) {
  for (double lam : {0.25, 0.5, 1.0, 3.0}) {
    const auto e = dunkl_kernel(make_parameter(lam), 0.0);
    EXPECT_NEAR(std::abs(e.value - 1.0), 0.0, 1e-15);
  }
}

TEST(DunklKernel, HalfLambdaIsBesselPair) {
  // λ = 1/2: E(ix) = J_0(x) + i J_1(x).
  const DunklKernel E(make_parameter(0.5));
  for (double x : {-12.0, -0.4, 0.9, 7.5, 39.0}) {
    const cplx ref(std::cyl_bessel_j(0.0, std::fabs(x)), (x < 0 ? -1.0 : 1.0) * std::cyl_bessel_j(1.0, std::fabs(x)));
    EXPECT_NEAR(std::abs(E(x) - ref), 0.0, 1e-13) << x;
  }
}

TEST(DunklKernel, SmallLambdaLimit) {
  const auto e = dunkl_kernel(make_parameter(1e-6), M_PI);
  EXPECT_NEAR(std::abs(e.value - cplx(-1.0, 0.0)), 0.0, 1e-4);
}

TEST(DunklKernel, SeriesAgainstLaplace) {
  const auto s = dunkl_kernel(make_parameter(1.0), 2.0, KernelMethod::Series);
  const auto l = dunkl_kernel(make_parameter(1.0), 2.0, KernelMethod::Laplace);
  EXPECT_EQ(s.method, KernelMethod::Series);
  EXPECT_EQ(l.method, KernelMethod::Laplace);
  EXPECT_NEAR(std::abs(s.value - l.value), 0.0, 1e-12);
  for (double lam : {0.25, 0.5, 1.0, 3.0}) {
    const DunklParameter p = make_parameter(lam);
    for (double x = -40.0; x <= 40.0; x += 3.7) {
      const cplx a = dunkl_kernel(p, x, KernelMethod::Series).value;
      const cplx b = dunkl_kernel(p, x, KernelMethod::Laplace).value;
      EXPECT_NEAR(std::abs(a - b), 0.0, 1e-11) << lam << " " << x;
    }
  }
}

TEST(DunklKernel, BoundedAndConjugateSymmetric) {
  for (double lam : {0.25, 1.0, 3.0}) {
    const DunklKernel E(make_parameter(lam));
    for (double x = -50.0; x <= 50.0; x += 0.37) {
      EXPECT_LE(std::abs(E(x)), 1.0 + 1e-14);
      EXPECT_NEAR(std::abs(E(-x) - std::conj(E(x))), 0.0, 1e-15);
    }
  }
}

TEST(DunklKernel, EigenResidual) {
  const DunklParameter p = make_parameter(0.5);
  EXPECT_NEAR(dunkl_kernel_eigen_residual(p, 0.8, 0.0, 1e-3), 0.0, 1e-12);
  EXPECT_LE(dunkl_kernel_eigen_residual(p, 1.0, 2.0, 1e-4), 1e-6);
  const double r1 = dunkl_kernel_eigen_residual(p, 1.0, 2.0, 1e-2);
  const double r2 = dunkl_kernel_eigen_residual(p, 1.0, 2.0, 5e-3);
  EXPECT_NEAR(r1 / r2, 4.0, 0.1);
}

TEST(AngularIntegral, OriginAndQuadratureRoute) {
  for (double lam : {0.25, 0.5, 1.0, 3.0}) {
    const AngularIntegral I(lam);
    const double mass = std::tgamma(lam) * std::sqrt(M_PI) / std::tgamma(lam + 0.5);
    // B = 0 leaves A^{-λ-1} times the angular mass.
    EXPECT_NEAR(I(1.3, 0.0, 0.4) / (std::pow(1.69 + 0.16, -lam - 1) * mass), 1.0, 1e-13);
    for (auto [y, x, t] : {std::array{1.0, 0.3, -0.8}, std::array{0.05, 1.0, 1.02}, std::array{0.2, -2.0, 1.9},
                           std::array{2.0, 5.0, 4.0}}) {
      const double a = I(y, x, t), b = angular_integral_quadrature(lam, y, x, t);
      EXPECT_NEAR(a / b, 1.0, 1e-11) << lam << " " << y << " " << x << " " << t;
    }
  }
}
