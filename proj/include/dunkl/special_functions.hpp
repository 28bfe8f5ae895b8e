#pragma once

#include <complex>

#include "dunkl/params.hpp"
#include "dunkl/quadrature.hpp"

namespace dunkl {

/// j_α(z) = Γ(α+1) Σ (-1)^n (z/2)^{2n} / (n! Γ(n+α+1)).
///
/// For |z| ≤ 60 the series is summed in 80-digit binary floating point, which
/// absorbs the cancellation of the alternating terms. Real arguments beyond
/// that use the library Bessel function; complex ones raise ArgumentTooLarge.
cplx bessel_j_normalized(double alpha, cplx z);

/// Fast double-precision j_α on the real line, used inside quadrature loops.
class NormalizedBessel {
 public:
  explicit NormalizedBessel(double alpha);
  double operator()(double x) const;
  double alpha() const { return alpha_; }

 private:
  double alpha_;
  double log_prefactor_;  // log(2^α Γ(α+1))
};

enum class KernelMethod { Series, Laplace };

struct KernelEvaluation {
  cplx value;
  KernelMethod method;
  double est_error;
};

/// E_λ(iz) = j_{λ-1/2}(z) + iz/(2λ+1) j_{λ+1/2}(z).
///
/// Series evaluates the Bessel series; Laplace integrates
/// c'_λ ∫ e^{izs}(1+s)(1-s^2)^{λ-1} ds with a Gauss–Jacobi rule and is
/// only available for real z (complex z falls back to Series).
KernelEvaluation dunkl_kernel(const DunklParameter& param, cplx z, KernelMethod method = KernelMethod::Series);

/// Double-precision E_λ(ix) for real x, the form used inside transforms.
class DunklKernel {
 public:
  explicit DunklKernel(const DunklParameter& param);
  cplx operator()(double x) const;
  /// Even part j_{λ-1/2}(x) and odd part x j_{λ+1/2}(x)/(2λ+1).
  double even(double x) const { return je_(x); }
  double odd(double x) const { return x * jo_(x) * inv_; }

 private:
  NormalizedBessel je_, jo_;
  double inv_;
};

/// |D_x E_λ(ixξ) - iξ E_λ(ixξ)| with a central difference of step h for the
/// derivative and the exact reflection term.
double dunkl_kernel_eigen_residual(const DunklParameter& param, double x, double xi, double h);

/// The angular integral
///   I(A, B) = ∫_{-1}^{1} (1+s)(1-s^2)^{λ-1} (A - Bs)^{-λ-1} ds,
/// A = y^2 + x^2 + t^2, B = 2xt, shared by the Poisson, conjugate and Hilbert
/// kernels. Evaluated in closed form through Gauss hypergeometric functions
/// with argument w = 2r/(1+r), r = |B|/A; for w > 1/2 the logarithmic
/// continuation around w = 1 is used. Both A ± |B| are formed as sums of
/// squares so no cancellation occurs near the diagonal.
class AngularIntegral {
 public:
  explicit AngularIntegral(double lambda);
  double operator()(double y, double x, double t) const;
  double lambda() const { return lambda_; }

 private:
  double lambda_;
  double k0_;        // 2^{2λ} B(λ, λ+1)
  double g_even_0_;  // Γ(2λ+1)/Γ(λ+1)^2
  double g_even_1_;  // Γ(2λ+1)/Γ(λ)^2
  double g_odd_;     // Γ(2λ+1)/(Γ(λ+1)Γ(λ))
  double psi_lam_;   // ψ(λ)
  double F_even(double w) const;  // 2F1(λ, λ; 2λ+1; w)
  double F_odd(double w) const;   // 2F1(λ+1, λ; 2λ+1; w)
};

/// Independent route for I(A, B): composite Gauss quadrature graded toward
/// the near-singular endpoint, with Jacobi weights on the end panels.
double angular_integral_quadrature(double lambda, double y, double x, double t, int panel_order = 24);

/// The same quadrature for I(A, B) given A - |B| > 0 and B directly.
double angular_integral_quadrature_ab(double lambda, double a_minus_abs_b, double b, int panel_order = 24);

}  // namespace dunkl
