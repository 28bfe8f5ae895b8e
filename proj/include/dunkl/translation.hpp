#pragma once

#include "dunkl/params.hpp"
#include "dunkl/quadrature.hpp"

namespace dunkl {

/// The signed translation kernel W_λ(x, t, z) in closed form; zero unless
/// ||x|-|t|| < |z| < |x|+|t|. Throws DegenerateArguments when x·t = 0.
double kernel_W(const DunklParameter& param, double x, double t, double z);

/// Pointwise λ-translation (τ_t f)(x) through the angular formula
///   c'_λ ∫ [f_e(R) + f_o(R)(x+t)/R] (1+s)(1-s^2)^{λ-1} ds,
/// R = sqrt(x² + t² + 2xts). Returns f(t) at x = 0 and f(x) at t = 0.
/// Off-grid values come from the profile when attached, else from panel
/// interpolation; beyond the grid a profile-less f must have decayed
/// (otherwise InterpolationOutOfRange).
cplx translate_at(const DunklParameter& param, const SampledFunction& f, double t, double x, const JacobiRule& rule);

/// τ_t f on the grid of f. The result carries a profile that re-evaluates
/// the angular formula, so it can be used off-grid and in the tail.
SampledFunction translate(const DunklParameter& param, const SampledFunction& f, double t, int order = 96);

/// Independent route: c_λ ∫ f(z) W_λ(x, t, z) |z|^{2λ} dz with Gauss–Jacobi
/// panels carrying the endpoint singularities of W_λ.
cplx translate_via_kernel(const DunklParameter& param, const Profile& f, double t, double x, int order = 64);

/// (f *_λ g)(x) = c_λ ∫ (τ_x f)(-t) g(t) |t|^{2λ} dt on the common grid.
/// Throws TruncationTooTight if g has not decayed at the truncation and
/// carries no profile.
SampledFunction convolve(const DunklParameter& param, const SampledFunction& f, const SampledFunction& g,
                         int order = 96);

}  // namespace dunkl
