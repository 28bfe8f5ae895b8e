#pragma once

#include <functional>
#include <utility>

#include "dunkl/params.hpp"
#include "dunkl/quadrature.hpp"

namespace dunkl {

/// Derivative order of the in-panel differentiation used by apply_D: the
/// scheme is exact for polynomials of degree below the panel order.
int scheme_order(const WeightedGrid& grid);

/// (Df)(x) = f'(x) + (λ/x)(f(x) - f(-x)). The reflection uses the mirrored
/// node, never interpolation. Throws AsymmetricGrid if the node set is not
/// closed under negation.
SampledFunction apply_D(const DunklParameter& param, const SampledFunction& f);

/// (D²f)(x) = f'' + (2λ/x) f' - (λ/x²)(f(x) - f(-x)).
SampledFunction apply_D_squared(const DunklParameter& param, const SampledFunction& f);

/// f0 + (x/2)[∫ sgn(s) g(sx) ds + ∫ g(sx)|s|^{2λ} ds] over s in [-1, 1]:
/// recovers f(x) from g = Df and f(0) = f0.
double inverse_D_pointwise(const DunklParameter& param, const SampledFunction& g, double f0, double x);

/// A function on the upper half plane, evaluated at stencil points.
using HalfPlaneFunction = std::function<double(double x, double y)>;

/// |(D_x² + ∂_y²) u| at (x, y) with second-order central differences of
/// step h; the reflection term uses u(-x, y) exactly. Throws BoundaryPoint
/// when the stencil leaves the open half plane or touches the axis x = 0.
double lambda_laplacian_residual(const DunklParameter& param, const HalfPlaneFunction& u, double x, double y,
                                 double h);

/// Residuals of D_x u = ∂_y v and ∂_y u = -D_x v at (x, y), same stencils.
std::pair<double, double> cauchy_riemann_residuals(const DunklParameter& param, const HalfPlaneFunction& u,
                                                   const HalfPlaneFunction& v, double x, double y, double h);

}  // namespace dunkl
