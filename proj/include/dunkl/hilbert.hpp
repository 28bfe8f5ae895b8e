#pragma once

#include <vector>

#include "dunkl/params.hpp"
#include "dunkl/poisson.hpp"
#include "dunkl/quadrature.hpp"

namespace dunkl {

/// h(x, t) = K (x - t) I(x² + t², 2xt), the y = 0 conjugate kernel. Throws
/// DiagonalPoint at t = x and at t = -x ≠ 0 (a logarithmic singularity).
double hilbert_kernel(const DunklParameter& param, double x, double t, KernelRoute route = KernelRoute::ClosedForm);

/// Excision radii for the principal value, largest first.
struct PVSchedule {
  std::vector<double> epsilons{0.1, 0.05, 0.025, 0.0125};
  /// Number of powers ε, ε², ... removed by polynomial extrapolation to ε = 0.
  int extrapolation_order = 2;
  /// Allowed disagreement of two extrapolants, relative to max(1, sup |f|).
  double tolerance = 1e-3;
};

/// Throws InvalidConfig unless there are ≥ 3 decreasing positive radii with
/// successive ratios in [2, 4] and 1 ≤ extrapolation_order < #radii.
void validate(const PVSchedule& schedule);

struct PVResult {
  cplx value;
  double error_estimate = 0.0;
  std::vector<cplx> excised;  ///< c_λ ∫_{|t-x|>ε} f h |t|^{2λ} dt per radius
};

/// Principal value of c_λ ∫ f(t) h(x, t) |t|^{2λ} dt by symmetric excision
/// and extrapolation in ε. Near the origin every radius is scaled so that
/// ε₀ ≤ |x|/(2(2λ+1)): the window then stays clear of t = 0 and t = -x and
/// inside the region where the kernel is close to 1/(π(x - t)). The error estimate compares the extrapolant of
/// the smallest radii with the one shifted by a radius. Throws
/// NonConvergentPV when that exceeds the schedule tolerance.
PVResult hilbert_pv(const DunklParameter& param, const SampledFunction& f, double x, const PVSchedule& schedule = {});

/// Principal value at one point by subtracting f(x)/(π(x - t)) on a
/// symmetric window around x, where it integrates to zero. Used for
/// off-grid evaluation; the grid samples serve panels far from t = ±x.
cplx hilbert_at(const PoissonKernels& kernels, const SampledFunction& f, double x);

/// F^{-1}[-i sgn(ξ) F f] on f's grid. With extend_tail the result also
/// carries values on the tail rule (computed by hilbert_at), so norms and
/// further transforms see the slow x^{-2λ-1} decay beyond the grid.
SampledFunction hilbert_multiplier(const DunklParameter& param, const SampledFunction& f, GridPtr xi_grid = nullptr,
                                   bool extend_tail = true);

/// Qf(·, y) on f's grid for decreasing y, extrapolated to y = 0 by the full
/// Neville table. Throws PreconditionViolated for fewer than 2 levels or a
/// non-decreasing sequence, NonConvergentBoundary when the L²_λ distance
/// between successive levels fails to shrink.
SampledFunction hilbert_boundary(const DunklParameter& param, const SampledFunction& f,
                                 const std::vector<double>& y_sequence = {0.2, 0.1, 0.05, 0.025});

/// Same extrapolation at arbitrary points.
std::vector<cplx> hilbert_boundary_at(const DunklParameter& param, const SampledFunction& f,
                                      const std::vector<double>& x_points,
                                      const std::vector<double>& y_sequence = {0.2, 0.1, 0.05, 0.025});

/// Value at 0 of the polynomial through (h_k, v_k).
cplx extrapolate_to_zero(const std::vector<double>& h, const std::vector<cplx>& v);

}  // namespace dunkl
