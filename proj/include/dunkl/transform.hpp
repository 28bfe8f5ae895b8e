#pragma once

#include <memory>
#include <vector>

#include "dunkl/params.hpp"
#include "dunkl/quadrature.hpp"

namespace dunkl {

/// Frequency-side samples. The frequency grid belongs to the same grid
/// family as the space grid, so a Spectrum is a SampledFunction.
using Spectrum = SampledFunction;

/// Precomputed kernel tables for one (space grid, frequency grid) pair.
///
/// Stores j_{λ-1/2}(x ξ) and x ξ j_{λ+1/2}(x ξ)/(2λ+1) for positive x and
/// positive ξ. The even/odd split of the input reduces both directions of
/// the transform to two real matrix products over half the nodes.
class TransformPlan {
 public:
  TransformPlan(const DunklParameter& param, GridPtr x_grid, GridPtr xi_grid);

  const DunklParameter& param() const { return param_; }
  const GridPtr& x_grid() const { return x_grid_; }
  const GridPtr& xi_grid() const { return xi_grid_; }

  /// c_λ ∫ f(x) E_λ(-ixξ) |x|^{2λ} dx on the frequency grid. When f carries a
  /// profile with a non-negligible tail, the part |x| > X is added by
  /// oscillatory quadrature with Wynn-ε acceleration. Throws
  /// TruncationTooTight when a profile-less f has not decayed at ±X.
  Spectrum forward(const SampledFunction& f) const;

  /// c_λ ∫ g(ξ) E_λ(ixξ) |ξ|^{2λ} dξ on the space grid.
  SampledFunction inverse(const Spectrum& g) const;

 private:
  DunklParameter param_;
  GridPtr x_grid_, xi_grid_;
  std::size_t mx_, mk_;
  std::vector<double> even_, odd_;  // row k (frequency), column j (space)

  std::vector<cplx> apply(const SampledFunction& f, bool to_frequency) const;
};

/// Returns a plan from a small process-wide cache keyed by the grid pair.
std::shared_ptr<const TransformPlan> transform_plan(const DunklParameter& param, const GridPtr& x_grid,
                                                    const GridPtr& xi_grid);

Spectrum forward(const DunklParameter& param, const SampledFunction& f, const GridPtr& xi_grid);
SampledFunction inverse(const DunklParameter& param, const Spectrum& g, const GridPtr& x_grid);

/// |‖F_λ f‖_2 - ‖f‖_2| / ‖f‖_2. The frequency grid defaults to the space grid.
/// Throws ZeroFunction for f = 0.
double plancherel_defect(const DunklParameter& param, const SampledFunction& f, GridPtr xi_grid = nullptr);

/// max_ξ |F_λ(Df)(ξ) - iξ F_λ f(ξ)| with Df from apply_D.
double derivative_multiplier_defect(const DunklParameter& param, const SampledFunction& f, GridPtr xi_grid = nullptr);

/// ‖F_λ f‖_{p'} / ‖f‖_p for p in [1, 2].
double hausdorff_young_ratio(const DunklParameter& param, const SampledFunction& f, double p, GridPtr xi_grid = nullptr);

/// Relative L²_λ distance ‖g - f‖ / ‖f‖ on a common grid.
double relative_l2_error(const SampledFunction& g, const SampledFunction& f);

/// ∫_{|s|>S} h(s) E_λ(σ i s w) c_λ |s|^{2λ} ds for an analytic profile h
/// (σ = ±1), summed over geometric then half-period panels with Wynn-ε
/// extrapolation of the partial sums.
cplx oscillatory_tail(const DunklParameter& param, const Profile& h, double S, double w, int sigma);

}  // namespace dunkl
