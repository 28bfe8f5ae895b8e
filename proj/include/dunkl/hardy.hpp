#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dunkl/params.hpp"
#include "dunkl/poisson.hpp"
#include "dunkl/quadrature.hpp"

namespace dunkl {

/// c_λ ∫_a^b |t|^{2λ} dt in closed form.
double interval_measure(const DunklParameter& param, double a, double b);

enum class AtomShape { SignSplit, HaarLike, RandomZeroMean };

std::string to_string(AtomShape shape);

/// A piecewise-constant p_λ-atom on I = (t0 - δ, t0 + δ): heights[k] on
/// the cell (edges[k], edges[k+1]), zero outside I.
struct Atom {
  double lambda = 0.0;
  double t0 = 0.0;
  double delta = 0.0;
  double p = 1.0;
  AtomShape shape = AtomShape::SignSplit;
  std::vector<double> edges;
  std::vector<double> heights;
  double measure = 0.0;  ///< |I|_λ

  double operator()(double x) const;
  double sup_norm() const;
  /// c_λ ∫ a(t) |t|^{2λ} dt from the closed-form cell measures.
  double moment() const;
};

/// Builds an atom whose sup equals the size bound |I|_λ^{-1/p} (K = 1).
/// SignSplit: ±bound on two cells of equal λ-measure (a(x) = bound·sgn x for
/// I symmetric about 0). HaarLike: split at t0, one height at the bound, the
/// other fixed by the cancellation condition. RandomZeroMean: 8 equal cells
/// with seeded uniform heights projected to weighted mean zero.
/// Throws PreconditionViolated for δ ≤ 0 or p ∉ (p_critical, 1], and
/// InfeasibleAtom when the projection leaves nothing to rescale.
Atom make_atom(const DunklParameter& param, double t0, double delta, double p, AtomShape shape,
               std::uint64_t seed = 0);

struct AtomInvariants {
  bool support = false;       ///< heights live on cells inside I
  bool size = false;          ///< sup ≤ |I|_λ^{-1/p} (relative slack 1e-12)
  bool cancellation = false;  ///< |moment| ≤ 1e-12 |I|_λ^{1-1/p}
  double sup = 0.0, bound = 0.0, moment = 0.0, moment_bound = 0.0;
  bool ok() const { return support && size && cancellation; }
};

AtomInvariants check_atom(const DunklParameter& param, const Atom& atom);

/// a_r(x) = r^{(2λ+1)/p} a(r x) for an atom centred at 0. Throws
/// PreconditionViolated for t0 ≠ 0 or r ≤ 0.
Atom dilate(const DunklParameter& param, const Atom& atom, double r);

/// f = Σ coefficient_n a_n.
struct AtomicSum {
  std::vector<Atom> atoms;
  std::vector<double> coefficients;

  double operator()(double x) const;
  /// Σ |coefficient_n|^p.
  double coefficient_sum(double p) const;
};

AtomicSum single(const Atom& atom);

/// Resolution of the atom-adapted lattice. Panels shrink toward every cell
/// edge (and its mirror) down to width δ_min/4 and grow geometrically away
/// from them; level k halves all widths and doubles the y density.
struct AtomLatticeOptions {
  int level = 0;
  int order = 8;            ///< Gauss points per x panel
  double far_factor = 64;   ///< X = far_factor · max_n(|t0_n| + δ_n)
  double y_min_factor = 1e-3;  ///< y_min = y_min_factor · min δ_n
  int y_per_decade = 4;
};

HalfPlaneLattice atom_lattice(const DunklParameter& param, const AtomicSum& f, const AtomLatticeOptions& opt = {});

/// (P f)(x, y) or (Q f)(x, y) on the lattice, integrating the kernel cell by
/// cell (the piecewise constant is exact on every cell).
LatticeSamples atom_poisson(const DunklParameter& param, const AtomicSum& f, const HalfPlaneLattice& lattice,
                            bool conjugate);

/// (H_λ f)(x) for an atomic sum: on the cell containing x the part
/// 1/(π(x - t)) is removed on a window around x and its principal value
/// added in closed form. Throws DiagonalPoint at a cell edge.
std::vector<double> atom_hilbert(const DunklParameter& param, const AtomicSum& f, const std::vector<double>& xs);

/// Discrete ‖P*f‖^p_{L^p_λ} with resolution metadata.
struct HpEstimate {
  double p = 1.0;
  double value = 0.0;
  double tail = 0.0;  ///< power-law extrapolation beyond the lattice (included in value)
  std::size_t nx = 0, ny = 0;
  double y_min = 0.0, y_max = 0.0;
  double aperture = 1.0;
  int cone_samples = 0;
};

/// Σ_i w_i |v_i|^p over a symmetric grid plus, when `tail` is set, the
/// integral of a power law fitted between |x| ≈ X/2 and ±X. The tail is +inf
/// when the fitted decay is not integrable.
double lp_power(const WeightedGrid& grid, const std::vector<double>& values, double p, bool tail, double* tail_part = nullptr);

HpEstimate hp_from_maximal(const HalfPlaneLattice& lattice, const MaximalSample& m, double p, bool tail = true);

/// ‖P*f‖^p over the given lattice (nontangential, aperture 1).
HpEstimate hp_quasinorm(const DunklParameter& param, const SampledFunction& f, double p, const HalfPlaneLattice& lattice,
                        double aperture = 1.0);

/// For an atomic sum, on its adapted lattice.
HpEstimate hp_quasinorm(const DunklParameter& param, const AtomicSum& f, double p, const AtomLatticeOptions& opt = {});

/// lhs(b) = ∫_{-1}^{1} (1 - bs)^{-λ-1} (1+s)(1-s^2)^{λ-1} ds and the scaled
/// value lhs·(1 - |b|), at a panel order and twice that order.
struct EstimateARow {
  double b = 0.0;
  double lhs = 0.0;
  double scaled = 0.0;
  double scaled_refined = 0.0;
};

struct EstimateATable {
  double lambda = 0.0;
  std::vector<EstimateARow> rows;
  std::vector<double> skipped;  ///< |b| > 1 - 1e-4
  double C = 0.0;               ///< max scaled
  double C_refined = 0.0;
  double stability = 0.0;       ///< |C_refined - C| / C
};

/// Throws PreconditionViolated for |b| ≥ 1.
EstimateATable estimate_a_check(const DunklParameter& param, const std::vector<double>& b_grid, int panel_order = 16);

/// For ||x| - |t|| > cδ and |t - t'| < δ, the ratio of x² + t² - 2xts to
/// x² + t'² - 2xt's over s_grid stays in [1/K, K]; K is the largest
/// observed max(ratio, 1/ratio).
struct ComparabilityResult {
  double K = 1.0;
  double min_ratio = 1.0, max_ratio = 1.0;
  bool pass = false;  ///< K ≤ 10
};

ComparabilityResult comparability_check(double x, double t, double t_prime, double delta, double c,
                                        const std::vector<double>& s_grid);

/// sup_y |(a *_λ P_y)(x)| against |I|_λ^{1-1/p} δ / (||x| - |t0||² (|x| + |t0|)^{2λ})
/// for x outside I_c ∪ Ĩ_c ∪ I_0 (c δ neighbourhoods of t0, -t0 and 0).
struct FarFieldRow {
  double x = 0.0, sup = 0.0, rhs = 0.0, ratio = 0.0;
};

struct FarFieldTable {
  std::vector<FarFieldRow> rows;
  double max_ratio = 0.0;
  double slope_sup = 0.0;  ///< least-squares slope of log sup against log ||x| - |t0||
  double slope_rhs = 0.0;  ///< same for the bound
};

/// Throws InsideExcludedRegion when a sample lies in an excluded interval.
FarFieldTable atom_far_field_bound(const DunklParameter& param, const Atom& atom, const std::vector<double>& x_samples,
                                   const std::vector<double>& y_samples, double c = 2.0);

/// r1 = ‖H a‖^p_{H^p}/‖a‖^p_{H^p} (via P(H a) = Q a) and
/// r2 = ‖H a‖^p_{L^p}/‖a‖^p_{H^p} per atom.
struct AtomSweepRow {
  std::size_t index = 0;
  double t0 = 0.0, delta = 0.0, p = 1.0;
  AtomShape shape = AtomShape::SignSplit;
  double hp_a = 0.0, hp_Ha = 0.0, lp_Ha = 0.0;
  double r1 = 0.0, r2 = 0.0;
};

struct AtomSweep {
  std::vector<AtomSweepRow> rows;  ///< atom-major, then p
  double max_r1 = 0.0, max_r2 = 0.0;
};

/// The maximal functions are computed once per atom and reused for every p.
AtomSweep hilbert_atom_sweep(const DunklParameter& param, const std::vector<Atom>& atoms, const std::vector<double>& ps,
                             const AtomLatticeOptions& opt = {});

}  // namespace dunkl
