#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <type_traits>
#include <vector>

#include "dunkl/params.hpp"

namespace dunkl {

using cplx = std::complex<double>;

/// Nodes and weights of a Gauss rule on some reference interval.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss–Jacobi rule on [-1, 1] for the weight (1-s)^alpha (1+s)^beta,
/// computed with the Golub–Welsch eigenvalue method.
GaussRule gauss_jacobi(int n, double alpha, double beta);

/// Gauss–Legendre rule on [-1, 1].
GaussRule gauss_legendre(int n);

/// Rule for ∫_{-1}^{1} g(s) (1+s)(1-s^2)^{λ-1} ds, the angular measure of
/// the Laplace representation. Both endpoint singularities live in the weight.
struct JacobiRule {
  int order = 0;
  std::vector<double> nodes;
  std::vector<double> weights;

  template <class G>
  auto integrate(const G& g) const {
    using R = std::decay_t<decltype(g(0.0))>;
    R acc{};
    for (std::size_t k = 0; k < nodes.size(); ++k) acc += weights[k] * g(nodes[k]);
    return acc;
  }
};

/// Throws Error(BadResolution) for n < 8.
JacobiRule build_jacobi_rule(const DunklParameter& param, int n);

/// Reference panel rules on [0, 1] shared by every composite integrator:
/// plain Gauss–Legendre, and Gauss–Jacobi for ∫_0^1 g(u) u^{2λ} du.
struct PanelRules {
  int q = 0;
  double lambda = 0.0;
  std::vector<double> gl_x, gl_w;
  std::vector<double> gj_x, gj_w;
};

/// Cached per (λ, q); safe to call concurrently.
const PanelRules& panel_rules(double lambda, int q = 16);

/// Symmetric composite quadrature for c_λ ∫_{-X}^{X} f(x) |x|^{2λ} dx.
///
/// The positive half-line is split into panels by `edges` (first edge 0,
/// last edge X); each panel carries q nodes. The panel touching 0 uses a
/// Gauss–Jacobi rule with the power weight built in, so the weight is never
/// evaluated at the origin. Nodes are stored increasing, negative half first,
/// and node i mirrors node size()-1-i.
///
/// A geometric tail rule covering |x| > X is attached for functions that
/// carry an analytic profile with slow decay.
class WeightedGrid {
 public:
  WeightedGrid(const DunklParameter& param, std::vector<double> edges, int q);

  double lambda() const { return lambda_; }
  double c_lambda() const { return c_lambda_; }
  double truncation() const { return edges_.back(); }
  int order() const { return q_; }
  std::size_t size() const { return nodes_.size(); }
  std::size_t half_size() const { return nodes_.size() / 2; }
  std::size_t mirror(std::size_t i) const { return nodes_.size() - 1 - i; }
  const std::vector<double>& edges() const { return edges_; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& tail_nodes() const { return tail_nodes_; }
  const std::vector<double>& tail_weights() const { return tail_weights_; }

  /// Sum of the weights, the discrete c_λ ∫_{-X}^{X} |x|^{2λ} dx.
  double mass() const;

  /// Panel-local polynomial interpolation of grid samples at |x| ≤ X.
  /// Throws Error(InterpolationOutOfRange) outside the grid.
  cplx interpolate(std::span<const cplx> values, double x) const;

  /// Panel-local spectral derivative of grid samples (exact for
  /// polynomials of degree < q on each panel).
  std::vector<cplx> differentiate(std::span<const cplx> values) const;

  /// Panel-local interpolation of samples on the tail rule at |x| > X.
  cplx interpolate_tail(std::span<const cplx> tail_values, double x) const;

 private:
  double lambda_;
  double c_lambda_;
  int q_;
  std::vector<double> edges_;
  std::vector<double> nodes_, weights_;
  std::vector<double> tail_nodes_, tail_weights_;
  // Barycentric weights and differentiation matrices on the reference
  // panel, one set for the origin panel and one for the others.
  std::vector<double> bary_first_, bary_inner_;
  std::vector<double> diff_first_, diff_inner_;

  std::size_t positive_index(std::size_t panel, std::size_t j) const {
    return half_size() + panel * static_cast<std::size_t>(q_) + j;
  }
};

using GridPtr = std::shared_ptr<const WeightedGrid>;

/// Uniform panels of width X/m with q = 16 nodes (fewer for tiny n).
/// The node count is n rounded down to a multiple of 2q. Throws
/// Error(BadResolution) if n < 16 and Error(PreconditionViolated) if X ≤ 0.
GridPtr build_weighted_grid(const DunklParameter& param, double X, int n);

/// Grid with caller-chosen positive-side panel edges (0 first, X last).
GridPtr build_graded_grid(const DunklParameter& param, std::vector<double> edges, int q = 16);

/// Analytic description of a sampled function, used off-grid.
using Profile = std::function<cplx(double)>;

/// Complex samples on a WeightedGrid, optionally backed by an exact profile.
/// When a profile is present, values on the tail rule are precomputed so
/// norms and integral operators see the part beyond the truncation.
class SampledFunction {
 public:
  SampledFunction() = default;
  SampledFunction(GridPtr grid, std::vector<cplx> values);
  static SampledFunction from_profile(GridPtr grid, Profile profile);
  /// Samples on both the core and the tail rule; off-grid values come from
  /// panel interpolation on whichever rule covers the point.
  static SampledFunction with_tail(GridPtr grid, std::vector<cplx> values, std::vector<cplx> tail_values);

  const WeightedGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  const std::vector<cplx>& values() const { return values_; }
  bool has_profile() const { return static_cast<bool>(profile_); }
  const Profile& profile() const { return profile_; }
  /// Samples on grid().tail_nodes(); empty unless a profile is attached.
  const std::vector<cplx>& tail_values() const { return tail_values_; }
  /// True when the tail carries a non-negligible share of the L¹ mass.
  bool tail_matters() const { return tail_matters_; }

  /// Exact profile if attached, else panel interpolation.
  cplx operator()(double x) const;

  /// L^p_λ norm including the tail; p = infinity gives the sup norm.
  double norm(double p) const;

 private:
  GridPtr grid_;
  std::vector<cplx> values_;
  Profile profile_;
  std::vector<cplx> tail_values_;
  bool tail_matters_ = false;
};

/// c_λ ∫ f conj(g) |x|^{2λ} dx over the common grid (tail included when both
/// carry profiles).
cplx inner_product(const SampledFunction& f, const SampledFunction& g);

/// A point near which an integrand fails to be analytic: it is analytic
/// in the disc-free strip |Im t| < width around `location` and beyond.
struct Singularity {
  double location = 0.0;
  double width = 0.0;
};

struct PanelOptions {
  double ratio = 2.0;          ///< accept a panel when its distance to every singularity ≥ ratio × half-width
  int max_depth = 64;
  double min_half_width = 1e-15;  ///< relative to the panel position
  int order = 16;                 ///< Gauss points per panel
};

/// ∫_a^b g(t) |t|^{2λ} dt by recursive bisection of Gauss panels toward
/// the listed singularities. The interval is always split at 0 and at
/// singular locations inside (a, b); panels touching 0 carry the power weight
/// exactly. Deterministic: the summation order depends only on the inputs.
template <class G>
auto integrate_weighted(double lambda, double a, double b, const G& g,
                        std::span<const Singularity> sings, const PanelOptions& opt = {}) {
  using R = std::decay_t<decltype(g(0.0))>;
  R total{};
  if (!(b > a)) return total;
  const PanelRules& rules = panel_rules(lambda, opt.order);
  const double two_lambda = 2.0 * lambda;

  std::vector<double> cuts{a, b};
  if (a < 0.0 && b > 0.0) cuts.push_back(0.0);
  for (const auto& s : sings)
    if (s.location > a && s.location < b) cuts.push_back(s.location);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  struct Panel {
    double u, v;
    int depth;
  };
  std::vector<Panel> stack;
  stack.reserve(256);
  for (std::size_t k = cuts.size() - 1; k > 0; --k) stack.push_back({cuts[k - 1], cuts[k], 0});

  const std::size_t q = rules.gl_x.size();
  while (!stack.empty()) {
    const Panel pn = stack.back();
    stack.pop_back();
    const double hw = 0.5 * (pn.v - pn.u);
    bool admissible = true;
    for (const auto& s : sings) {
      const double dist = std::max({0.0, pn.u - s.location, s.location - pn.v});
      if (std::hypot(dist, s.width) < opt.ratio * hw) {
        admissible = false;
        break;
      }
    }
    const double scale = std::max({1.0, std::fabs(pn.u), std::fabs(pn.v)});
    if (!admissible && pn.depth < opt.max_depth && hw > opt.min_half_width * scale) {
      const double mid = 0.5 * (pn.u + pn.v);
      stack.push_back({mid, pn.v, pn.depth + 1});
      stack.push_back({pn.u, mid, pn.depth + 1});
      continue;
    }
    const double len = pn.v - pn.u;
    if (pn.u == 0.0 || pn.v == 0.0) {
      const double sign = (pn.u == 0.0) ? 1.0 : -1.0;
      const double fac = std::pow(len, two_lambda + 1.0);
      for (std::size_t j = 0; j < q; ++j) total += (fac * rules.gj_w[j]) * g(sign * len * rules.gj_x[j]);
    } else {
      for (std::size_t j = 0; j < q; ++j) {
        const double t = pn.u + len * rules.gl_x[j];
        total += (len * rules.gl_w[j] * std::pow(std::fabs(t), two_lambda)) * g(t);
      }
    }
  }
  return total;
}

}  // namespace dunkl
