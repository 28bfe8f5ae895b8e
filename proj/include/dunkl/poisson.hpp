#pragma once

#include <vector>

#include "dunkl/params.hpp"
#include "dunkl/quadrature.hpp"
#include "dunkl/special_functions.hpp"

namespace dunkl {

/// Which evaluation route a kernel uses: the hypergeometric closed form of
/// the angular integral, or graded Gauss–Jacobi quadrature of it.
enum class KernelRoute { ClosedForm, Quadrature };

/// Poisson-type kernels for one λ. All three share the angular integral
/// I(A, B) with A = y² + x² + t², B = 2xt and the constant
/// K = λ Γ(λ+1/2) 2^{λ+1/2} / π = m_λ c'_λ.
class PoissonKernels {
 public:
  explicit PoissonKernels(const DunklParameter& param, KernelRoute route = KernelRoute::ClosedForm);

  /// (τ_x P_y)(-t) = K y I(A, B).
  double poisson(double x, double y, double t) const;
  /// (τ_x Q_y)(-t) = K (x - t) I(A, B).
  double conjugate(double x, double y, double t) const;
  /// h(x, t) = K (x - t) I(x² + t², 2xt); logarithmically singular at t = -x.
  double hilbert(double x, double t) const;

  const DunklParameter& param() const { return param_; }

 private:
  DunklParameter param_;
  KernelRoute route_;
  AngularIntegral angular_;
  double K_;
  double I(double y, double x, double t) const;
};

/// Throw NonPositiveY unless y > 0.
double poisson_kernel(const DunklParameter& param, double x, double y, double t,
                      KernelRoute route = KernelRoute::ClosedForm);
double conjugate_poisson_kernel(const DunklParameter& param, double x, double y, double t,
                                KernelRoute route = KernelRoute::ClosedForm);

/// Spectral forms c_λ ∫ m(ξ) e^{-y|ξ|} E_λ(ixξ) E_λ(-itξ) |ξ|^{2λ} dξ with
/// m = 1 (Poisson) or m = -i sgn ξ (conjugate), by composite Gauss
/// quadrature up to |ξ| = 40/y.
double poisson_kernel_spectral(const DunklParameter& param, double x, double y, double t);
double conjugate_poisson_kernel_spectral(const DunklParameter& param, double x, double y, double t);

/// P_y(x) = m_λ y (y² + x²)^{-λ-1} and Q_y(x) = m_λ x (y² + x²)^{-λ-1}.
double poisson_profile(const DunklParameter& param, double y, double x);
double conjugate_profile(const DunklParameter& param, double y, double x);

/// x nodes (symmetric, with quadrature weights) times increasing y levels.
struct HalfPlaneLattice {
  GridPtr x_grid;
  std::vector<double> y;
};

/// y levels log-spaced on [y_min, y_max]; throws NonPositiveY or
/// BadResolution for invalid input.
HalfPlaneLattice make_lattice(GridPtr x_grid, double y_min = 1e-3, double y_max = 10.0, int levels = 64);

/// Samples on a lattice, stored level by level: value(i, j) at (x_i, y_j).
struct LatticeSamples {
  std::size_t nx = 0, ny = 0;
  std::vector<cplx> values;
  cplx at(std::size_t i, std::size_t j) const { return values[j * nx + i]; }
};

/// Pointwise (Pf)(x, y) = c_λ ∫ f(t) (τ_x P_y)(-t) |t|^{2λ} dt and its
/// conjugate. Grid panels far from t = ±x use the grid samples directly;
/// panels that resolve the kernel poorly are bisected toward ±x and use
/// the profile (or panel interpolation). The tail rule is included when the
/// profile has slow decay.
cplx poisson_at(const PoissonKernels& k, const SampledFunction& f, double x, double y);
cplx conjugate_poisson_at(const PoissonKernels& k, const SampledFunction& f, double x, double y);

LatticeSamples poisson_integral(const DunklParameter& param, const SampledFunction& f, const HalfPlaneLattice& lattice);
LatticeSamples conjugate_poisson_integral(const DunklParameter& param, const SampledFunction& f,
                                          const HalfPlaneLattice& lattice);

/// A sampled λ-harmonic pair (Pf, Qf) with its boundary data.
struct ConjugatePair {
  HalfPlaneLattice lattice;
  LatticeSamples u, v;
  SampledFunction boundary_f;
};

ConjugatePair conjugate_pair(const DunklParameter& param, const SampledFunction& f, const HalfPlaneLattice& lattice);

enum class MaximalKind { Radial, Nontangential };

struct MaximalSample {
  MaximalKind kind = MaximalKind::Radial;
  std::vector<double> values;  ///< one per x node
  int cone_samples = 0;        ///< fewest lattice points found in any cone
};

/// Discrete sup over the y levels (Radial) or over lattice points with
/// |s - x| < aperture · y (Nontangential). Throws EmptyCone if a cone holds
/// no lattice point.
MaximalSample maximal(const HalfPlaneLattice& lattice, const LatticeSamples& samples, MaximalKind kind,
                      double aperture = 1.0);

/// Computes Pf on the lattice first.
MaximalSample maximal(const DunklParameter& param, MaximalKind kind, const SampledFunction& f,
                      const HalfPlaneLattice& lattice, double aperture = 1.0);

}  // namespace dunkl
