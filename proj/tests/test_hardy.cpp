#include <gtest/gtest.h>

#include <cmath>

#include "dunkl/error.hpp"
#include "dunkl/hardy.hpp"
#include "dunkl/hilbert.hpp"
#include "dunkl/params.hpp"
#include "dunkl/quadrature.hpp"

using namespace dunkl;

namespace {

constexpr AtomShape kShapes[] = {AtomShape::SignSplit, AtomShape::HaarLike, AtomShape::RandomZeroMean};

// c_λ ∫ a(t) h(x, t) |t|^{2λ} dt cell by cell with Gauss–Legendre, valid for
// x outside the support and away from the mirror of every cell.
double hilbert_direct(const DunklParameter& p, const Atom& a, double x) {
  const GaussRule r = gauss_legendre(60);
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < a.edges.size(); ++k) {
    const double lo = a.edges[k], hi = a.edges[k + 1], c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    for (std::size_t j = 0; j < r.nodes.size(); ++j) {
      const double t = c + h * r.nodes[j];
      acc += r.weights[j] * h * a.heights[k] * hilbert_kernel(p, x, t) * std::pow(std::fabs(t), 2 * p.lambda);
    }
  }
  return p.c_lambda * acc;
}

}  // namespace

TEST(IntervalMeasure, ClosedForm) {
  const DunklParameter p = make_parameter(0.5);
  // c_{1/2} = 1/2 and ∫_{-1}^{1} |t| dt = 1.
  EXPECT_NEAR(interval_measure(p, -1.0, 1.0), 0.5, 1e-15);
  const DunklParameter q = make_parameter(1.3);
  const GridPtr g = build_graded_grid(q, {0.0, 0.5, 1.0, 2.0}, 16);
  double half = 0.0;
  for (std::size_t i = g->half_size(); i < g->size(); ++i) half += g->weights()[i];
  EXPECT_NEAR(interval_measure(q, 0.0, 2.0) / half, 1.0, 1e-12);
  EXPECT_NEAR(interval_measure(q, -2.0, 0.5), half + interval_measure(q, 0.0, 0.5), 1e-12);
}

TEST(Atoms, InvariantsForEveryShape) {
  for (double lam : {0.5, 1.0}) {
    const DunklParameter p = make_parameter(lam);
    for (double pp : {0.9, 1.0}) {
      for (AtomShape s : kShapes) {
        for (auto [t0, d] : {std::pair{0.0, 1.0}, std::pair{2.0, 0.5}, std::pair{10.0, 0.01}, std::pair{-3.0, 5.0}}) {
          const Atom a = make_atom(p, t0, d, pp, s, 7);
          const AtomInvariants inv = check_atom(p, a);
          EXPECT_TRUE(inv.ok()) << to_string(s) << " " << t0 << " " << d;
          EXPECT_LE(a.sup_norm(), std::pow(a.measure, -1 / pp) * (1 + 1e-12));
          EXPECT_EQ(a(t0 + 1.01 * d), 0.0);
          EXPECT_EQ(a(t0 - 1.01 * d), 0.0);
        }
      }
    }
  }
}

TEST(Atoms, CentredSignSplitIsSignFunction) {
  const DunklParameter p = make_parameter(0.5);
  const Atom a = make_atom(p, 0.0, 2.0, 1.0, AtomShape::SignSplit);
  const double b = std::pow(interval_measure(p, -2.0, 2.0), -1.0);
  EXPECT_NEAR(a(0.5), b, 1e-15);
  EXPECT_NEAR(a(-1.5), -b, 1e-15);
}

TEST(Atoms, Preconditions) {
  const DunklParameter p = make_parameter(0.5);
  for (auto [d, pp] : {std::pair{0.0, 1.0}, std::pair{-1.0, 1.0}, std::pair{1.0, 0.8}, std::pair{1.0, 1.2}}) {
    try {
      make_atom(p, 0.0, d, pp, AtomShape::SignSplit);
      FAIL() << d << " " << pp;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::PreconditionViolated);
    }
  }
}

TEST(Atoms, DilationKeepsInvariants) {
  const DunklParameter p = make_parameter(1.0);
  const Atom a = make_atom(p, 0.0, 1.0, 0.9, AtomShape::RandomZeroMean, 3);
  for (double r : {1e-2, 0.5, 10.0}) {
    const Atom b = dilate(p, a, r);
    EXPECT_TRUE(check_atom(p, b).ok()) << r;
    EXPECT_NEAR(b.delta, 1.0 / r, 1e-12);
    EXPECT_NEAR(b(0.3 / r), std::pow(r, 3.0 / 0.9) * a(0.3), 1e-9 * std::fabs(b(0.3 / r)));
  }
  try {
    dilate(p, make_atom(p, 1.0, 0.5, 0.9, AtomShape::SignSplit), 2.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PreconditionViolated);
  }
}

TEST(AtomicSums, CoefficientSum) {
  const DunklParameter p = make_parameter(0.5);
  AtomicSum f;
  f.atoms = {make_atom(p, 0.0, 1.0, 0.9, AtomShape::SignSplit), make_atom(p, 3.0, 0.5, 0.9, AtomShape::HaarLike)};
  f.coefficients = {2.0, -0.5};
  EXPECT_NEAR(f.coefficient_sum(0.9), std::pow(2.0, 0.9) + std::pow(0.5, 0.9), 1e-14);
  EXPECT_NEAR(f(3.2), -0.5 * f.atoms[1](3.2), 1e-15);
  const AtomicSum s = single(f.atoms[0]);
  EXPECT_EQ(s.coefficients, std::vector<double>{1.0});
}

TEST(AtomHilbert, MatchesDirectQuadratureAwayFromSupport) {
  const DunklParameter p = make_parameter(0.5);
  const Atom a = make_atom(p, 1.0, 0.5, 1.0, AtomShape::RandomZeroMean, 5);
  const std::vector<double> xs{3.0, 0.1, -0.2, -4.0};
  const std::vector<double> h = atom_hilbert(p, single(a), xs);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double ref = hilbert_direct(p, a, xs[i]);
    EXPECT_NEAR(h[i], ref, 1e-9 * std::max(1.0, std::fabs(ref))) << xs[i];
  }
}

TEST(HpQuasinorm, FiniteAndHomogeneous) {
  const DunklParameter p = make_parameter(0.5);
  const Atom a = make_atom(p, 0.0, 1.0, 0.9, AtomShape::SignSplit);
  const HpEstimate e = hp_quasinorm(p, single(a), 0.9);
  EXPECT_TRUE(std::isfinite(e.value));
  EXPECT_GT(e.value, 0.0);
  EXPECT_GE(e.value, e.tail);
  AtomicSum f = single(a);
  f.coefficients[0] = -3.0;
  EXPECT_NEAR(hp_quasinorm(p, f, 0.9).value / e.value, std::pow(3.0, 0.9), 1e-12);
}

TEST(LpPower, MatchesNormWithoutTail) {
  const DunklParameter p = make_parameter(1.0);
  const GridPtr g = build_weighted_grid(p, 8.0, 256);
  std::vector<double> v(g->size());
  std::vector<cplx> c(g->size());
  for (std::size_t i = 0; i < v.size(); ++i) c[i] = v[i] = std::exp(-g->nodes()[i] * g->nodes()[i]);
  const SampledFunction f(g, c);
  for (double q : {0.9, 1.0, 2.0}) EXPECT_NEAR(lp_power(*g, v, q, false), std::pow(f.norm(q), q), 1e-12);
}

TEST(EstimateA, OriginAndPreconditions) {
  for (double lam : {0.25, 1.0, 4.0}) {
    const DunklParameter p = make_parameter(lam);
    const EstimateATable t = estimate_a_check(p, {0.0, 0.5, -0.9});
    const double mass = std::tgamma(lam) * std::sqrt(M_PI) / std::tgamma(lam + 0.5);
    EXPECT_NEAR(t.rows.front().lhs / mass, 1.0, 1e-12);
    EXPECT_LE(t.stability, 0.02);
    EXPECT_GE(t.C, t.rows.front().scaled);
    EXPECT_THROW(estimate_a_check(p, {1.0}), Error);
  }
}

TEST(Comparability, Examples) {
  const std::vector<double> s{-1.0, -0.5, 0.0, 0.5, 1.0};
  EXPECT_NEAR(comparability_check(5.0, 1.0, 1.0, 0.1, 2.0, s).K, 1.0, 1e-15);
  const ComparabilityResult r = comparability_check(5.0, 1.0, 1.05, 0.1, 2.0, s);
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.K, 10.0);
  EXPECT_THROW(comparability_check(1.1, 1.0, 1.05, 0.1, 2.0, s), Error);
}

TEST(FarField, BoundAndExcludedRegion) {
  const DunklParameter p = make_parameter(0.5);
  const Atom a = make_atom(p, 0.0, 1.0, 0.9, AtomShape::SignSplit);
  const FarFieldTable t = atom_far_field_bound(p, a, {4.0, 8.0, 16.0, -32.0}, {0.01, 0.1, 1.0, 10.0});
  EXPECT_EQ(t.rows.size(), 4u);
  EXPECT_TRUE(std::isfinite(t.max_ratio));
  try {
    atom_far_field_bound(p, a, {1.5}, {0.1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InsideExcludedRegion);
  }
}

TEST(HilbertAtomSweep, SingleAtom) {
  const DunklParameter p = make_parameter(0.5);
  const Atom a = make_atom(p, 0.0, 1.0, 0.9, AtomShape::SignSplit);
  const AtomSweep s = hilbert_atom_sweep(p, {a}, {0.9, 1.0});
  ASSERT_EQ(s.rows.size(), 2u);
  for (const AtomSweepRow& r : s.rows) {
    EXPECT_TRUE(std::isfinite(r.r1));
    EXPECT_TRUE(std::isfinite(r.r2));
    EXPECT_GT(r.hp_a, 0.0);
  }
  EXPECT_EQ(s.max_r1, std::max(s.rows[0].r1, s.rows[1].r1));
}
