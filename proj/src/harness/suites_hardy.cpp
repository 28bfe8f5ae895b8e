#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <random>

#include "dunkl/hardy.hpp"
#include "dunkl/params.hpp"
#include "suite_common.hpp"

namespace dunkl::suites {

namespace {

double uniform01(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

std::vector<double> ps_or(const SuiteConfig& c, std::vector<double> fallback) {
  return c.ps.empty() ? fallback : c.ps;
}

std::string atom_tag(const Atom& a) {
  return to_string(a.shape) + "/t0=" + label(a.t0) + "/delta=" + label(a.delta);
}

Params atom_params(const Atom& a) {
  return Params{{"shape", to_string(a.shape)}, {"t0", a.t0}, {"delta", a.delta}, {"p", a.p}};
}

// ‖P*f‖^p for every p from one nontangential maximal function.
std::vector<double> hp_values(const DunklParameter& param, const AtomicSum& f, const std::vector<double>& ps,
                              const AtomLatticeOptions& opt, bool conjugate) {
  const HalfPlaneLattice lattice = atom_lattice(param, f, opt);
  const MaximalSample m = maximal(lattice, atom_poisson(param, f, lattice, conjugate), MaximalKind::Nontangential);
  std::vector<double> out;
  for (double p : ps) out.push_back(hp_from_maximal(lattice, m, p).value);
  return out;
}

double relative_change(double a, double b) { return std::fabs(b - a) / std::fabs(a); }

}  // namespace

void run_estimate_a(Recorder& rec) {
  const SuiteConfig& c = rec.config();
  std::vector<double> bs;
  for (double b : {0.0, 0.5, 0.9, 0.99}) {
    bs.push_back(b);
    if (b != 0.0) bs.push_back(-b);
  }
  std::vector<double> lams = lambdas_or(c, {0.25, 0.5, 1.0, 2.0, 4.0});
  std::sort(lams.begin(), lams.end());
  std::vector<std::pair<double, double>> fitted;  // (λ, C_λ)
  for (double lam : lams) {
    const DunklParameter param = make_parameter(lam);
    const Params gp{{"b_grid", bs}, {"panel_order", 16}};
    EstimateATable table;
    try {
      table = estimate_a_check(param, bs);
    } catch (const Error& e) {
      rec.record_error("estimate", "fitted_C/lambda=" + label(lam), lam, kNaN, e.what());
      continue;
    }
    for (const EstimateARow& row : table.rows) {
      Params rp = gp;
      rp["b"] = row.b;
      rp["lhs"] = row.lhs;
      const std::string id = "bound/b=" + label(row.b) + "/lambda=" + label(lam);
      rec.record("bound", id, lam, kNaN, rp, "le", 0.0, [&] { return Measured{row.scaled, table.C}; });
      if (row.b == 0.0) {
        // lhs(0) = ∫(1+s)(1-s²)^{λ-1} ds = B(1/2, λ).
        rec.record("b0_exact", "b0_exact/lambda=" + label(lam), lam, kNaN, rp, "rel", 1e-12, [&] {
          return Measured{row.lhs, std::tgamma(lam) * std::sqrt(M_PI) / std::tgamma(lam + 0.5)};
        });
      }
    }
    Params cp = gp;
    cp["C"] = table.C;
    cp["C_refined"] = table.C_refined;
    cp["C_times_lambda"] = table.C * lam;
    rec.record("stability", "stability/lambda=" + label(lam), lam, kNaN, cp, "abs", 0.02,
               [&] { return Measured{table.stability, 0.0}; });
    rec.record("fitted_C", "fitted_C/lambda=" + label(lam), lam, kNaN, cp, "finite", 0.0,
               [&] { return Measured{table.C, kNaN}; });
    fitted.emplace_back(lam, table.C);
  }
  for (std::size_t k = 1; k < fitted.size(); ++k) {
    const auto [l0, c0] = fitted[k - 1];
    const auto [l1, c1] = fitted[k];
    const Params mp{{"lambda_from", l0}, {"lambda_to", l1}, {"C_from", c0}, {"C_to", c1}};
    rec.record("monotone", "monotone/lambda=" + label(l0) + "->" + label(l1), l1, kNaN, mp, "le", 0.0,
               [&] { return Measured{c1, c0}; });
  }
}

void run_atoms(Recorder& rec) {
  const SuiteConfig& c = rec.config();
  const int levels = 2;
  for (double lam : lambdas_or(c, {0.5, 1.0})) {
    const DunklParameter param = make_parameter(lam);
    const std::vector<double> ps = ps_or(c, {0.9, 1.0});

    // Invariants of every shape, centred and off-centre.
    for (double p : ps)
      for (AtomShape shape : {AtomShape::SignSplit, AtomShape::HaarLike, AtomShape::RandomZeroMean})
        for (auto [t0, delta] : {std::pair{0.0, 1.0}, std::pair{2.0, 0.5}, std::pair{10.0, 0.01}, std::pair{-3.0, 5.0}}) {
          Atom a;
          try {
            a = make_atom(param, t0, delta, p, shape, c.seed);
          } catch (const Error& e) {
            rec.record_error("invariants", "invariants/" + to_string(shape) + "/t0=" + label(t0) + "/delta=" +
                                               label(delta) + "/lambda=" + label(lam) + "/p=" + label(p),
                             lam, p, e.what());
            continue;
          }
          const AtomInvariants inv = check_atom(param, a);
          Params ip = atom_params(a);
          ip["sup"] = inv.sup;
          ip["bound"] = inv.bound;
          ip["moment"] = inv.moment;
          ip["moment_bound"] = inv.moment_bound;
          rec.record("invariants", "invariants/" + atom_tag(a) + "/lambda=" + label(lam) + "/p=" + label(p), lam, p,
                     ip, "abs", 0.0, [&] { return Measured{inv.ok() ? 1.0 : 0.0, 1.0}; });
        }

    // Uniform bound over the dilation/translation family, at two refinements.
    std::vector<Atom> family;
    for (double t0 : {0.0, 1.0, 10.0})
      for (double delta : {1e-2, 1e-1, 1.0, 1e1, 1e2}) family.push_back(make_atom(param, t0, delta, ps.front(), AtomShape::SignSplit));
    std::vector<std::vector<std::vector<double>>> hp(levels);  // [level][atom][p]
    std::string err;
    try {
      for (int lev = 0; lev < levels; ++lev) {
        AtomLatticeOptions opt;
        opt.level = lev;
        for (const Atom& a0 : family) {
          // The same support at every p; only the height |I|^{-1/p} changes.
          std::vector<double> row;
          for (double p : ps) {
            const Atom a = make_atom(param, a0.t0, a0.delta, p, AtomShape::SignSplit);
            row.push_back(hp_values(param, single(a), {p}, opt, false).front());
          }
          hp[lev].push_back(row);
        }
      }
    } catch (const Error& e) {
      err = e.what();
    }
    const Params fp{{"shape", "SignSplit"}, {"t0", {0.0, 1.0, 10.0}}, {"delta", {1e-2, 1e-1, 1.0, 1e1, 1e2}},
                    {"levels", levels}, {"aperture", 1.0}};
    for (std::size_t q = 0; q < ps.size(); ++q) {
      const double p = ps[q];
      const std::string tail = "/lambda=" + label(lam) + "/p=" + label(p);
      if (!err.empty()) {
        rec.record_error("family", "family/max_over_min" + tail, lam, p, err);
        continue;
      }
      std::vector<double> mx(levels, 0.0), mn(levels, INFINITY);
      for (int lev = 0; lev < levels; ++lev)
        for (const auto& row : hp[lev]) {
          mx[lev] = std::max(mx[lev], row[q]);
          mn[lev] = std::min(mn[lev], row[q]);
        }
      for (std::size_t i = 0; i < family.size(); ++i) {
        Params ap = atom_params(family[i]);
        ap["p"] = p;
        rec.record("family_finite", "family/" + atom_tag(family[i]) + tail, lam, p, ap, "finite", 0.0,
                   [&] { return Measured{hp[levels - 1][i][q], kNaN}; });
      }
      Params sp = fp;
      sp["max"] = mx;
      sp["min"] = mn;
      rec.record("family", "family/max_over_min" + tail, lam, p, sp, "le", 0.0,
                 [&] { return Measured{mx[levels - 1] / mn[levels - 1], 5.0}; });
      rec.record("refinement", "family/max_refinement" + tail, lam, p, sp, "abs", 0.1,
                 [&] { return Measured{relative_change(mx[0], mx[levels - 1]), 0.0}; });
    }

    for (double p : ps) {
      const std::string tail = "/lambda=" + label(lam) + "/p=" + label(p);
      const Atom base = make_atom(param, 0.0, 1.0, p, AtomShape::SignSplit);

      // Dilates of a centred atom are atoms with comparable quasi-norms.
      const std::vector<double> rs{1e-2, 1e-1, 1.0, 1e1, 1e2};
      std::vector<double> dil;
      for (double r : rs) {
        Atom a;
        try {
          a = dilate(param, base, r);
        } catch (const Error& e) {
          rec.record_error("dilation_invariants", "dilation/invariants/r=" + label(r) + tail, lam, p, e.what());
          continue;
        }
        Params dp = atom_params(a);
        dp["r"] = r;
        rec.record("dilation_invariants", "dilation/invariants/r=" + label(r) + tail, lam, p, dp, "abs", 0.0,
                   [&] { return Measured{check_atom(param, a).ok() ? 1.0 : 0.0, 1.0}; });
        try {
          dil.push_back(hp_quasinorm(param, single(a), p).value);
        } catch (const Error&) {
          dil.push_back(kNaN);
        }
      }
      const Params dp{{"r", rs}, {"values", dil}};
      rec.record("dilation", "dilation/max_over_min" + tail, lam, p, dp, "le", 0.0, [&] {
        const auto [lo, hi] = std::minmax_element(dil.begin(), dil.end());
        return Measured{*hi / *lo, 1.2};
      });

      // The discrete functional is p-homogeneous.
      const double hp_a = hp_quasinorm(param, single(base), p).value;
      for (double k : {3.0, -0.5}) {
        const AtomicSum scaled{{base}, {k}};
        const Params hp_p{{"coefficient", k}, {"shape", "SignSplit"}, {"t0", 0.0}, {"delta", 1.0}};
        rec.record("homogeneity", "homogeneity/c=" + label(k) + tail, lam, p, hp_p, "rel", 1e-12, [&] {
          return Measured{hp_quasinorm(param, scaled, p).value, std::pow(std::fabs(k), p) * hp_a};
        });
      }
      rec.record("zero", "zero_sum" + tail, lam, p, Params::object(), "abs", 0.0, [&] {
        return Measured{hp_quasinorm(param, AtomicSum{{base}, {0.0}}, p).value, 0.0};
      });

      // Far field of a centred and an off-centre atom.
      const std::vector<double> ys{1e-2, 1e-1, 1.0, 1e1};
      for (auto [t0, delta] : {std::pair{0.0, 1.0}, std::pair{1.0, 0.1}}) {
        const Atom a = make_atom(param, t0, delta, p, AtomShape::SignSplit);
        std::vector<double> xs;
        for (double d : {4.0, 8.0, 16.0, 32.0, 64.0}) {
          xs.push_back(std::fabs(t0) + d * std::max(delta, 0.5));
          xs.push_back(-xs.back());
        }
        Params ffp = atom_params(a);
        ffp["x"] = xs;
        ffp["y"] = ys;
        ffp["c"] = 2.0;
        std::optional<FarFieldTable> ff;
        rec.record("far_field", "far_field/max_ratio/" + atom_tag(a) + tail, lam, p, ffp, "finite", 0.0, [&] {
          ff = atom_far_field_bound(param, a, xs, ys);
          return Measured{ff->max_ratio, kNaN};
        });
        // The decay exponent is compared for the centred atom only; off
        // centre the bound mixes two distances and only the ratio is judged.
        if (ff && t0 == 0.0) {
          Params slp = ffp;
          slp["slope_rhs"] = ff->slope_rhs;
          rec.record("far_field_slope", "far_field/slope/" + atom_tag(a) + tail, lam, p, slp, "abs", 0.1,
                     [&] { return Measured{ff->slope_sup, ff->slope_rhs}; });
        }
      }
      rec.record("far_field_excluded", "far_field/inside_I_c" + tail, lam, p, Params{{"x", 2.5}, {"t0", 2.0}}, "abs",
                 0.0, [&] {
                   const Atom a = make_atom(param, 2.0, 0.5, p, AtomShape::SignSplit);
                   try {
                     atom_far_field_bound(param, a, {2.5}, ys);
                   } catch (const Error& e) {
                     return Measured{e.code() == ErrorCode::InsideExcludedRegion ? 1.0 : 0.0, 1.0};
                   }
                   return Measured{0.0, 1.0};
                 });
    }
  }

  // Comparability of x² + t² - 2xts is λ-free; one sweep suffices.
  std::vector<double> s_grid;
  for (int i = 0; i <= 100; ++i) s_grid.push_back(-1.0 + i / 50.0);
  const double c2 = 2.0;
  double K = 1.0;
  std::size_t tuples = 0;
  std::string err;
  try {
    for (double delta : {0.1, 0.5, 1.0})
      for (double t : {-2.0, 0.0, 1.0, 3.0})
        for (double x : {-20.0, -6.0, -3.5, 3.5, 6.0, 20.0}) {
          if (std::fabs(std::fabs(x) - std::fabs(t)) <= c2 * delta) continue;
          for (double f : {0.0, 0.5, 0.99}) {
            K = std::max(K, comparability_check(x, t, t + f * delta, delta, c2, s_grid).K);
            ++tuples;
          }
        }
  } catch (const Error& e) {
    err = e.what();
  }
  const Params kp{{"c", c2}, {"tuples", tuples}, {"s_points", s_grid.size()}};
  if (!err.empty())
    rec.record_error("comparability", "comparability/K", kNaN, kNaN, err);
  else
    rec.record("comparability", "comparability/K", kNaN, kNaN, kp, "le", 0.0, [&] { return Measured{K, 10.0}; });
  rec.record("comparability", "comparability/t_equal", kNaN, kNaN, Params{{"x", 10.0}, {"t", 1.0}}, "abs", 1e-15,
             [&] { return Measured{comparability_check(10.0, 1.0, 1.0, 0.5, c2, s_grid).K, 1.0}; });
  rec.record("comparability", "comparability/precondition", kNaN, kNaN, Params{{"x", 1.5}, {"t", 1.0}}, "abs", 0.0,
             [&] {
               try {
                 comparability_check(1.5, 1.0, 1.2, 0.5, c2, s_grid);
               } catch (const Error& e) {
                 return Measured{e.code() == ErrorCode::PreconditionViolated ? 1.0 : 0.0, 1.0};
               }
               return Measured{0.0, 1.0};
             });
}

void run_hilbert_atoms(Recorder& rec) {
  const SuiteConfig& c = rec.config();
  const int levels = 2;
  for (double lam : lambdas_or(c, {0.5, 1.0})) {
    const DunklParameter param = make_parameter(lam);
    const std::vector<double> ps = ps_or(c, {0.9, 1.0});
    std::vector<Atom> atoms;
    for (double t0 : {0.0, 1.0, 10.0})
      for (double delta : {1e-2, 1e-1, 1.0, 1e1}) atoms.push_back(make_atom(param, t0, delta, ps.front(), AtomShape::SignSplit));
    for (double t0 : {0.0, 1.0, 10.0})
      for (double delta : {1e-1, 1.0, 1e1})
        for (AtomShape shape : {AtomShape::HaarLike, AtomShape::RandomZeroMean})
          atoms.push_back(make_atom(param, t0, delta, ps.front(), shape, c.seed));

    std::map<double, double> C_single;  // largest ‖H a‖^p_{H^p} over p-atoms of the sweep
    std::vector<AtomSweep> sweeps;
    std::string err;
    try {
      for (int lev = 0; lev < levels; ++lev) {
        AtomLatticeOptions opt;
        opt.level = lev;
        sweeps.push_back(hilbert_atom_sweep(param, atoms, ps, opt));
      }
    } catch (const Error& e) {
      err = e.what();
    }
    const Params sp{{"atoms", atoms.size()}, {"shapes", {"SignSplit", "HaarLike", "RandomZeroMean"}}, {"levels", levels}};
    for (double p : ps) {
      const std::string tail = "/lambda=" + label(lam) + "/p=" + label(p);
      if (!err.empty()) {
        rec.record_error("sweep", "sweep/r1" + tail, lam, p, err);
        continue;
      }
      // Maxima over the rows at this p, per level; also the largest ‖H a‖^p_{H^p}.
      std::vector<double> r1(levels, 0.0), r2(levels, 0.0);
      double hp_Ha_max = 0.0;
      for (int lev = 0; lev < levels; ++lev)
        for (const AtomSweepRow& row : sweeps[lev].rows) {
          if (row.p != p) continue;
          r1[lev] = std::max(r1[lev], row.r1);
          r2[lev] = std::max(r2[lev], row.r2);
          // A p-atom on the same support is the swept atom times |I|^{1/p0 - 1/p}.
          const double scale = std::pow(atoms[row.index].measure, 1.0 / ps.front() - 1.0 / p);
          if (lev == levels - 1) hp_Ha_max = std::max(hp_Ha_max, std::pow(scale, p) * row.hp_Ha);
        }
      C_single[p] = hp_Ha_max;
      Params rp = sp;
      rp["max_r1"] = r1;
      rp["max_r2"] = r2;
      rec.record("sweep", "sweep/max_r1" + tail, lam, p, rp, "finite", 0.0, [&] { return Measured{r1.back(), kNaN}; });
      rec.record("sweep", "sweep/max_r2" + tail, lam, p, rp, "finite", 0.0, [&] { return Measured{r2.back(), kNaN}; });
      rec.record("refinement", "refinement/max_r1" + tail, lam, p, rp, "abs", 0.1,
                 [&] { return Measured{relative_change(r1.front(), r1.back()), 0.0}; });
      rec.record("refinement", "refinement/max_r2" + tail, lam, p, rp, "abs", 0.1,
                 [&] { return Measured{relative_change(r2.front(), r2.back()), 0.0}; });
    }

    // Eight random atoms: ‖H f‖^p_{H^p} against the single-atom maximum
    // times Σ|c_n|^p. P(H f) = Q f, so the conjugate integral is used. Each
    // atom is integrated once; for another p its heights only change by a
    // common factor, so the sums are exact combinations of the same samples.
    std::mt19937_64 gen(c.seed);
    AtomicSum f;
    std::vector<std::uint64_t> seeds;
    const AtomShape shapes[3] = {AtomShape::SignSplit, AtomShape::HaarLike, AtomShape::RandomZeroMean};
    for (int k = 0; k < 8; ++k) {
      const double t0 = -5.0 + 10.0 * uniform01(gen);
      const double delta = 0.05 * std::pow(100.0, uniform01(gen));
      seeds.push_back(c.seed + k);
      f.atoms.push_back(make_atom(param, t0, delta, ps.front(), shapes[k % 3], seeds.back()));
      f.coefficients.push_back(-1.0 + 2.0 * uniform01(gen));
    }
    std::optional<HalfPlaneLattice> lattice;
    std::vector<LatticeSamples> per_atom;
    err.clear();
    try {
      lattice = atom_lattice(param, f);
      for (const Atom& a : f.atoms) per_atom.push_back(atom_poisson(param, single(a), *lattice, true));
    } catch (const Error& e) {
      err = e.what();
    }
    for (double p : ps) {
      const std::string tail = "/lambda=" + label(lam) + "/p=" + label(p);
      if (!err.empty() || !C_single.count(p)) {
        rec.record_error("atomic_sum", "atomic_sum/N=8" + tail, lam, p, err.empty() ? "sweep failed" : err);
        continue;
      }
      AtomicSum fp = f;
      std::vector<double> weight(f.atoms.size());
      for (std::size_t n = 0; n < f.atoms.size(); ++n) {
        fp.atoms[n] = make_atom(param, f.atoms[n].t0, f.atoms[n].delta, p, f.atoms[n].shape, seeds[n]);
        weight[n] = f.coefficients[n] * fp.atoms[n].sup_norm() / f.atoms[n].sup_norm();
      }
      Params ap{{"N", 8}, {"seed", c.seed}, {"coefficient_sum", fp.coefficient_sum(p)}, {"C_single", C_single[p]}};
      rec.record("atomic_sum", "atomic_sum/N=8" + tail, lam, p, ap, "le", 0.0, [&] {
        LatticeSamples q = per_atom.front();
        std::fill(q.values.begin(), q.values.end(), cplx(0.0));
        for (std::size_t n = 0; n < per_atom.size(); ++n)
          for (std::size_t k = 0; k < q.values.size(); ++k) q.values[k] += weight[n] * per_atom[n].values[k];
        const MaximalSample m = maximal(*lattice, q, MaximalKind::Nontangential);
        return Measured{hp_from_maximal(*lattice, m, p).value, C_single[p] * fp.coefficient_sum(p)};
      });
      rec.record("atomic_sum", "atomic_sum/zero" + tail, lam, p, Params{{"N", 8}, {"coefficients", 0}}, "abs", 0.0,
                 [&] {
                   AtomicSum z = fp;
                   std::fill(z.coefficients.begin(), z.coefficients.end(), 0.0);
                   return Measured{hp_values(param, z, {p}, {}, true).front(), 0.0};
                 });
    }
  }
}

}  // namespace dunkl::suites
