#include <algorithm>
#include <cmath>
#include <optional>

#include "dunkl/hilbert.hpp"
#include "dunkl/params.hpp"
#include "dunkl/poisson.hpp"
#include "dunkl/transform.hpp"
#include "suite_common.hpp"

namespace dunkl::suites {

namespace {

struct Datum {
  std::string name;
  Profile profile;
  bool in_battery;     // compared across all three routes
  bool conjugate_id;   // used for Q(Hf) = -Pf on the lattice
};

// Sample points inside |x| ≤ 3, offset so none falls on 0 or a grid node.
std::vector<double> route_points() {
  std::vector<double> xs;
  for (int k = -4; k <= 4; ++k) xs.push_back(0.75 * k + 0.01);
  return xs;
}

}  // namespace

void run_hilbert_routes(Recorder& rec) {
  const SuiteConfig& c = rec.config();
  const std::vector<double> y_seq{0.2, 0.1, 0.05, 0.025, 0.0125};
  const std::vector<double> xs = route_points();
  for (double lam : lambdas_or(c, {0.25, 0.5, 1.0, 3.0})) {
    const DunklParameter param = make_parameter(lam);
    const int n = c.grid_n.value_or(768);
    rec.set_resolution(768, n);
    const GridPtr grid = build_weighted_grid(param, c.domain.value_or(12.0), n);
    const GridPtr xi_grid = build_weighted_grid(param, 3.0 * grid->truncation(), n);
    const Params gp{{"X", grid->truncation()}, {"n", grid->size()}, {"Xi", xi_grid->truncation()},
                    {"y_sequence", y_seq}, {"points", xs.size()}};

    // The bump's transform decays only like exp(-c√ξ), too slowly for the
    // truncated ξ grid, so it enters the PV-boundary comparison only.
    const std::vector<Datum> data{
        {"gauss", [](double x) { return cplx(std::exp(-x * x)); }, true, true},
        {"shift", [](double x) { return cplx(std::exp(-(x - 1) * (x - 1))); }, true, true},
        {"xgauss", [](double x) { return cplx(x * std::exp(-x * x)); }, true, false},
        {"P1", [param](double x) { return cplx(poisson_profile(param, 1.0, x)); }, true, true},
        {"wide", [](double x) { return cplx(std::exp(-x * x / 8)); }, true, false},
        {"bump", [](double x) { return std::fabs(x) < 2 ? cplx(std::exp(-4 / (4 - x * x))) : cplx(0.0); }, false, false},
    };

    for (const Datum& d : data) {
      const SampledFunction f = SampledFunction::from_profile(grid, d.profile);
      Params dp = gp;
      dp["f"] = d.name;
      double sup = 0.0;
      for (double x : xs) sup = std::max(sup, std::abs(d.profile(x)));
      dp["normalized_by"] = sup;
      const std::string tail = "/" + d.name + "/lambda=" + label(lam);

      std::vector<cplx> pv(xs.size()), bd;
      std::string err;
      try {
        for (std::size_t i = 0; i < xs.size(); ++i) pv[i] = hilbert_pv(param, f, xs[i]).value;
        bd = hilbert_boundary_at(param, f, xs, y_seq);
      } catch (const Error& e) {
        err = e.what();
      }
      auto max_gap = [&](const std::vector<cplx>& a, const std::vector<cplx>& b) {
        double w = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) w = std::max(w, std::abs(a[i] - b[i]));
        return w / sup;
      };
      if (!err.empty()) {
        rec.record_error("routes", "routes/pv_vs_boundary" + tail, lam, kNaN, err);
        continue;
      }
      rec.record("routes", "routes/pv_vs_boundary" + tail, lam, kNaN, dp, "abs", 1e-3,
                 [&] { return Measured{max_gap(pv, bd), 0.0}; });
      if (!d.in_battery) continue;

      std::optional<SampledFunction> H;
      rec.record("routes", "routes/multiplier_vs_pv" + tail, lam, kNaN, dp, "abs", 1e-3, [&] {
        H = hilbert_multiplier(param, f, xi_grid);
        std::vector<cplx> m(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) m[i] = (*H)(xs[i]);
        return Measured{max_gap(m, pv), 0.0};
      });
      if (!H) continue;
      rec.record("routes", "routes/multiplier_vs_boundary" + tail, lam, kNaN, dp, "abs", 1e-3, [&] {
        std::vector<cplx> m(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) m[i] = (*H)(xs[i]);
        return Measured{max_gap(m, bd), 0.0};
      });
      if (d.name == "P1") {
        // Hf for f = P_1 is the conjugate profile Q_1.
        rec.record("exact", "exact/multiplier_vs_Q1" + tail, lam, kNaN, dp, "abs", 1e-6, [&] {
          double w = 0.0;
          for (double x : xs) w = std::max(w, std::abs((*H)(x) - conjugate_profile(param, 1.0, x)));
          return Measured{w / sup, 0.0};
        });
      }
      rec.record("involution", "involution" + tail, lam, kNaN, dp, "abs", 1e-4, [&] {
        const SampledFunction HH = hilbert_multiplier(param, *H, xi_grid, false);
        std::vector<cplx> minus_f(f.values());
        for (auto& v : minus_f) v = -v;
        return Measured{relative_l2_error(HH, SampledFunction(grid, minus_f)), 0.0};
      });
      rec.record("isometry", "isometry" + tail, lam, kNaN, dp, "abs", 1e-5,
                 [&] { return Measured{std::fabs(H->norm(2) - f.norm(2)) / f.norm(2), 0.0}; });

      for (double q : {1.5, 2.0, 3.0}) {
        Params qp = dp;
        qp["q"] = q;
        rec.record("strong_pp", "strong_pp/q=" + label(q) + tail, lam, kNaN, qp, "finite", 0.0,
                   [&] { return Measured{H->norm(q) / f.norm(q), kNaN}; });
      }

      if (d.conjugate_id) {
        const HalfPlaneLattice lattice = make_lattice(build_weighted_grid(param, 3.0, 64), 1e-3, 10.0, 16);
        Params lp = dp;
        lp.erase("normalized_by");
        lp["lattice"] = {{"X", 3.0}, {"n", 64}, {"y_min", 1e-3}, {"y_max", 10.0}, {"levels", 16}};
        rec.record("conjugate_identity", "conjugate_identity" + tail, lam, kNaN, lp, "abs", 1e-4, [&] {
          const LatticeSamples P = poisson_integral(param, f, lattice);
          const LatticeSamples Q = conjugate_poisson_integral(param, *H, lattice);
          double w = 0.0;
          for (std::size_t k = 0; k < P.values.size(); ++k) w = std::max(w, std::abs(P.values[k] + Q.values[k]));
          return Measured{w, 0.0};
        });
      }
    }
  }
}

}  // namespace dunkl::suites
