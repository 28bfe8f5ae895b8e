#include "dunkl/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "dunkl/error.hpp"
#include "dunkl/parallel.hpp"
#include "dunkl/special_functions.hpp"

namespace dunkl {

namespace {

// ∫_0^t |s|^{2λ} ds with sign, so ∫_a^b = G(b) - G(a).
double weight_primitive(double lambda, double t) {
  const double e = 2.0 * lambda + 1.0;
  return std::copysign(std::pow(std::fabs(t), e) / e, t);
}

double weight_primitive_inverse(double lambda, double v) {
  const double e = 2.0 * lambda + 1.0;
  return std::copysign(std::pow(std::fabs(v) * e, 1.0 / e), v);
}

void require_atom_p(const DunklParameter& param, double p) {
  if (!(p > param.p_critical && p <= 1.0)) {
    std::ostringstream os;
    os << "p = " << p << " outside ((4λ+2)/(4λ+3), 1] = (" << param.p_critical << ", 1] for λ = " << param.lambda;
    throw Error(ErrorCode::PreconditionViolated, os.str());
  }
}

// Portable uniform variate on [0, 1) from the top 53 bits.
double uniform01(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

PanelOptions atom_panels() {
  PanelOptions opt;
  opt.ratio = 3.0;
  opt.order = 8;
  return opt;
}

// c_λ Σ_n coef_n Σ_k h_k ∫_{cell k} kern(t) |t|^{2λ} dt.
template <class Kern>
double integrate_cells(const AtomicSum& f, double c, double lambda, const Kern& kern,
                       std::span<const Singularity> sings, const PanelOptions& opt) {
  double acc = 0.0;
  for (std::size_t n = 0; n < f.atoms.size(); ++n) {
    if (f.coefficients[n] == 0.0) continue;
    const Atom& a = f.atoms[n];
    double s = 0.0;
    for (std::size_t k = 0; k < a.heights.size(); ++k)
      s += a.heights[k] * integrate_weighted(lambda, a.edges[k], a.edges[k + 1], kern, sings, opt);
    acc += f.coefficients[n] * s;
  }
  return c * acc;
}

double atom_poisson_at(const PoissonKernels& k, const AtomicSum& f, double x, double y, bool conjugate) {
  const DunklParameter& param = k.param();
  const Singularity sings[2] = {{x, y}, {-x, y}};
  const PanelOptions opt = atom_panels();
  auto kern = [&](double t) { return conjugate ? k.conjugate(x, y, t) : k.poisson(x, y, t); };
  return integrate_cells(f, param.c_lambda, param.lambda, kern, std::span<const Singularity>(sings, 2), opt);
}

// Principal value of c_λ ∫_a^b h(x, t) |t|^{2λ} dt.
double cell_hilbert(const PoissonKernels& k, double a, double b, double x) {
  const DunklParameter& param = k.param();
  const double lam = param.lambda, c = param.c_lambda;
  const Singularity sings[2] = {{x, 0.0}, {-x, 0.0}};
  const std::span<const Singularity> sp(sings, 2);
  PanelOptions opt = atom_panels();
  auto kern = [&](double t) { return (t == x || t == -x) ? 0.0 : k.hilbert(x, t); };
  if (!(x > a && x < b)) return c * integrate_weighted(lam, a, b, kern, sp, opt);
  const double w = 0.5 * std::fabs(x);
  const double lo = std::max(a, x - w), hi = std::min(b, x + w);
  double acc = integrate_weighted(lam, a, lo, kern, sp, opt) + integrate_weighted(lam, hi, b, kern, sp, opt);
  const double tl = 2.0 * lam;
  // Near t = x, c h(x, t) |t|^{2λ} = 1/(π (x - t)) + O(log|x - t|).
  auto subtracted = [&](double t) {
    if (t == x) return 0.0;
    return c * k.hilbert(x, t) - 1.0 / (std::numbers::pi * (x - t) * std::pow(std::fabs(t), tl));
  };
  const double window = integrate_weighted(lam, lo, hi, subtracted, std::span<const Singularity>(sings, 1), opt);
  return c * acc + window + std::log((x - lo) / (hi - x)) / std::numbers::pi;
}

double least_squares_slope(const std::vector<double>& u, const std::vector<double>& v) {
  const double n = static_cast<double>(u.size());
  double su = 0, sv = 0, suu = 0, suv = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    su += u[i];
    sv += v[i];
    suu += u[i] * u[i];
    suv += u[i] * v[i];
  }
  const double den = n * suu - su * su;
  return den > 0.0 ? (n * suv - su * sv) / den : 0.0;
}

}  // namespace

double interval_measure(const DunklParameter& param, double a, double b) {
  return param.c_lambda * (weight_primitive(param.lambda, b) - weight_primitive(param.lambda, a));
}

std::string to_string(AtomShape shape) {
  switch (shape) {
    case AtomShape::SignSplit: return "SignSplit";
    case AtomShape::HaarLike: return "HaarLike";
    case AtomShape::RandomZeroMean: return "RandomZeroMean";
  }
  return "unknown";
}

double Atom::operator()(double x) const {
  if (!(x >= edges.front() && x < edges.back())) return 0.0;
  const auto it = std::upper_bound(edges.begin(), edges.end(), x);
  return heights[static_cast<std::size_t>(it - edges.begin()) - 1];
}

double Atom::sup_norm() const {
  double m = 0.0;
  for (double h : heights) m = std::max(m, std::fabs(h));
  return m;
}

double Atom::moment() const {
  const DunklParameter param = make_parameter(lambda);
  double s = 0.0;
  for (std::size_t k = 0; k < heights.size(); ++k) s += heights[k] * interval_measure(param, edges[k], edges[k + 1]);
  return s;
}

Atom make_atom(const DunklParameter& param, double t0, double delta, double p, AtomShape shape, std::uint64_t seed) {
  if (!(delta > 0.0) || !std::isfinite(delta) || !std::isfinite(t0))
    throw Error(ErrorCode::PreconditionViolated, "atom needs a finite centre and a positive half-width");
  require_atom_p(param, p);
  Atom atom;
  atom.lambda = param.lambda;
  atom.t0 = t0;
  atom.delta = delta;
  atom.p = p;
  atom.shape = shape;
  const double a = t0 - delta, b = t0 + delta, lam = param.lambda;
  atom.measure = interval_measure(param, a, b);
  const double bound = std::pow(atom.measure, -1.0 / p);

  switch (shape) {
    case AtomShape::SignSplit: {
      const double m = weight_primitive_inverse(lam, 0.5 * (weight_primitive(lam, a) + weight_primitive(lam, b)));
      atom.edges = {a, m, b};
      atom.heights = {-bound, bound};
      break;
    }
    case AtomShape::HaarLike: {
      const double w1 = interval_measure(param, a, t0), w2 = interval_measure(param, t0, b);
      atom.edges = {a, t0, b};
      if (w1 <= w2)
        atom.heights = {bound, -bound * (w1 / w2)};
      else
        atom.heights = {bound * (w2 / w1), -bound};
      break;
    }
    case AtomShape::RandomZeroMean: {
      constexpr int cells = 8;
      std::mt19937_64 gen(seed);
      atom.edges.resize(cells + 1);
      for (int k = 0; k <= cells; ++k) atom.edges[k] = t0 + delta * (2.0 * k / cells - 1.0);
      atom.edges.back() = b;
      std::vector<double> h(cells), w(cells);
      double hw = 0.0, ws = 0.0;
      for (int k = 0; k < cells; ++k) {
        h[k] = 2.0 * uniform01(gen) - 1.0;
        w[k] = interval_measure(param, atom.edges[k], atom.edges[k + 1]);
        hw += h[k] * w[k];
        ws += w[k];
      }
      double top = 0.0;
      for (int k = 0; k < cells; ++k) {
        h[k] -= hw / ws;
        top = std::max(top, std::fabs(h[k]));
      }
      if (!(top > 0.0)) throw Error(ErrorCode::InfeasibleAtom, "projected profile vanishes");
      for (double& v : h) v *= bound / top;
      atom.heights = std::move(h);
      break;
    }
  }
  return atom;
}

AtomInvariants check_atom(const DunklParameter& param, const Atom& atom) {
  AtomInvariants inv;
  const double a = atom.t0 - atom.delta, b = atom.t0 + atom.delta;
  inv.support = atom.edges.size() == atom.heights.size() + 1 && atom.edges.front() >= a && atom.edges.back() <= b &&
                std::is_sorted(atom.edges.begin(), atom.edges.end());
  const double measure = interval_measure(param, a, b);
  inv.sup = atom.sup_norm();
  inv.bound = std::pow(measure, -1.0 / atom.p);
  inv.size = inv.sup <= inv.bound * (1.0 + 1e-12);
  inv.moment = atom.moment();
  inv.moment_bound = 1e-12 * std::pow(measure, 1.0 - 1.0 / atom.p);
  inv.cancellation = std::fabs(inv.moment) <= inv.moment_bound;
  return inv;
}

Atom dilate(const DunklParameter& param, const Atom& atom, double r) {
  if (atom.t0 != 0.0) throw Error(ErrorCode::PreconditionViolated, "dilation keeps atoms only when centred at 0");
  if (!(r > 0.0)) throw Error(ErrorCode::PreconditionViolated, "dilation factor must be positive");
  Atom d = atom;
  d.delta = atom.delta / r;
  for (double& e : d.edges) e /= r;
  const double scale = std::pow(r, (2.0 * param.lambda + 1.0) / atom.p);
  for (double& h : d.heights) h *= scale;
  d.measure = interval_measure(param, -d.delta, d.delta);
  return d;
}

double AtomicSum::operator()(double x) const {
  double s = 0.0;
  for (std::size_t n = 0; n < atoms.size(); ++n) s += coefficients[n] * atoms[n](x);
  return s;
}

double AtomicSum::coefficient_sum(double p) const {
  double s = 0.0;
  for (double c : coefficients) s += std::pow(std::fabs(c), p);
  return s;
}

AtomicSum single(const Atom& atom) { return {{atom}, {1.0}}; }

HalfPlaneLattice atom_lattice(const DunklParameter& param, const AtomicSum& f, const AtomLatticeOptions& opt) {
  if (f.atoms.empty()) throw Error(ErrorCode::PreconditionViolated, "atom lattice needs at least one atom");
  if (opt.level < 0 || opt.order < 2 || opt.y_per_decade < 1 || !(opt.far_factor > 1.0) || !(opt.y_min_factor > 0.0))
    throw Error(ErrorCode::BadResolution, "invalid atom lattice options");
  double dmin = std::numeric_limits<double>::infinity(), R = 0.0;
  std::vector<double> keys{0.0};
  for (const Atom& a : f.atoms) {
    dmin = std::min(dmin, a.delta);
    R = std::max(R, std::fabs(a.t0) + a.delta);
    for (double e : a.edges) keys.push_back(std::fabs(e));
  }
  const double X = opt.far_factor * R;
  const double hmin = 0.25 * dmin * std::ldexp(1.0, -opt.level);
  const double growth = std::pow(2.0, std::ldexp(1.0, -opt.level));

  // Geometric sequences k ± hmin·growth^j around every key point.
  std::vector<double> cand{0.0, X};
  for (double k : keys) {
    cand.push_back(k);
    for (double d = hmin; d < X; d *= growth) {
      if (k + d < X) cand.push_back(k + d);
      if (k - d > 0.0) cand.push_back(k - d);
    }
  }
  std::sort(cand.begin(), cand.end());
  std::sort(keys.begin(), keys.end());
  // |e| and |-e| can differ by rounding; such near-duplicates would create
  // panels a few ulps wide.
  keys.erase(std::unique(keys.begin(), keys.end(), [&](double u, double v) { return v - u < 1e-6 * hmin; }),
             keys.end());
  // Merge candidates closer than hmin/2, never dropping a key point.
  std::vector<double> edges{0.0};
  for (double e : cand) {
    if (e <= edges.back()) continue;
    const bool is_key = std::binary_search(keys.begin(), keys.end(), e) || e == X;
    if (e - edges.back() < 0.5 * hmin) {
      if (!is_key) continue;
      const bool last_is_key = std::binary_search(keys.begin(), keys.end(), edges.back());
      if (!last_is_key && edges.size() > 1) edges.back() = e;
      else edges.push_back(e);
      continue;
    }
    edges.push_back(e);
  }
  if (edges.back() != X) edges.push_back(X);

  const double y_min = opt.y_min_factor * dmin, y_max = X;
  const double decades = std::log10(y_max / y_min);
  const int base = std::max(2, static_cast<int>(std::ceil(decades * opt.y_per_decade)));
  const int levels = base * (1 << opt.level) + 1;
  return make_lattice(build_graded_grid(param, std::move(edges), opt.order), y_min, y_max, levels);
}

LatticeSamples atom_poisson(const DunklParameter& param, const AtomicSum& f, const HalfPlaneLattice& lattice,
                            bool conjugate) {
  const PoissonKernels k(param);
  LatticeSamples s;
  s.nx = lattice.x_grid->size();
  s.ny = lattice.y.size();
  s.values.resize(s.nx * s.ny);
  const auto& xs = lattice.x_grid->nodes();
  parallel_for(s.values.size(), [&](std::size_t idx) {
    s.values[idx] = atom_poisson_at(k, f, xs[idx % s.nx], lattice.y[idx / s.nx], conjugate);
  }, 64);
  return s;
}

std::vector<double> atom_hilbert(const DunklParameter& param, const AtomicSum& f, const std::vector<double>& xs) {
  const PoissonKernels k(param);
  for (double x : xs) {
    bool bad = x == 0.0;
    for (const Atom& a : f.atoms)
      for (double e : a.edges) bad = bad || x == e;
    if (bad) {
      std::ostringstream os;
      os << "Hilbert transform of a piecewise constant is singular at x = " << x;
      throw Error(ErrorCode::DiagonalPoint, os.str());
    }
  }
  std::vector<double> out(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    double acc = 0.0;
    for (std::size_t n = 0; n < f.atoms.size(); ++n) {
      if (f.coefficients[n] == 0.0) continue;
      const Atom& a = f.atoms[n];
      double s = 0.0;
      for (std::size_t c = 0; c < a.heights.size(); ++c) s += a.heights[c] * cell_hilbert(k, a.edges[c], a.edges[c + 1], xs[i]);
      acc += f.coefficients[n] * s;
    }
    out[i] = acc;
  }, 16);
  return out;
}

double lp_power(const WeightedGrid& grid, const std::vector<double>& values, double p, bool tail, double* tail_part) {
  if (values.size() != grid.size()) throw Error(ErrorCode::PreconditionViolated, "sample count does not match the grid");
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += grid.weights()[i] * std::pow(std::fabs(values[i]), p);
  double t = 0.0;
  if (tail) {
    const std::size_t N = grid.size(), M = grid.half_size();
    const double X = grid.truncation(), e_base = 2.0 * grid.lambda();
    // Fit the decay between |x| ≈ X/2 and the outermost node; a single
    // outer panel may be too narrow for a stable exponent.
    const auto& xs = grid.nodes();
    const std::size_t mid = static_cast<std::size_t>(
        std::lower_bound(xs.begin() + static_cast<std::ptrdiff_t>(M), xs.end(), 0.5 * X) - xs.begin());
    for (int side = 0; side < 2; ++side) {
      const std::size_t ip = std::min(mid, N - 2);
      const std::size_t i1 = side ? ip : grid.mirror(ip), i2 = side ? N - 1 : 0;
      const double x1 = std::fabs(grid.nodes()[i1]), x2 = std::fabs(grid.nodes()[i2]);
      const double v1 = std::fabs(values[i1]), v2 = std::fabs(values[i2]);
      if (v2 == 0.0) continue;
      const double kappa = std::log(v1 / v2) / std::log(x2 / x1);
      const double e = -kappa * p + e_base;
      if (!(e < -1.0)) {
        t = std::numeric_limits<double>::infinity();
        break;
      }
      t += grid.c_lambda() * std::pow(v2, p) * std::pow(x2, kappa * p) * std::pow(X, e + 1.0) / (-(e + 1.0));
    }
  }
  if (tail_part) *tail_part = t;
  return s + t;
}

HpEstimate hp_from_maximal(const HalfPlaneLattice& lattice, const MaximalSample& m, double p, bool tail) {
  HpEstimate h;
  h.p = p;
  h.value = lp_power(*lattice.x_grid, m.values, p, tail, &h.tail);
  h.nx = lattice.x_grid->size();
  h.ny = lattice.y.size();
  h.y_min = lattice.y.front();
  h.y_max = lattice.y.back();
  h.cone_samples = m.cone_samples;
  return h;
}

HpEstimate hp_quasinorm(const DunklParameter& param, const SampledFunction& f, double p, const HalfPlaneLattice& lattice,
                        double aperture) {
  if (!(p > 0.0)) throw Error(ErrorCode::PreconditionViolated, "p must be positive");
  const MaximalSample m = maximal(lattice, poisson_integral(param, f, lattice), MaximalKind::Nontangential, aperture);
  HpEstimate h = hp_from_maximal(lattice, m, p);
  h.aperture = aperture;
  return h;
}

HpEstimate hp_quasinorm(const DunklParameter& param, const AtomicSum& f, double p, const AtomLatticeOptions& opt) {
  if (!(p > 0.0)) throw Error(ErrorCode::PreconditionViolated, "p must be positive");
  const HalfPlaneLattice lat = atom_lattice(param, f, opt);
  const MaximalSample m = maximal(lat, atom_poisson(param, f, lat, false), MaximalKind::Nontangential, 1.0);
  return hp_from_maximal(lat, m, p);
}

EstimateATable estimate_a_check(const DunklParameter& param, const std::vector<double>& b_grid, int panel_order) {
  EstimateATable t;
  t.lambda = param.lambda;
  for (double b : b_grid) {
    if (!(std::fabs(b) < 1.0)) {
      std::ostringstream os;
      os << "b = " << b << " outside (-1, 1)";
      throw Error(ErrorCode::PreconditionViolated, os.str());
    }
    if (std::fabs(b) > 1.0 - 1e-4) {
      t.skipped.push_back(b);
      continue;
    }
    EstimateARow r;
    r.b = b;
    const double am = 1.0 - std::fabs(b);
    r.lhs = angular_integral_quadrature_ab(param.lambda, am, b, panel_order);
    r.scaled = r.lhs * am;
    r.scaled_refined = angular_integral_quadrature_ab(param.lambda, am, b, 2 * panel_order) * am;
    if (!std::isfinite(r.lhs) || !std::isfinite(r.scaled_refined))
      throw Error(ErrorCode::QuadratureUnstable, "non-finite angular integral");
    t.C = std::max(t.C, r.scaled);
    t.C_refined = std::max(t.C_refined, r.scaled_refined);
    t.rows.push_back(r);
  }
  t.stability = t.C > 0.0 ? std::fabs(t.C_refined - t.C) / t.C : 0.0;
  return t;
}

ComparabilityResult comparability_check(double x, double t, double tp, double delta, double c,
                                        const std::vector<double>& s_grid) {
  if (!(std::fabs(std::fabs(x) - std::fabs(t)) > c * delta) || !(std::fabs(t - tp) < delta))
    throw Error(ErrorCode::PreconditionViolated, "comparability needs ||x| - |t|| > cδ and |t - t'| < δ");
  ComparabilityResult r;
  r.min_ratio = std::numeric_limits<double>::infinity();
  r.max_ratio = 0.0;
  for (double s : s_grid) {
    if (!(std::fabs(s) <= 1.0)) throw Error(ErrorCode::PreconditionViolated, "s must lie in [-1, 1]");
    const double q1 = x * x + t * t - 2.0 * x * t * s;
    const double q2 = x * x + tp * tp - 2.0 * x * tp * s;
    const double ratio = q1 / q2;
    r.min_ratio = std::min(r.min_ratio, ratio);
    r.max_ratio = std::max(r.max_ratio, ratio);
  }
  if (s_grid.empty()) r.min_ratio = r.max_ratio = 1.0;
  r.K = std::max(r.max_ratio, 1.0 / r.min_ratio);
  r.pass = r.K <= 10.0;
  return r;
}

FarFieldTable atom_far_field_bound(const DunklParameter& param, const Atom& atom, const std::vector<double>& x_samples,
                                   const std::vector<double>& y_samples, double c) {
  const double t0 = atom.t0, d = atom.delta;
  for (double x : x_samples) {
    if (std::fabs(x - t0) < c * d || std::fabs(x + t0) < c * d || std::fabs(x) < c * d) {
      std::ostringstream os;
      os << "x = " << x << " lies in I_c ∪ Ĩ_c ∪ I_0 (c = " << c << ")";
      throw Error(ErrorCode::InsideExcludedRegion, os.str());
    }
  }
  for (double y : y_samples)
    if (!(y > 0.0)) throw Error(ErrorCode::NonPositiveY, "far-field y samples must be positive");
  const PoissonKernels k(param);
  const AtomicSum f = single(atom);
  FarFieldTable table;
  table.rows.resize(x_samples.size());
  parallel_for(x_samples.size(), [&](std::size_t i) {
    FarFieldRow& r = table.rows[i];
    r.x = x_samples[i];
    for (double y : y_samples) r.sup = std::max(r.sup, std::fabs(atom_poisson_at(k, f, r.x, y, false)));
    const double ax = std::fabs(r.x), at = std::fabs(t0);
    r.rhs = std::pow(atom.measure, 1.0 - 1.0 / atom.p) * d /
            ((ax - at) * (ax - at) * std::pow(ax + at, 2.0 * param.lambda));
    r.ratio = r.sup / r.rhs;
  }, 1);
  std::vector<double> lu, ls, lr;
  for (const auto& r : table.rows) {
    table.max_ratio = std::max(table.max_ratio, r.ratio);
    if (r.sup > 0.0) {
      lu.push_back(std::log(std::fabs(std::fabs(r.x) - std::fabs(t0))));
      ls.push_back(std::log(r.sup));
      lr.push_back(std::log(r.rhs));
    }
  }
  table.slope_sup = least_squares_slope(lu, ls);
  table.slope_rhs = least_squares_slope(lu, lr);
  return table;
}

AtomSweep hilbert_atom_sweep(const DunklParameter& param, const std::vector<Atom>& atoms, const std::vector<double>& ps,
                             const AtomLatticeOptions& opt) {
  for (double p : ps) require_atom_p(param, p);
  AtomSweep sweep;
  for (std::size_t n = 0; n < atoms.size(); ++n) {
    const AtomicSum f = single(atoms[n]);
    const HalfPlaneLattice lat = atom_lattice(param, f, opt);
    const MaximalSample mp = maximal(lat, atom_poisson(param, f, lat, false), MaximalKind::Nontangential, 1.0);
    const MaximalSample mq = maximal(lat, atom_poisson(param, f, lat, true), MaximalKind::Nontangential, 1.0);
    const std::vector<double> ha = atom_hilbert(param, f, lat.x_grid->nodes());
    for (double p : ps) {
      AtomSweepRow r;
      r.index = n;
      r.t0 = atoms[n].t0;
      r.delta = atoms[n].delta;
      r.p = p;
      r.shape = atoms[n].shape;
      r.hp_a = hp_from_maximal(lat, mp, p).value;
      r.hp_Ha = hp_from_maximal(lat, mq, p).value;
      r.lp_Ha = lp_power(*lat.x_grid, ha, p, true);
      r.r1 = r.hp_Ha / r.hp_a;
      r.r2 = r.lp_Ha / r.hp_a;
      sweep.max_r1 = std::max(sweep.max_r1, r.r1);
      sweep.max_r2 = std::max(sweep.max_r2, r.r2);
      sweep.rows.push_back(r);
    }
  }
  return sweep;
}

}  // namespace dunkl
