#include "dunkl/translation.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include "dunkl/error.hpp"
#include "dunkl/parallel.hpp"

namespace dunkl {

namespace {

// f at an arbitrary point, treating a decayed profile-less function as zero
// beyond its grid.
class PointEvaluator {
 public:
  explicit PointEvaluator(const SampledFunction& f) : f_(f) {
    if (!f.has_profile()) {
      const auto& v = f.values();
      double peak = 0.0;
      for (const auto& x : v) peak = std::max(peak, std::abs(x));
      decayed_ = std::max(std::abs(v.front()), std::abs(v.back())) <= 1e-12 * peak;
    }
  }
  cplx operator()(double x) const {
    if (f_.has_profile() || std::fabs(x) <= f_.grid().truncation()) return f_(x);
    if (decayed_) return 0.0;
    std::ostringstream os;
    os << "translation needs f at " << x << ", beyond the grid, and f has not decayed there";
    throw Error(ErrorCode::InterpolationOutOfRange, os.str());
  }

 private:
  const SampledFunction& f_;
  bool decayed_ = false;
};

cplx angular_translate(const DunklParameter& param, const PointEvaluator& f, double t, double x,
                       const JacobiRule& rule) {
  if (t == 0.0) return f(x);
  if (x == 0.0) return f(t);
  cplx acc = 0.0;
  const double base = x * x + t * t, cross = 2.0 * x * t;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double R = std::sqrt(std::max(0.0, base + cross * rule.nodes[k]));
    const cplx fp = f(R), fm = f(-R);
    cplx v = 0.5 * (fp + fm);
    if (R > 0.0) v += 0.5 * (fp - fm) * ((x + t) / R);
    acc += rule.weights[k] * v;
  }
  return param.c_prime * acc;
}

}  // namespace

double kernel_W(const DunklParameter& param, double x, double t, double z) {
  if (x == 0.0 || t == 0.0) throw Error(ErrorCode::DegenerateArguments, "W kernel needs x and t nonzero");
  const double ax = std::fabs(x), at = std::fabs(t), az = std::fabs(z);
  const double a = std::fabs(ax - at), b = ax + at;
  if (!(az > a && az < b)) return 0.0;
  const double lam = param.lambda;
  const double w0 = param.c_dprime * std::pow(std::fabs(x * t * z), 1.0 - 2.0 * lam) /
                    std::pow((b * b - z * z) * (z * z - a * a), 1.0 - lam);
  const double s_xtz = (x * x + t * t - z * z) / (2.0 * x * t);
  const double s_zxt = (z * z + x * x - t * t) / (2.0 * z * x);
  const double s_ztx = (z * z + t * t - x * x) / (2.0 * z * t);
  return w0 * (1.0 - s_xtz + s_zxt + s_ztx);
}

cplx translate_at(const DunklParameter& param, const SampledFunction& f, double t, double x, const JacobiRule& rule) {
  return angular_translate(param, PointEvaluator(f), t, x, rule);
}

SampledFunction translate(const DunklParameter& param, const SampledFunction& f, double t, int order) {
  if (t == 0.0) return f;
  auto rule = std::make_shared<const JacobiRule>(build_jacobi_rule(param, order));
  auto src = std::make_shared<const SampledFunction>(f);
  Profile prof = [param, rule, src, t](double x) {
    return angular_translate(param, PointEvaluator(*src), t, x, *rule);
  };
  if (f.has_profile()) return SampledFunction::from_profile(f.grid_ptr(), prof);
  const auto& xs = f.grid().nodes();
  std::vector<cplx> vals(xs.size());
  const PointEvaluator ev(f);
  parallel_for(xs.size(), [&](std::size_t i) { vals[i] = angular_translate(param, ev, t, xs[i], *rule); });
  return SampledFunction(f.grid_ptr(), std::move(vals));
}

cplx translate_via_kernel(const DunklParameter& param, const Profile& f, double t, double x, int order) {
  if (t == 0.0) return f(x);
  if (x == 0.0) return f(t);
  const double lam = param.lambda;
  const double ax = std::fabs(x), at = std::fabs(t);
  const double b = ax + at;
  double a = std::fabs(ax - at);
  const bool touching = a < 1e-14 * b;
  if (touching) a = 0.0;
  // On z in (a, b): W⁰|z|^{2λ} = c'' |xt|^{1-2λ} z [(b-z)(b+z)(z-a)(z+a)]^{λ-1}.
  // The factors (z-a)^{λ-1}(b-z)^{λ-1} (or z^{2λ-1}(b-z)^{λ-1} when a = 0)
  // go into a Jacobi weight; the rest is smooth.
  const GaussRule rule = touching ? gauss_jacobi(order, lam - 1.0, 2.0 * lam - 1.0)
                                  : gauss_jacobi(order, lam - 1.0, lam - 1.0);
  const double half = 0.5 * (b - a);
  const double wexp = touching ? (3.0 * lam - 2.0) : (2.0 * lam - 2.0);
  const double scale = std::pow(half, wexp) * half;
  const double pref = param.c_lambda * param.c_dprime * std::pow(ax * at, 1.0 - 2.0 * lam);
  const double s_den = 2.0 * x * t;
  cplx acc = 0.0;
  for (int k = 0; k < order; ++k) {
    const double z = a + half * (1.0 + rule.nodes[k]);
    double smooth = std::pow(b + z, lam - 1.0);
    if (!touching) smooth *= z * std::pow(z + a, lam - 1.0);
    const double s_xtz = (x * x + t * t - z * z) / s_den;
    const double odd = (z * z + x * x - t * t) / (2.0 * z * x) + (z * z + t * t - x * x) / (2.0 * z * t);
    acc += rule.weights[k] * smooth * ((1.0 - s_xtz + odd) * f(z) + (1.0 - s_xtz - odd) * f(-z));
  }
  return pref * scale * acc;
}

SampledFunction convolve(const DunklParameter& param, const SampledFunction& f, const SampledFunction& g, int order) {
  if (g.values().size() != f.values().size())
    throw Error(ErrorCode::PreconditionViolated, "convolution needs a common grid");
  if (!g.has_profile()) {
    const auto& v = g.values();
    double peak = 0.0;
    for (const auto& x : v) peak = std::max(peak, std::abs(x));
    if (std::max(std::abs(v.front()), std::abs(v.back())) > 1e-12 * peak)
      throw Error(ErrorCode::TruncationTooTight, "second factor has not decayed at the truncation");
  }
  const JacobiRule rule = build_jacobi_rule(param, order);
  const PointEvaluator ev(f);
  const WeightedGrid& grid = g.grid();
  const auto& xs = grid.nodes();
  const auto& w = grid.weights();
  std::vector<cplx> out(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (g.values()[j] == cplx(0.0)) continue;
      acc += w[j] * g.values()[j] * angular_translate(param, ev, xs[i], -xs[j], rule);
    }
    if (g.tail_matters()) {
      const auto& tn = grid.tail_nodes();
      const auto& tw = grid.tail_weights();
      for (std::size_t j = 0; j < tn.size(); ++j)
        acc += tw[j] * g.tail_values()[j] * angular_translate(param, ev, xs[i], -tn[j], rule);
    }
    out[i] = acc;
  });
  return SampledFunction(f.grid_ptr(), std::move(out));
}

}  // namespace dunkl
