#include "dunkl/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <utility>

#include "dunkl/error.hpp"

namespace dunkl {

namespace {

// Three-term recurrence of the monic Jacobi polynomials:
// diagonal a_k and squared off-diagonal b_k of the Jacobi matrix.
double jacobi_a(int k, double al, double be) {
  if (k == 0) return (be - al) / (al + be + 2.0);
  const double s = 2.0 * k + al + be;
  return (be * be - al * al) / (s * (s + 2.0));
}

double jacobi_b(int k, double al, double be) {
  if (k == 1) {
    const double s = al + be + 2.0;
    return 4.0 * (1.0 + al) * (1.0 + be) / (s * s * (s + 1.0));
  }
  const double s = 2.0 * k + al + be;
  return 4.0 * k * (k + al) * (k + be) * (k + al + be) / (s * s * (s + 1.0) * (s - 1.0));
}

std::vector<double> barycentric_weights(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<double> w(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) w[i] /= (x[i] - x[j]);
  }
  // Rescale to avoid overflow for high orders; only ratios matter.
  double mx = 0.0;
  for (double v : w) mx = std::max(mx, std::fabs(v));
  for (double& v : w) v /= mx;
  return w;
}

// Row-major q×q differentiation matrix on the nodes x.
std::vector<double> differentiation_matrix(const std::vector<double>& x, const std::vector<double>& bw) {
  const std::size_t n = x.size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double diag = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double v = (bw[j] / bw[i]) / (x[i] - x[j]);
      d[i * n + j] = v;
      diag -= v;
    }
    d[i * n + i] = diag;
  }
  return d;
}

}  // namespace

GaussRule gauss_jacobi(int n, double alpha, double beta) {
  if (n < 1) throw Error(ErrorCode::BadResolution, "Gauss rule needs at least one node");
  if (!(alpha > -1.0) || !(beta > -1.0))
    throw Error(ErrorCode::PreconditionViolated, "Jacobi exponents must exceed -1");

  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 1));
  for (int k = 0; k < n; ++k) diag(k) = jacobi_a(k, alpha, beta);
  for (int k = 1; k < n; ++k) sub(k - 1) = std::sqrt(jacobi_b(k, alpha, beta));

  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double log_mu0 = (alpha + beta + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                         std::lgamma(beta + 1.0) - std::lgamma(alpha + beta + 2.0);
  const double mu0 = std::exp(log_mu0);
  if (n == 1) {
    rule.nodes[0] = diag(0);
    rule.weights[0] = mu0;
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::ComputeEigenvectors);
  const auto& vals = solver.eigenvalues();
  const auto& vecs = solver.eigenvectors();
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = vals(i);
    rule.weights[i] = mu0 * vecs(0, i) * vecs(0, i);
  }
  return rule;
}

GaussRule gauss_legendre(int n) {
  GaussRule r = gauss_jacobi(n, 0.0, 0.0);
  // Enforce exact symmetry, which the eigen solver only gives to rounding.
  for (int i = 0; i < n / 2; ++i) {
    const int j = n - 1 - i;
    const double x = 0.5 * (r.nodes[j] - r.nodes[i]);
    const double w = 0.5 * (r.weights[i] + r.weights[j]);
    r.nodes[i] = -x;
    r.nodes[j] = x;
    r.weights[i] = r.weights[j] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

JacobiRule build_jacobi_rule(const DunklParameter& param, int n) {
  if (n < 8) {
    std::ostringstream os;
    os << "angular rule order must be at least 8, got " << n;
    throw Error(ErrorCode::BadResolution, os.str());
  }
  // (1+s)(1-s^2)^{λ-1} = (1-s)^{λ-1} (1+s)^{λ}: the whole weight is Jacobi.
  GaussRule g = gauss_jacobi(n, param.lambda - 1.0, param.lambda);
  JacobiRule r;
  r.order = n;
  r.nodes = std::move(g.nodes);
  r.weights = std::move(g.weights);
  return r;
}

const PanelRules& panel_rules(double lambda, int q) {
  static std::mutex mu;
  static std::map<std::pair<double, int>, std::unique_ptr<PanelRules>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{lambda, q}];
  if (!slot) {
    auto pr = std::make_unique<PanelRules>();
    pr->q = q;
    pr->lambda = lambda;
    GaussRule gl = gauss_legendre(q);
    GaussRule gj = gauss_jacobi(q, 0.0, 2.0 * lambda);
    const double jscale = std::pow(2.0, -2.0 * lambda - 1.0);
    for (int j = 0; j < q; ++j) {
      pr->gl_x.push_back(0.5 * (1.0 + gl.nodes[j]));
      pr->gl_w.push_back(0.5 * gl.weights[j]);
      pr->gj_x.push_back(0.5 * (1.0 + gj.nodes[j]));
      pr->gj_w.push_back(jscale * gj.weights[j]);
    }
    slot = std::move(pr);
  }
  return *slot;
}

WeightedGrid::WeightedGrid(const DunklParameter& param, std::vector<double> edges, int q)
    : lambda_(param.lambda), c_lambda_(param.c_lambda), q_(q), edges_(std::move(edges)) {
  if (q < 2) throw Error(ErrorCode::BadResolution, "panel order must be at least 2");
  if (edges_.size() < 2 || edges_.front() != 0.0)
    throw Error(ErrorCode::PreconditionViolated, "panel edges must start at 0 and contain a positive edge");
  for (std::size_t k = 1; k < edges_.size(); ++k)
    if (!(edges_[k] > edges_[k - 1]))
      throw Error(ErrorCode::PreconditionViolated, "panel edges must be strictly increasing");

  const PanelRules& pr = panel_rules(lambda_, q_);
  const double tl = 2.0 * lambda_;
  std::vector<double> pos_x, pos_w;
  const std::size_t m = edges_.size() - 1;
  pos_x.reserve(m * q_);
  pos_w.reserve(m * q_);
  for (std::size_t k = 0; k < m; ++k) {
    const double u = edges_[k], len = edges_[k + 1] - edges_[k];
    for (int j = 0; j < q_; ++j) {
      if (k == 0) {
        pos_x.push_back(len * pr.gj_x[j]);
        pos_w.push_back(c_lambda_ * std::pow(len, tl + 1.0) * pr.gj_w[j]);
      } else {
        const double x = u + len * pr.gl_x[j];
        pos_x.push_back(x);
        pos_w.push_back(c_lambda_ * len * pr.gl_w[j] * std::pow(x, tl));
      }
    }
  }
  const std::size_t M = pos_x.size();
  nodes_.resize(2 * M);
  weights_.resize(2 * M);
  for (std::size_t j = 0; j < M; ++j) {
    nodes_[M + j] = pos_x[j];
    weights_[M + j] = pos_w[j];
    nodes_[M - 1 - j] = -pos_x[j];
    weights_[M - 1 - j] = pos_w[j];
  }

  // Tail: panels [X 2^k, X 2^{k+1}], k < 48, Gauss–Legendre of the same order.
  const double X = edges_.back();
  std::vector<double> tx, tw;
  for (int k = 0; k < 48; ++k) {
    const double u = X * std::ldexp(1.0, k), len = u;
    for (int j = 0; j < q_; ++j) {
      const double x = u + len * pr.gl_x[j];
      tx.push_back(x);
      tw.push_back(c_lambda_ * len * pr.gl_w[j] * std::pow(x, tl));
    }
  }
  const std::size_t T = tx.size();
  tail_nodes_.resize(2 * T);
  tail_weights_.resize(2 * T);
  for (std::size_t j = 0; j < T; ++j) {
    tail_nodes_[T + j] = tx[j];
    tail_weights_[T + j] = tw[j];
    tail_nodes_[T - 1 - j] = -tx[j];
    tail_weights_[T - 1 - j] = tw[j];
  }

  bary_first_ = barycentric_weights(pr.gj_x);
  bary_inner_ = barycentric_weights(pr.gl_x);
  diff_first_ = differentiation_matrix(pr.gj_x, bary_first_);
  diff_inner_ = differentiation_matrix(pr.gl_x, bary_inner_);
}

double WeightedGrid::mass() const {
  double s = 0.0;
  for (double w : weights_) s += w;
  return s;
}

cplx WeightedGrid::interpolate(std::span<const cplx> values, double x) const {
  if (values.size() != size())
    throw Error(ErrorCode::PreconditionViolated, "sample count does not match the grid");
  const double ax = std::fabs(x);
  if (!(ax <= truncation())) {
    std::ostringstream os;
    os << "point " << x << " lies outside the grid [-" << truncation() << ", " << truncation() << "]";
    throw Error(ErrorCode::InterpolationOutOfRange, os.str());
  }
  auto it = std::upper_bound(edges_.begin(), edges_.end(), ax);
  std::size_t panel = static_cast<std::size_t>(it - edges_.begin());
  panel = std::min(std::max<std::size_t>(panel, 1), edges_.size() - 1) - 1;
  const double u = edges_[panel], len = edges_[panel + 1] - u;
  const PanelRules& pr = panel_rules(lambda_, q_);
  const auto& ref = (panel == 0) ? pr.gj_x : pr.gl_x;
  const auto& bw = (panel == 0) ? bary_first_ : bary_inner_;
  const double s = (ax - u) / len;
  cplx num = 0.0;
  double den = 0.0;
  for (int j = 0; j < q_; ++j) {
    const std::size_t ip = positive_index(panel, j);
    const std::size_t idx = (x >= 0.0) ? ip : mirror(ip);
    const double diff = s - ref[j];
    if (diff == 0.0) return values[idx];
    const double c = bw[j] / diff;
    num += c * values[idx];
    den += c;
  }
  return num / den;
}

cplx WeightedGrid::interpolate_tail(std::span<const cplx> tail_values, double x) const {
  if (tail_values.size() != tail_nodes_.size())
    throw Error(ErrorCode::PreconditionViolated, "sample count does not match the tail rule");
  const double X = truncation(), ax = std::fabs(x);
  const int panels = static_cast<int>(tail_nodes_.size() / (2 * static_cast<std::size_t>(q_)));
  if (!(ax >= X) || !(ax <= X * std::ldexp(1.0, panels))) {
    std::ostringstream os;
    os << "point " << x << " lies outside the tail rule";
    throw Error(ErrorCode::InterpolationOutOfRange, os.str());
  }
  int k = std::clamp(static_cast<int>(std::floor(std::log2(ax / X))), 0, panels - 1);
  const double u = X * std::ldexp(1.0, k);
  const double s = ax / u - 1.0;
  const PanelRules& pr = panel_rules(lambda_, q_);
  const std::size_t T = tail_nodes_.size() / 2;
  cplx num = 0.0;
  double den = 0.0;
  for (int j = 0; j < q_; ++j) {
    const std::size_t ip = T + static_cast<std::size_t>(k * q_ + j);
    const std::size_t idx = (x >= 0.0) ? ip : tail_nodes_.size() - 1 - ip;
    const double diff = s - pr.gl_x[j];
    if (diff == 0.0) return tail_values[idx];
    const double c = bary_inner_[j] / diff;
    num += c * tail_values[idx];
    den += c;
  }
  return num / den;
}

std::vector<cplx> WeightedGrid::differentiate(std::span<const cplx> values) const {
  if (values.size() != size())
    throw Error(ErrorCode::PreconditionViolated, "sample count does not match the grid");
  std::vector<cplx> out(size());
  const std::size_t m = edges_.size() - 1;
  for (std::size_t panel = 0; panel < m; ++panel) {
    const double scale = 1.0 / (edges_[panel + 1] - edges_[panel]);
    const auto& dm = (panel == 0) ? diff_first_ : diff_inner_;
    for (int i = 0; i < q_; ++i) {
      cplx dpos = 0.0, dneg = 0.0;
      for (int j = 0; j < q_; ++j) {
        const double d = dm[i * q_ + j];
        const std::size_t ip = positive_index(panel, j);
        dpos += d * values[ip];
        dneg += d * values[mirror(ip)];
      }
      const std::size_t ip = positive_index(panel, i);
      out[ip] = scale * dpos;
      // On the negative side f(x) = g(|x|) with g sampled on mirrored nodes.
      out[mirror(ip)] = -scale * dneg;
    }
  }
  return out;
}

GridPtr build_weighted_grid(const DunklParameter& param, double X, int n) {
  if (n < 16) {
    std::ostringstream os;
    os << "grid needs at least 16 nodes, got " << n;
    throw Error(ErrorCode::BadResolution, os.str());
  }
  if (!(X > 0.0) || !std::isfinite(X)) throw Error(ErrorCode::PreconditionViolated, "truncation must be positive");
  const int q = std::min(16, n / 2);
  const int m = std::max(1, n / (2 * q));
  std::vector<double> edges(m + 1);
  for (int k = 0; k <= m; ++k) edges[k] = X * k / m;
  edges[m] = X;
  return std::make_shared<WeightedGrid>(param, std::move(edges), q);
}

GridPtr build_graded_grid(const DunklParameter& param, std::vector<double> edges, int q) {
  return std::make_shared<WeightedGrid>(param, std::move(edges), q);
}

SampledFunction::SampledFunction(GridPtr grid, std::vector<cplx> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw Error(ErrorCode::PreconditionViolated, "sampled function needs a grid");
  if (values_.size() != grid_->size())
    throw Error(ErrorCode::PreconditionViolated, "sample count does not match the grid");
  for (const auto& v : values_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw Error(ErrorCode::PreconditionViolated, "samples must be finite");
}

SampledFunction SampledFunction::from_profile(GridPtr grid, Profile profile) {
  std::vector<cplx> vals(grid->size());
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = profile(grid->nodes()[i]);
  SampledFunction f(grid, std::move(vals));
  const auto& tn = grid->tail_nodes();
  f.tail_values_.resize(tn.size());
  for (std::size_t i = 0; i < tn.size(); ++i) f.tail_values_[i] = profile(tn[i]);
  double core = 0.0, tail = 0.0;
  for (std::size_t i = 0; i < f.values_.size(); ++i) core += grid->weights()[i] * std::abs(f.values_[i]);
  for (std::size_t i = 0; i < tn.size(); ++i) tail += grid->tail_weights()[i] * std::abs(f.tail_values_[i]);
  f.tail_matters_ = tail > 1e-16 * core;
  f.profile_ = std::move(profile);
  return f;
}

SampledFunction SampledFunction::with_tail(GridPtr grid, std::vector<cplx> values, std::vector<cplx> tail_values) {
  if (tail_values.size() != grid->tail_nodes().size())
    throw Error(ErrorCode::PreconditionViolated, "sample count does not match the tail rule");
  SampledFunction f(grid, std::move(values));
  double core = 0.0, tail = 0.0;
  for (std::size_t i = 0; i < f.values_.size(); ++i) core += grid->weights()[i] * std::abs(f.values_[i]);
  for (std::size_t i = 0; i < tail_values.size(); ++i) tail += grid->tail_weights()[i] * std::abs(tail_values[i]);
  f.tail_matters_ = tail > 1e-16 * core;
  auto core_v = std::make_shared<const std::vector<cplx>>(f.values_);
  auto tail_v = std::make_shared<const std::vector<cplx>>(tail_values);
  const WeightedGrid* g = grid.get();
  f.profile_ = [grid, g, core_v, tail_v](double x) -> cplx {
    if (std::fabs(x) <= g->truncation()) return g->interpolate(*core_v, x);
    return g->interpolate_tail(*tail_v, x);
  };
  f.tail_values_ = std::move(tail_values);
  return f;
}

cplx SampledFunction::operator()(double x) const {
  if (profile_) return profile_(x);
  return grid_->interpolate(values_, x);
}

double SampledFunction::norm(double p) const {
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    for (const auto& v : tail_values_) m = std::max(m, std::abs(v));
    return m;
  }
  double s = 0.0;
  const auto& w = grid_->weights();
  for (std::size_t i = 0; i < values_.size(); ++i) s += w[i] * std::pow(std::abs(values_[i]), p);
  const auto& tw = grid_->tail_weights();
  for (std::size_t i = 0; i < tail_values_.size(); ++i) s += tw[i] * std::pow(std::abs(tail_values_[i]), p);
  return std::pow(s, 1.0 / p);
}

cplx inner_product(const SampledFunction& f, const SampledFunction& g) {
  if (&f.grid() != &g.grid() && f.grid().nodes() != g.grid().nodes())
    throw Error(ErrorCode::PreconditionViolated, "inner product needs a common grid");
  const auto& w = f.grid().weights();
  cplx s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * f.values()[i] * std::conj(g.values()[i]);
  if (!f.tail_values().empty() && !g.tail_values().empty()) {
    const auto& tw = f.grid().tail_weights();
    for (std::size_t i = 0; i < tw.size(); ++i) s += tw[i] * f.tail_values()[i] * std::conj(g.tail_values()[i]);
  }
  return s;
}

}  // namespace dunkl
