#include "dunkl/params.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "dunkl/error.hpp"

namespace dunkl {

DunklParameter make_parameter(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    std::ostringstream os;
    os << "lambda must be positive and finite, got " << lambda;
    throw Error(ErrorCode::NonPositiveLambda, os.str());
  }
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  // Work in log space so large lambda does not overflow the gamma functions.
  const double lg_half = std::lgamma(lambda + 0.5);
  const double lg_lam = std::lgamma(lambda);
  const double ln2 = std::numbers::ln2;

  DunklParameter p;
  p.lambda = lambda;
  p.c_lambda = std::exp(-(lambda + 0.5) * ln2 - lg_half);
  p.c_prime = std::exp(lg_half - lg_lam) / sqrt_pi;
  p.c_dprime = std::exp((1.5 - lambda) * ln2 + 2.0 * lg_half - lg_lam) / sqrt_pi;
  p.m_lambda = std::exp((lambda + 0.5) * ln2 + std::lgamma(lambda + 1.0)) / sqrt_pi;
  p.p0 = 2.0 * lambda / (2.0 * lambda + 1.0);
  p.gamma_lambda = 1.0 / (4.0 * lambda + 2.0);
  p.p_critical = (4.0 * lambda + 2.0) / (4.0 * lambda + 3.0);
  return p;
}

}  // namespace dunkl
