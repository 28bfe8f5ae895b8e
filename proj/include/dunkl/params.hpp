#pragma once

namespace dunkl {

/// The Dunkl parameter together with every normalising constant the
/// kernels need. Construct through make_parameter.
struct DunklParameter {
  double lambda = 0.0;
  double c_lambda = 0.0;      ///< 1 / (2^{λ+1/2} Γ(λ+1/2)), the measure constant
  double c_prime = 0.0;       ///< Γ(λ+1/2) / (Γ(λ) √π), angular mass normaliser
  double c_dprime = 0.0;      ///< 2^{3/2-λ} Γ(λ+1/2)^2 / (√π Γ(λ))
  double m_lambda = 0.0;      ///< 2^{λ+1/2} Γ(λ+1) / √π, Poisson profile constant
  double p0 = 0.0;            ///< 2λ / (2λ+1)
  double gamma_lambda = 0.0;  ///< 1 / (4λ+2)
  double p_critical = 0.0;    ///< (4λ+2) / (4λ+3)
};

/// Throws Error(NonPositiveLambda) unless lambda > 0.
DunklParameter make_parameter(double lambda);

}  // namespace dunkl
