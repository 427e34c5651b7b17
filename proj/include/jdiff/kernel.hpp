#pragma once

#include <vector>

namespace jdiff {

/// Which side of t0 the estimation window lies on.
enum class Direction : int {
  causal = -1,     // window [t0 - T, t0]
  anticausal = 1,  // window [t0, t0 + T]
};

inline double sign_of(Direction d) { return static_cast<double>(static_cast<int>(d)); }

/// How discretize() treats a kernel that is singular at a window endpoint.
enum class EndpointRule {
  regularize,  // evaluate the singular power factor at F/m instead of 0
  suppress,    // drop the endpoint sample (weight 0)
};

/// Parameters of one Jacobi derivative estimator.
struct EstimatorConfig {
  int n = 1;          // derivative order
  int q = 0;          // extra series terms; 0 gives the minimal estimator
  double mu = 0.0;    // exponent of (1 - tau)
  double kappa = 0.0; // exponent of tau
  Direction beta = Direction::causal;
  double T = 1.0;     // window length in seconds
  double xi = 0.0;    // affine evaluation point, unused when q == 0
  double F = 0.1;     // endpoint regularization factor in (0, 1]
  int m = 20;         // number of sampling intervals in the window
  EndpointRule endpoint = EndpointRule::regularize;

  /// Throws std::invalid_argument when any field is out of range.
  void validate() const;

  /// Copy with xi forced to 0 for minimal estimators; validates first.
  EstimatorConfig normalized() const;

  double beta_T() const { return sign_of(beta) * T; }
  double sampling_period() const { return T / m; }
  bool is_affine() const { return q > 0; }
};

/// (1 - tau)^mu_exp * tau^kappa_exp * Q(tau), Q in ascending coefficients.
class WeightedPoly {
 public:
  WeightedPoly(double mu_exp, double kappa_exp, std::vector<double> coeffs);
  /// Keeps extended-precision coefficients; coeffs() holds them rounded to double.
  static WeightedPoly from_precise(double mu_exp, double kappa_exp, std::vector<long double> coeffs);

  double mu_exp() const { return mu_exp_; }
  double kappa_exp() const { return kappa_exp_; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  const std::vector<long double>& precise_coeffs() const { return precise_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  /// True when both exponents exceed -1, i.e. the function is integrable on [0,1].
  bool integrable() const { return mu_exp_ > -1.0 && kappa_exp_ > -1.0; }

 private:
  double mu_exp_;
  double kappa_exp_;
  std::vector<double> coeffs_;
  std::vector<long double> precise_;
};

/// Evaluates p at t in [0,1]. Throws std::domain_error at t = 0 with kappa_exp < 0
/// or at t = 1 with mu_exp < 0.
double wpoly_eval(const WeightedPoly& p, double t);

/// Exact derivative: d/dt[w^{a,b} Q] = w^{a-1,b-1} [(b(1-t) - a t) Q + t(1-t) Q'].
WeightedPoly wpoly_derivative(const WeightedPoly& p);

/// Exact integral over [0,1] of t^j p(t) via Beta functions.
double wpoly_moment(const WeightedPoly& p, int j);

/// Minimal estimator kernel gamma/(beta T)^n w^{mu,kappa} P_n^{mu,kappa}, gamma = n!/B(kappa+n+1, mu+n+1).
WeightedPoly minimal_kernel(const EstimatorConfig& cfg);

/// Affine estimator kernel: the first q+1 terms of the Jacobi series of x^(n),
/// evaluated at xi and moved onto the signal by n integrations by parts.
WeightedPoly affine_kernel(const EstimatorConfig& cfg);

/// minimal_kernel for q == 0, affine_kernel otherwise.
WeightedPoly make_kernel(const EstimatorConfig& cfg);

/// Quadrature taps: tap i multiplies y(t0 + beta T i/m).
struct DiscreteKernel {
  std::vector<double> taps;
  EstimatorConfig config;

  int m() const { return static_cast<int>(taps.size()) - 1; }
  double abscissa(int i) const { return static_cast<double>(i) / m(); }
};

/// Composite trapezoid discretization of p on m+1 nodes, with the endpoint rule
/// of cfg applied to negative exponents.
DiscreteKernel discretize(const WeightedPoly& p, const EstimatorConfig& cfg);

/// discretize(make_kernel(cfg), cfg).
DiscreteKernel build_kernel(const EstimatorConfig& cfg);

}  // namespace jdiff
