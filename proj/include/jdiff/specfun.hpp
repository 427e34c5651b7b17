#pragma once

#include <vector>

namespace jdiff {

/// Degree and exponents of a shifted Jacobi polynomial P_n^{mu,kappa} on [0,1],
/// orthogonal under the weight (1-t)^mu t^kappa.
class JacobiIndex {
 public:
  /// Throws std::invalid_argument unless degree >= 0, mu > -1 and kappa > -1.
  JacobiIndex(int degree, double mu, double kappa);

  int degree() const { return degree_; }
  double mu() const { return mu_; }
  double kappa() const { return kappa_; }

 private:
  int degree_;
  double mu_;
  double kappa_;
};

/// Gamma function for x > 0. Throws std::domain_error for x <= 0 or NaN and
/// std::overflow_error when the result is not representable.
double gamma_fn(double x);

/// Beta function B(a, b) = Gamma(a)Gamma(b)/Gamma(a+b) for a, b > 0.
double beta_fn(double a, double b);

/// Binomial coefficient with a real upper index, Gamma(a+1)/(s! Gamma(a-s+1)),
/// evaluated as the falling-factorial product a(a-1)...(a-s+1)/s!.
double binomial(double a, int s);

/// One summand of the explicit Jacobi sum: coef * (t-1)^(degree-s) * t^s.
struct JacobiTerm {
  double coef;
  int s;
};

/// The degree+1 summands of P_n^{mu,kappa}(t) = sum_s C(n+mu,s) C(n+kappa,n-s) (t-1)^(n-s) t^s.
std::vector<JacobiTerm> jacobi_terms(const JacobiIndex& idx);

/// Ascending monomial coefficients of P_n^{mu,kappa}.
std::vector<double> jacobi_coeffs(const JacobiIndex& idx);

/// P_n^{mu,kappa}(t); t is expected in [0,1] but any real is accepted.
double jacobi_eval(const JacobiIndex& idx, double t);

/// Squared weighted norm: integral over [0,1] of (1-t)^mu t^kappa P_n(t)^2.
double jacobi_norm_sq(const JacobiIndex& idx);

/// Exact integral over [0,1] of (1-t)^mu t^kappa P_n(t) t^j, expanded into Beta terms.
/// Vanishes for j < degree.
double jacobi_weighted_moment(const JacobiIndex& idx, int j);

/// Integral over [0,1] of (1-t)^a t^b Q(t) for a polynomial Q given by ascending
/// coefficients. Requires a > -1 and b > -1.
double weighted_poly_integral(double a, double b, const std::vector<double>& coeffs);

/// Smallest zero of P_n^{mu,kappa} in (0,1): sign-change bracketing on a
/// 1024-cell grid followed by bisection. Requires degree >= 1; throws
/// std::runtime_error if no sign change is found.
double smallest_root(const JacobiIndex& idx);

// Extended-precision forms used when building kernels, whose monomial
// coefficients grow large enough for double cancellation to matter.
long double beta_ld(long double a, long double b);
std::vector<long double> jacobi_coeffs_ld(const JacobiIndex& idx);
long double jacobi_eval_ld(const JacobiIndex& idx, long double t);
long double jacobi_norm_sq_ld(const JacobiIndex& idx);
long double weighted_poly_integral_ld(long double a, long double b, const std::vector<long double>& coeffs);

}  // namespace jdiff
