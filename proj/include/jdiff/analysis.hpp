#pragma once

#include <string>
#include <utility>
#include <vector>

#include "jdiff/kernel.hpp"
#include "jdiff/noise.hpp"

namespace jdiff {

/// Delay magnitude T(kappa+n+1)/(mu+kappa+2n+2) of a minimal estimator.
double theoretical_delay(int n, double kappa, double mu, double T);

/// Delay T*xi of an affine estimator.
double affine_delay(int n, double kappa, double mu, double T, double xi);

/// Delay of any configuration: affine_delay when q > 0, theoretical_delay otherwise.
double config_delay(const EstimatorConfig& cfg);

/// Smallest root of P_{q+1}^{mu+n,kappa+n}, the minimal-delay affine evaluation point.
double optimal_xi(int n, int q, double kappa, double mu);

struct BiasBounds {
  double lower = 0.0;
  double upper = 0.0;
  double c_factor = 0.0;  // beta T (kappa+n+1)/(mu+kappa+2n+2), seconds
};

/// Bounds on the truncation error from the extrema of x^(n+1) over the window.
BiasBounds bias_bounds(int n, double kappa, double mu, double T, Direction beta, double inf_d, double sup_d);

/// Integral over [0,1] of (1-t)^(2mu+1) t^(2kappa+2) P_n^{mu,kappa} P_{n-1}^{mu+1,kappa+1},
/// by termwise Beta expansion of both factors.
double i_integral(double mu, double kappa, int n);
double i_integral_n1(double mu, double kappa);
double i_integral_n2(double mu, double kappa);

/// Continuous noise-error variance of a minimal estimator under Wiener (eta = sigma2)
/// or Poisson (eta = nu) noise.
double variance_minimal(int n, double kappa, double mu, double T, double eta);

/// Same for the n = 1, q = 1 affine estimator evaluated at xi.
double variance_affine_n1(double kappa, double mu, double xi, double T, double eta);

/// Continuous noise-error mean under Poisson noise of intensity nu.
double poisson_mean(int n, double nu);

enum class MomentRegime { continuous, discrete };

struct NoiseMomentReport {
  double mean = 0.0;
  double variance = 0.0;
  double cheb_low = 0.0;
  double cheb_high = 0.0;
  double gamma = 2.0;
  MomentRegime regime = MomentRegime::discrete;
};

/// (mean - gamma sqrt(variance), mean + gamma sqrt(variance)).
std::pair<double, double> chebyshev_band(double mean, double variance, double gamma);

/// Exact mean and variance of sum_i taps_i noise(t0 + beta i ts).
NoiseMomentReport discrete_moments(const DiscreteKernel& k, const NoiseModel& noise, double t0,
                                   double gamma = 2.0);

/// Covariance of the noise errors of two kernels sharing beta and sampling period.
/// Window anchors must differ by a whole number of samples.
double discrete_covariance(const DiscreteKernel& k1, const DiscreteKernel& k2, const NoiseModel& noise,
                           double t0);
double discrete_covariance(const DiscreteKernel& k1, double t01, const DiscreteKernel& k2, double t02,
                           const NoiseModel& noise);

/// Closed-form continuous moments. The mean is exact for any polynomial mean
/// function; the variance is available for Wiener and Poisson noise with a
/// minimal estimator or the n = 1, q = 1 affine estimator. Throws
/// std::invalid_argument otherwise.
NoiseMomentReport continuous_moments(const EstimatorConfig& cfg, const NoiseModel& noise, double t0,
                                     double gamma = 2.0);

enum class SurfaceQuantity { delay, xi, variance_minimal, variance_affine };

SurfaceQuantity parse_surface_quantity(const std::string& name);
std::string to_string(SurfaceQuantity q);

struct SurfaceParams {
  int n = 1;
  double T = 1.0;
  double eta = 1.0;
};

struct Surface {
  SurfaceQuantity quantity = SurfaceQuantity::delay;
  std::vector<double> kappa;   // rows
  std::vector<double> mu;      // columns
  std::vector<double> values;  // row-major, values[i * mu.size() + j]

  double at(std::size_t i, std::size_t j) const { return values[i * mu.size() + j]; }
};

/// 41 points on (-1, 1]: the uniform grid on [-1, 1] with -1 replaced by -0.99.
std::vector<double> default_surface_grid();

/// Delay cells use theoretical_delay at params.T; variance_affine uses optimal_xi(1, 1, kappa, mu).
Surface sweep_surface(SurfaceQuantity quantity, const std::vector<double>& kappa_grid,
                      const std::vector<double>& mu_grid, const SurfaceParams& params = {});

}  // namespace jdiff
