#include "jdiff/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <variant>

#include "jdiff/polynomial.hpp"
#include "jdiff/specfun.hpp"

namespace jdiff {

namespace {

double factorial(int n) {
  double r = 1.0;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

void require_order(int n) {
  if (n < 1) throw std::invalid_argument("derivative order n must be >= 1");
}

// Coefficients in t of the mean function, if it is a polynomial.
std::vector<double> mean_polynomial(const NoiseModel& noise) {
  const auto& kind = noise.kind();
  if (const auto* p = std::get_if<noise::Poisson>(&kind)) return {0.0, p->nu};
  if (const auto* pm = std::get_if<noise::PolyMean>(&kind)) return poly::add(pm->coeffs, mean_polynomial(*pm->base));
  return {0.0};
}

// Intensity eta of a Wiener or Poisson base process; throws for anything else.
double eta_of(const NoiseModel& noise) {
  const auto& kind = noise.kind();
  if (const auto* w = std::get_if<noise::Wiener>(&kind)) return w->sigma2;
  if (const auto* p = std::get_if<noise::Poisson>(&kind)) return p->nu;
  if (const auto* pm = std::get_if<noise::PolyMean>(&kind)) return eta_of(*pm->base);
  throw std::invalid_argument("no continuous variance for " + noise.name() + " noise");
}

// Sample times t0 + beta*i*ts for i = 0..m, built from integer offsets so that
// equal offsets give bit-identical times.
std::vector<double> window_times(const DiscreteKernel& k, double anchor, long offset) {
  const double ts = k.config.sampling_period();
  const long step = static_cast<int>(k.config.beta);
  std::vector<double> t(k.taps.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    t[i] = anchor + ts * static_cast<double>(offset + step * static_cast<long>(i));
  return t;
}

void check_window(const NoiseModel& noise, const std::vector<double>& times) {
  if (noise.needs_nonnegative_time() && *std::min_element(times.begin(), times.end()) < 0.0)
    throw std::invalid_argument(noise.name() + " noise: estimation window reaches t < 0");
}

}  // namespace

double theoretical_delay(int n, double kappa, double mu, double T) {
  return T * (kappa + n + 1.0) / (mu + kappa + 2.0 * n + 2.0);
}

double affine_delay(int, double, double, double T, double xi) { return T * xi; }

double config_delay(const EstimatorConfig& cfg) {
  const auto c = cfg.normalized();
  return c.q > 0 ? affine_delay(c.n, c.kappa, c.mu, c.T, c.xi) : theoretical_delay(c.n, c.kappa, c.mu, c.T);
}

double optimal_xi(int n, int q, double kappa, double mu) {
  require_order(n);
  if (q < 0) throw std::invalid_argument("q must be >= 0");
  return smallest_root(JacobiIndex(q + 1, mu + n, kappa + n));
}

BiasBounds bias_bounds(int n, double kappa, double mu, double T, Direction beta, double inf_d, double sup_d) {
  if (inf_d > sup_d) throw std::invalid_argument("bias_bounds: inf_d > sup_d");
  BiasBounds b;
  b.c_factor = sign_of(beta) * theoretical_delay(n, kappa, mu, T);
  const double x = b.c_factor * inf_d;
  const double y = b.c_factor * sup_d;
  b.lower = std::min(x, y);
  b.upper = std::max(x, y);
  return b;
}

double i_integral(double mu, double kappa, int n) {
  require_order(n);
  const auto f = jacobi_terms(JacobiIndex(n, mu, kappa));
  const auto g = jacobi_terms(JacobiIndex(n - 1, mu + 1.0, kappa + 1.0));
  // (t-1)^a t^b = (-1)^a (1-t)^a t^b, so each product of summands is one Beta integral.
  double acc = 0.0;
  for (const auto& u : f) {
    for (const auto& v : g) {
      const int a = (n - u.s) + (n - 1 - v.s);
      const int b = u.s + v.s;
      const double sign = (a % 2 == 0) ? 1.0 : -1.0;
      acc += sign * u.coef * v.coef * beta_fn(2.0 * kappa + 3.0 + b, 2.0 * mu + 2.0 + a);
    }
  }
  return acc;
}

double i_integral_n1(double mu, double kappa) {
  return (mu + 1.0) * beta_fn(2.0 * mu + 2.0, 2.0 * kappa + 3.0) / (2.0 * mu + 2.0 * kappa + 5.0);
}

double i_integral_n2(double mu, double kappa) {
  const double k2 = kappa + 2.0, m2 = mu + 2.0;
  return 0.5 * (-k2 * k2 * (kappa + 1.0) * beta_fn(2.0 * mu + 5.0, 2.0 * kappa + 3.0) +
                k2 * m2 * (3.0 * kappa + 5.0) * beta_fn(2.0 * mu + 4.0, 2.0 * kappa + 4.0) -
                k2 * m2 * (3.0 * mu + 5.0) * beta_fn(2.0 * mu + 3.0, 2.0 * kappa + 5.0) +
                m2 * m2 * (mu + 1.0) * beta_fn(2.0 * mu + 2.0, 2.0 * kappa + 6.0));
}

double variance_minimal(int n, double kappa, double mu, double T, double eta) {
  require_order(n);
  if (!(T > 0.0)) throw std::invalid_argument("variance_minimal: T must be > 0");
  const double b = beta_fn(kappa + n + 1.0, mu + n + 1.0);
  return 2.0 * eta * factorial(n) * factorial(n - 1) / (std::pow(T, 2 * n - 1) * b * b) *
         i_integral(mu, kappa, n);
}

double variance_affine_n1(double kappa, double mu, double xi, double T, double eta) {
  if (!(T > 0.0)) throw std::invalid_argument("variance_affine_n1: T must be > 0");
  const double l1 = (kappa + 3.0) - (mu + kappa + 5.0) * xi;
  const double l0 = 1.0 - l1;
  const double s = 2.0 * eta / T;
  const double b1 = beta_fn(kappa + 2.0, mu + 3.0);
  const double b0 = beta_fn(kappa + 3.0, mu + 2.0);
  const double t1 = (mu + 2.0) / (2.0 * mu + 2.0 * kappa + 7.0) * beta_fn(2.0 * mu + 4.0, 2.0 * kappa + 3.0) / (b1 * b1);
  const double t0 = (mu + 1.0) / (2.0 * mu + 2.0 * kappa + 7.0) * beta_fn(2.0 * mu + 2.0, 2.0 * kappa + 5.0) / (b0 * b0);
  const double tx = beta_fn(2.0 * mu + 4.0, 2.0 * kappa + 4.0) / (b1 * b0);
  return s * (l1 * l1 * t1 + l0 * l0 * t0 + l0 * l1 * tx);
}

double poisson_mean(int n, double nu) {
  require_order(n);
  if (!(nu >= 0.0)) throw std::invalid_argument("poisson_mean: nu must be >= 0");
  return n == 1 ? nu : 0.0;
}

std::pair<double, double> chebyshev_band(double mean, double variance, double gamma) {
  if (!(variance >= 0.0)) throw std::invalid_argument("chebyshev_band: variance must be >= 0");
  if (!(gamma > 0.0)) throw std::invalid_argument("chebyshev_band: gamma must be > 0");
  const double h = gamma * std::sqrt(variance);
  return {mean - h, mean + h};
}

NoiseMomentReport discrete_moments(const DiscreteKernel& k, const NoiseModel& noise, double t0, double gamma) {
  const auto t = window_times(k, t0, 0);
  check_window(noise, t);
  const auto& w = k.taps;
  const std::size_t n = w.size();

  NoiseMomentReport r;
  r.regime = MomentRegime::discrete;
  r.gamma = gamma;
  for (std::size_t i = 0; i < n; ++i) r.mean += w[i] * noise.mean(t[i]);
  double var = 0.0;
  if (noise.independent_samples()) {
    for (std::size_t i = 0; i < n; ++i) var += w[i] * w[i] * noise.variance(t[i]);
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < n; ++j) row += w[j] * noise.covariance(t[i], t[j]);
      var += w[i] * row;
    }
  }
  r.variance = std::max(var, 0.0);
  std::tie(r.cheb_low, r.cheb_high) = chebyshev_band(r.mean, r.variance, gamma);
  return r;
}

double discrete_covariance(const DiscreteKernel& k1, const DiscreteKernel& k2, const NoiseModel& noise, double t0) {
  return discrete_covariance(k1, t0, k2, t0, noise);
}

double discrete_covariance(const DiscreteKernel& k1, double t01, const DiscreteKernel& k2, double t02,
                           const NoiseModel& noise) {
  if (k1.config.beta != k2.config.beta) throw std::invalid_argument("discrete_covariance: kernels differ in beta");
  const double ts = k1.config.sampling_period();
  if (std::abs(ts - k2.config.sampling_period()) > 1e-12 * ts)
    throw std::invalid_argument("discrete_covariance: kernels differ in sampling period");
  const double shift = (t02 - t01) / ts;
  const double d = std::round(shift);
  if (std::abs(shift - d) > 1e-6)
    throw std::invalid_argument("discrete_covariance: anchors are not on a common sample grid");

  const auto a = window_times(k1, t01, 0);
  const auto b = window_times(k2, t01, static_cast<long>(d));
  check_window(noise, a);
  check_window(noise, b);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < b.size(); ++j) row += k2.taps[j] * noise.covariance(a[i], b[j]);
    acc += k1.taps[i] * row;
  }
  return acc;
}

NoiseMomentReport continuous_moments(const EstimatorConfig& cfg, const NoiseModel& noise, double t0, double gamma) {
  const auto c = cfg.normalized();
  const auto p = make_kernel(c);
  const double bT = c.beta_T();

  NoiseMomentReport r;
  r.regime = MomentRegime::continuous;
  r.gamma = gamma;
  // E[e] = sum_k c_k integral p(tau) (t0 + beta T tau)^k dtau
  const auto mp = mean_polynomial(noise);
  for (std::size_t k = 0; k < mp.size(); ++k) {
    if (mp[k] == 0.0) continue;
    double inner = 0.0;
    for (std::size_t j = 0; j <= k; ++j)
      inner += binomial(static_cast<double>(k), static_cast<int>(j)) * std::pow(t0, static_cast<double>(k - j)) *
               std::pow(bT, static_cast<double>(j)) * wpoly_moment(p, static_cast<int>(j));
    r.mean += mp[k] * inner;
  }

  const double eta = eta_of(noise);
  if (c.q == 0) {
    r.variance = variance_minimal(c.n, c.kappa, c.mu, c.T, eta);
  } else if (c.n == 1 && c.q == 1) {
    r.variance = variance_affine_n1(c.kappa, c.mu, c.xi, c.T, eta);
  } else {
    throw std::invalid_argument("no closed-form continuous variance for n = " + std::to_string(c.n) +
                                ", q = " + std::to_string(c.q));
  }
  std::tie(r.cheb_low, r.cheb_high) = chebyshev_band(r.mean, r.variance, gamma);
  return r;
}

SurfaceQuantity parse_surface_quantity(const std::string& name) {
  if (name == "delay") return SurfaceQuantity::delay;
  if (name == "xi") return SurfaceQuantity::xi;
  if (name == "variance_minimal" || name == "variance-minimal") return SurfaceQuantity::variance_minimal;
  if (name == "variance_affine" || name == "variance-affine") return SurfaceQuantity::variance_affine;
  throw std::invalid_argument("unknown surface quantity '" + name + "'");
}

std::string to_string(SurfaceQuantity q) {
  switch (q) {
    case SurfaceQuantity::delay: return "delay";
    case SurfaceQuantity::xi: return "xi";
    case SurfaceQuantity::variance_minimal: return "variance_minimal";
    case SurfaceQuantity::variance_affine: return "variance_affine";
  }
  return "?";
}

std::vector<double> default_surface_grid() {
  std::vector<double> g(41);
  for (int i = 0; i < 41; ++i) g[i] = -1.0 + 0.05 * i;
  g[0] = -0.99;
  g[20] = 0.0;
  return g;
}

Surface sweep_surface(SurfaceQuantity quantity, const std::vector<double>& kappa_grid,
                      const std::vector<double>& mu_grid, const SurfaceParams& params) {
  Surface s{quantity, kappa_grid, mu_grid, std::vector<double>(kappa_grid.size() * mu_grid.size())};
  for (std::size_t i = 0; i < kappa_grid.size(); ++i) {
    for (std::size_t j = 0; j < mu_grid.size(); ++j) {
      const double kappa = kappa_grid[i];
      const double mu = mu_grid[j];
      if (!(kappa > -1.0) || !(mu > -1.0)) throw std::invalid_argument("sweep_surface: grid values must be > -1");
      double v = 0.0;
      switch (quantity) {
        case SurfaceQuantity::delay: v = theoretical_delay(params.n, kappa, mu, params.T); break;
        case SurfaceQuantity::xi: v = optimal_xi(params.n, 1, kappa, mu); break;
        case SurfaceQuantity::variance_minimal: v = variance_minimal(params.n, kappa, mu, params.T, params.eta); break;
        case SurfaceQuantity::variance_affine:
          v = variance_affine_n1(kappa, mu, optimal_xi(1, 1, kappa, mu), params.T, params.eta);
          break;
      }
      s.values[i * mu_grid.size() + j] = v;
    }
  }
  return s;
}

}  // namespace jdiff
