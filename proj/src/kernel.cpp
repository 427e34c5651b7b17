#include "jdiff/kernel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "jdiff/polynomial.hpp"
#include "jdiff/specfun.hpp"

namespace jdiff {

namespace {

[[noreturn]] void bad_config(const std::string& what) {
  throw std::invalid_argument("estimator config: " + what);
}

long double factorial(int n) {
  long double r = 1.0L;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

}  // namespace

void EstimatorConfig::validate() const {
  if (n < 1) bad_config("n must be >= 1");
  if (q < 0) bad_config("q must be >= 0");
  if (!(mu > -1.0)) bad_config("mu must be > -1");
  if (!(kappa > -1.0)) bad_config("kappa must be > -1");
  if (beta != Direction::causal && beta != Direction::anticausal) bad_config("beta must be +1 or -1");
  if (!(T > 0.0) || !std::isfinite(T)) bad_config("T must be > 0");
  if (q > 0 && !(xi >= 0.0 && xi <= 1.0)) bad_config("xi must lie in [0, 1]");
  if (!(F > 0.0 && F <= 1.0)) bad_config("F must lie in (0, 1]");
  if (m < n + q + 1) bad_config("m must be >= n + q + 1");
}

EstimatorConfig EstimatorConfig::normalized() const {
  validate();
  EstimatorConfig c = *this;
  if (c.q == 0) c.xi = 0.0;
  return c;
}

WeightedPoly::WeightedPoly(double mu_exp, double kappa_exp, std::vector<double> coeffs)
    : mu_exp_(mu_exp), kappa_exp_(kappa_exp), coeffs_(std::move(coeffs)) {
  poly::trim(coeffs_);
  precise_.assign(coeffs_.begin(), coeffs_.end());
}

WeightedPoly WeightedPoly::from_precise(double mu_exp, double kappa_exp, std::vector<long double> coeffs) {
  poly::trim(coeffs);
  WeightedPoly p(mu_exp, kappa_exp, std::vector<double>(coeffs.begin(), coeffs.end()));
  p.precise_ = std::move(coeffs);
  return p;
}

double wpoly_eval(const WeightedPoly& p, double t) {
  if (t < 0.0 || t > 1.0) throw std::domain_error("wpoly_eval: t outside [0, 1]");
  if (t == 0.0 && p.kappa_exp() < 0.0) throw std::domain_error("wpoly_eval: singular at t = 0");
  if (t == 1.0 && p.mu_exp() < 0.0) throw std::domain_error("wpoly_eval: singular at t = 1");
  return std::pow(1.0 - t, p.mu_exp()) * std::pow(t, p.kappa_exp()) *
         static_cast<double>(poly::eval(p.precise_coeffs(), static_cast<long double>(t)));
}

WeightedPoly wpoly_derivative(const WeightedPoly& p) {
  const long double a = p.mu_exp();
  const long double b = p.kappa_exp();
  const std::vector<long double> lin = {b, -(a + b)};          // b(1-t) - a t
  const std::vector<long double> quad = {0.0L, 1.0L, -1.0L};  // t(1-t)
  const auto& c = p.precise_coeffs();
  auto body = poly::add(poly::multiply(lin, c), poly::multiply(quad, poly::derivative(c)));
  return WeightedPoly::from_precise(p.mu_exp() - 1.0, p.kappa_exp() - 1.0, std::move(body));
}

double wpoly_moment(const WeightedPoly& p, int j) {
  if (j < 0) throw std::invalid_argument("wpoly_moment: j must be >= 0");
  return static_cast<double>(weighted_poly_integral_ld(p.mu_exp(), p.kappa_exp() + j, p.precise_coeffs()));
}

WeightedPoly minimal_kernel(const EstimatorConfig& cfg) {
  const auto c = cfg.normalized();
  if (c.q != 0) bad_config("minimal_kernel requires q == 0");
  const long double gamma = factorial(c.n) / beta_ld(c.kappa + c.n + 1.0L, c.mu + c.n + 1.0L);
  const long double scale = gamma / std::pow(static_cast<long double>(c.beta_T()), c.n);
  return WeightedPoly::from_precise(c.mu, c.kappa, poly::scale(jacobi_coeffs_ld(JacobiIndex(c.n, c.mu, c.kappa)), scale));
}

WeightedPoly affine_kernel(const EstimatorConfig& cfg) {
  const auto c = cfg.normalized();
  const double a = c.mu + c.n;
  const double b = c.kappa + c.n;
  // n integrations by parts turn <P_i, x^(n)(t0 + beta T tau)> into
  // (-1)^n/(beta T)^n * integral of (w^{a,b} P_i)^(n) x(t0 + beta T tau).
  const long double sign = (c.n % 2 == 0) ? 1.0L : -1.0L;
  const long double outer = sign / std::pow(static_cast<long double>(c.beta_T()), c.n);

  std::vector<long double> total = {0.0L};
  for (int i = 0; i <= c.q; ++i) {
    const JacobiIndex idx(i, a, b);
    auto term = WeightedPoly::from_precise(a, b, jacobi_coeffs_ld(idx));
    for (int k = 0; k < c.n; ++k) term = wpoly_derivative(term);
    const long double weight = outer * jacobi_eval_ld(idx, c.xi) / jacobi_norm_sq_ld(idx);
    total = poly::add(total, poly::scale(term.precise_coeffs(), weight));
  }
  return WeightedPoly::from_precise(c.mu, c.kappa, std::move(total));
}

WeightedPoly make_kernel(const EstimatorConfig& cfg) {
  return cfg.q == 0 ? minimal_kernel(cfg) : affine_kernel(cfg);
}

DiscreteKernel discretize(const WeightedPoly& p, const EstimatorConfig& cfg) {
  const auto c = cfg.normalized();
  const int m = c.m;
  const double inv_m = 1.0 / m;
  const double edge = c.F * inv_m;

  DiscreteKernel k{std::vector<double>(m + 1, 0.0), c};
  for (int i = 0; i <= m; ++i) {
    const double t = static_cast<double>(i) / m;
    const double w = (i == 0 || i == m) ? 0.5 : 1.0;
    double left = std::pow(t, p.kappa_exp());         // tau^kappa
    double right = std::pow(1.0 - t, p.mu_exp());     // (1 - tau)^mu
    if (i == 0 && p.kappa_exp() < 0.0) {
      if (c.endpoint == EndpointRule::suppress) continue;
      left = std::pow(edge, p.kappa_exp());
    }
    if (i == m && p.mu_exp() < 0.0) {
      if (c.endpoint == EndpointRule::suppress) continue;
      right = std::pow(edge, p.mu_exp());
    }
    k.taps[i] = w * inv_m * left * right * static_cast<double>(poly::eval(p.precise_coeffs(), static_cast<long double>(t)));
  }
  return k;
}

DiscreteKernel build_kernel(const EstimatorConfig& cfg) { return discretize(make_kernel(cfg), cfg); }

}  // namespace jdiff
