#include "jdiff/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <string>


namespace jdiff {

JacobiIndex::JacobiIndex(int degree, double mu, double kappa)
    : degree_(degree), mu_(mu), kappa_(kappa) {
  if (degree < 0) throw std::invalid_argument("jacobi degree must be >= 0");
  if (!(mu > -1.0) || !(kappa > -1.0))
    throw std::invalid_argument("jacobi exponents must satisfy mu > -1 and kappa > -1 (got mu=" +
                                std::to_string(mu) + ", kappa=" + std::to_string(kappa) + ")");
}

double gamma_fn(double x) {
  if (!(x > 0.0)) throw std::domain_error("gamma_fn: argument must be > 0");
  const double g = std::tgamma(x);
  if (!std::isfinite(g)) throw std::overflow_error("gamma_fn: result overflows double");
  return g;
}

double beta_fn(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("beta_fn: arguments must be > 0");
  // The direct ratio is exact to a few ulps while every factor stays finite.
  if (a + b < 170.0) return std::tgamma(a) * std::tgamma(b) / std::tgamma(a + b);
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

namespace {

long double binomial_ld(long double a, int s) {
  if (s < 0) return 0.0L;
  long double r = 1.0L;
  for (int j = 0; j < s; ++j) r *= (a - j) / (j + 1);
  return r;
}

}  // namespace

double binomial(double a, int s) { return static_cast<double>(binomial_ld(a, s)); }

long double beta_ld(long double a, long double b) {
  if (!(a > 0.0L) || !(b > 0.0L)) throw std::domain_error("beta_fn: arguments must be > 0");
  if (a + b < 1000.0L) return std::tgamma(a) * std::tgamma(b) / std::tgamma(a + b);
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

std::vector<JacobiTerm> jacobi_terms(const JacobiIndex& idx) {
  const int n = idx.degree();
  std::vector<JacobiTerm> terms;
  terms.reserve(n + 1);
  for (int s = 0; s <= n; ++s)
    terms.push_back({binomial(n + idx.mu(), s) * binomial(n + idx.kappa(), n - s), s});
  return terms;
}

std::vector<long double> jacobi_coeffs_ld(const JacobiIndex& idx) {
  const int n = idx.degree();
  std::vector<long double> c(n + 1, 0.0L);
  for (int s = 0; s <= n; ++s) {
    const long double coef = binomial_ld(n + static_cast<long double>(idx.mu()), s) *
                             binomial_ld(n + static_cast<long double>(idx.kappa()), n - s);
    // (t-1)^(n-s) = sum_k C(n-s,k) t^k (-1)^(n-s-k)
    const int e = n - s;
    for (int k = 0; k <= e; ++k) {
      const long double sign = ((e - k) % 2 == 0) ? 1.0L : -1.0L;
      c[s + k] += coef * binomial_ld(e, k) * sign;
    }
  }
  return c;
}

std::vector<double> jacobi_coeffs(const JacobiIndex& idx) {
  const auto c = jacobi_coeffs_ld(idx);
  return std::vector<double>(c.begin(), c.end());
}

long double jacobi_eval_ld(const JacobiIndex& idx, long double t) {
  const int n = idx.degree();
  long double sum = 0.0L;
  for (int s = 0; s <= n; ++s) {
    const long double coef = binomial_ld(n + static_cast<long double>(idx.mu()), s) *
                             binomial_ld(n + static_cast<long double>(idx.kappa()), n - s);
    sum += coef * std::pow(t - 1.0L, n - s) * std::pow(t, s);
  }
  return sum;
}

double jacobi_eval(const JacobiIndex& idx, double t) { return static_cast<double>(jacobi_eval_ld(idx, t)); }

long double jacobi_norm_sq_ld(const JacobiIndex& idx) {
  const int i = idx.degree();
  const long double a = idx.mu();
  const long double b = idx.kappa();
  if (i == 0) return beta_ld(b + 1.0L, a + 1.0L);
  const long double log_ratio = std::lgamma(i + a + 1.0L) + std::lgamma(i + b + 1.0L) -
                                std::lgamma(i + a + b + 1.0L) - std::lgamma(i + 1.0L);
  return std::exp(log_ratio) / (2.0L * i + a + b + 1.0L);
}

double jacobi_norm_sq(const JacobiIndex& idx) { return static_cast<double>(jacobi_norm_sq_ld(idx)); }

double jacobi_weighted_moment(const JacobiIndex& idx, int j) {
  if (j < 0) throw std::invalid_argument("moment order must be >= 0");
  const int n = idx.degree();
  if (j < n) return 0.0;
  // (1-t)^mu t^kappa (t-1)^(n-s) t^(s+j) integrates to (-1)^(n-s) B(kappa+s+j+1, mu+n-s+1)
  long double sum = 0.0L;
  for (int s = 0; s <= n; ++s) {
    const long double coef = binomial_ld(n + static_cast<long double>(idx.mu()), s) *
                             binomial_ld(n + static_cast<long double>(idx.kappa()), n - s);
    const long double sign = ((n - s) % 2 == 0) ? 1.0L : -1.0L;
    sum += sign * coef * beta_ld(idx.kappa() + s + j + 1.0L, idx.mu() + n - s + 1.0L);
  }
  return static_cast<double>(sum);
}

long double weighted_poly_integral_ld(long double a, long double b, const std::vector<long double>& coeffs) {
  if (!(a > -1.0L) || !(b > -1.0L))
    throw std::domain_error("weighted_poly_integral: weight is not integrable");
  long double sum = 0.0L;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (coeffs[k] != 0.0L) sum += coeffs[k] * beta_ld(b + static_cast<long double>(k) + 1.0L, a + 1.0L);
  return sum;
}

double weighted_poly_integral(double a, double b, const std::vector<double>& coeffs) {
  return static_cast<double>(weighted_poly_integral_ld(a, b, std::vector<long double>(coeffs.begin(), coeffs.end())));
}

double smallest_root(const JacobiIndex& idx) {
  if (idx.degree() < 1) throw std::invalid_argument("smallest_root: degree must be >= 1");
  constexpr int kCells = 1024;
  const auto f = [&](double t) { return jacobi_eval(idx, t); };

  double lo = 0.0;
  double flo = f(lo);
  for (int k = 1; k <= kCells; ++k) {
    const double hi = static_cast<double>(k) / kCells;
    const double fhi = f(hi);
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) != (fhi < 0.0)) {
      double a = lo, b = hi, fa = flo;
      while (b - a > 1e-13) {
        const double mid = 0.5 * (a + b);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fa < 0.0) == (fm < 0.0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      return 0.5 * (a + b);
    }
    lo = hi;
    flo = fhi;
  }
  throw std::runtime_error("smallest_root: no sign change found in (0,1)");
}

}  // namespace jdiff
