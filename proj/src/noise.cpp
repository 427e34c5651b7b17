#include "jdiff/noise.hpp"

#include <algorithm>
#include <stdexcept>

#include "jdiff/polynomial.hpp"

namespace jdiff {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_nonnegative(double v, const char* what) {
  if (!(v >= 0.0)) throw std::invalid_argument(std::string("noise model: ") + what + " must be >= 0");
}

}  // namespace

NoiseModel NoiseModel::white_gaussian(double sigma2) {
  require_nonnegative(sigma2, "sigma2");
  return NoiseModel(noise::WhiteGaussian{sigma2});
}

NoiseModel NoiseModel::wiener(double sigma2) {
  require_nonnegative(sigma2, "sigma2");
  return NoiseModel(noise::Wiener{sigma2});
}

NoiseModel NoiseModel::poisson(double nu) {
  require_nonnegative(nu, "nu");
  return NoiseModel(noise::Poisson{nu});
}

NoiseModel NoiseModel::poly_mean(std::vector<double> coeffs, NoiseModel base) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  return NoiseModel(noise::PolyMean{std::move(coeffs), std::make_shared<const NoiseModel>(std::move(base))});
}

std::string NoiseModel::name() const {
  return std::visit(overloaded{
                        [](const noise::WhiteGaussian&) -> std::string { return "white"; },
                        [](const noise::Wiener&) -> std::string { return "wiener"; },
                        [](const noise::Poisson&) -> std::string { return "poisson"; },
                        [](const noise::PolyMean& p) -> std::string { return "polymean+" + p.base->name(); },
                    },
                    kind_);
}

double NoiseModel::mean(double t) const {
  return std::visit(overloaded{
                        [](const noise::WhiteGaussian&) { return 0.0; },
                        [](const noise::Wiener&) { return 0.0; },
                        [t](const noise::Poisson& p) { return p.nu * t; },
                        [t](const noise::PolyMean& p) { return poly::eval(p.coeffs, t) + p.base->mean(t); },
                    },
                    kind_);
}

double NoiseModel::variance(double t) const { return covariance(t, t); }

double NoiseModel::covariance(double s, double t) const {
  return std::visit(overloaded{
                        [s, t](const noise::WhiteGaussian& w) { return s == t ? w.sigma2 : 0.0; },
                        [s, t](const noise::Wiener& w) { return w.sigma2 * std::min(s, t); },
                        [s, t](const noise::Poisson& p) { return p.nu * std::min(s, t); },
                        [s, t](const noise::PolyMean& p) { return p.base->covariance(s, t); },
                    },
                    kind_);
}

bool NoiseModel::independent_samples() const {
  return std::visit(overloaded{
                        [](const noise::WhiteGaussian&) { return true; },
                        [](const noise::Wiener&) { return false; },
                        [](const noise::Poisson&) { return false; },
                        [](const noise::PolyMean& p) { return p.base->independent_samples(); },
                    },
                    kind_);
}

bool NoiseModel::needs_nonnegative_time() const {
  return std::visit(overloaded{
                        [](const noise::WhiteGaussian&) { return false; },
                        [](const noise::Wiener&) { return true; },
                        [](const noise::Poisson&) { return true; },
                        [](const noise::PolyMean& p) { return p.base->needs_nonnegative_time(); },
                    },
                    kind_);
}

}  // namespace jdiff
