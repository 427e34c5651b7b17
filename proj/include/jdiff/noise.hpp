#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace jdiff {

class NoiseModel;

namespace noise {

/// iid N(0, sigma2) samples.
struct WhiteGaussian {
  double sigma2 = 1.0;
};

/// W(0) = 0, E W(t) = 0, Cov[W(s), W(t)] = sigma2 min(s, t).
struct Wiener {
  double sigma2 = 1.0;
};

/// N(0) = 0, E N(t) = nu t, Cov[N(s), N(t)] = nu min(s, t).
struct Poisson {
  double nu = 1.0;
};

/// Base process plus the deterministic polynomial sum_i coeffs[i] t^i.
struct PolyMean {
  std::vector<double> coeffs;
  std::shared_ptr<const NoiseModel> base;
};

}  // namespace noise

/// Second-order description of an additive noise process, defined for t >= 0
/// (white noise for any t).
class NoiseModel {
 public:
  using Variant = std::variant<noise::WhiteGaussian, noise::Wiener, noise::Poisson, noise::PolyMean>;

  static NoiseModel white_gaussian(double sigma2);
  static NoiseModel wiener(double sigma2);
  static NoiseModel poisson(double nu);
  static NoiseModel poly_mean(std::vector<double> coeffs, NoiseModel base);

  const Variant& kind() const { return kind_; }
  std::string name() const;

  double mean(double t) const;
  double variance(double t) const;
  /// Covariance of the process at times s and t. White noise treats only
  /// bit-identical times as the same sample.
  double covariance(double s, double t) const;

  /// True if the process has independent values at distinct times.
  bool independent_samples() const;
  /// True if the process is only defined for t >= 0.
  bool needs_nonnegative_time() const;

 private:
  explicit NoiseModel(Variant kind) : kind_(std::move(kind)) {}
  Variant kind_;
};

}  // namespace jdiff
