#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "jdiff/estimator.hpp"
#include "jdiff/kernel.hpp"
#include "jdiff/noise.hpp"

namespace jdiff {

/// Identifies one independent random stream.
struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// Deterministic generator for one (seed, stream, substream) triple.
class Rng {
 public:
  explicit Rng(RngSeed s, std::uint64_t substream = 0);

  /// Uniform on the open interval (0, 1).
  double uniform();
  double normal();
  /// Poisson variate by sequential inversion; large means are split into chunks.
  std::uint64_t poisson(double lambda);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Samples the process at t_start + k*ts for k < count. Wiener and Poisson
/// paths satisfy W(0) = N(0) = 0; a positive t_start draws the first value
/// from the process marginal.
SampledSignal gen_path(const NoiseModel& model, double ts, std::size_t count, RngSeed seed,
                       double t_start = 0.0);

/// 10 log10(sum (x + C w)^2 / sum (C w)^2).
double snr_db(const SampledSignal& x, const SampledSignal& noise, double scale);

/// Positive scale C with snr_db(x, noise, C) == target_db. Throws
/// std::runtime_error when no positive C attains the target.
double calibrate_snr(const SampledSignal& x, const SampledSignal& noise, double target_db);

struct McResult {
  double mean = 0.0;
  double variance = 0.0;     // unbiased
  double stderr_mean = 0.0;
  double stderr_var = 0.0;
  std::vector<double> samples;  // one noise error per trial, in trial order
};

/// Empirical moments of the kernel applied to the noise alone around t0.
/// Requires trials >= 100, and t0 >= T for a causal window on Wiener/Poisson noise.
McResult mc_noise_error(const EstimatorConfig& cfg, const NoiseModel& model, double t0, int trials,
                        RngSeed seed);

/// Summary statistics of a sample, as used by mc_noise_error.
McResult summarize(std::vector<double> samples);

}  // namespace jdiff
