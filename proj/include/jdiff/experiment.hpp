#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "jdiff/estimator.hpp"
#include "jdiff/kernel.hpp"
#include "jdiff/noise.hpp"
#include "jdiff/stochastic.hpp"

namespace jdiff {

enum class SignalKind { expsin, sin2t, polynomial, csv };

struct SignalSpec {
  SignalKind kind = SignalKind::expsin;
  std::vector<double> coeffs;  // polynomial, ascending
  std::string path;            // csv: columns t, value, derivative (derivative of the order estimated)
  double ts = 1.0 / 200.0;     // polynomial only
  std::size_t count = 1001;    // polynomial only
};

struct ExperimentSpec {
  std::string name = "run";
  SignalSpec signal;
  std::optional<NoiseModel> noise;
  std::optional<double> target_snr_db;  // scale the noise path to this SNR; unscaled if empty
  EstimatorConfig estimator;
  // Metrics window in seconds; infinite ends mean the first / last estimate.
  double t_lo = -std::numeric_limits<double>::infinity();
  double t_hi = std::numeric_limits<double>::infinity();
  RngSeed seed;
  double gamma = 2.0;
};

/// A sampled clean signal with the exact n-th derivative available at the sample times.
struct TestSignal {
  SampledSignal x;
  std::function<double(double, int)> derivative;  // (t, order)
};

TestSignal make_signal(const SignalSpec& spec);

struct RunReport {
  std::string name;
  EstimatorConfig config;
  RngSeed seed;
  double total_error = 0.0;          // Ts * sum e^2 over the metrics window
  std::optional<double> snr_db;      // estimate power over noise-error power, empty without noise
  std::optional<double> input_snr_db;
  double noise_scale = 0.0;
  double delay_s = 0.0;
  double gamma = 2.0;
  std::optional<double> band_low;    // discrete band of the noise error at t_lo
  std::optional<double> band_high;
  double t_lo = 0.0;
  double t_hi = 0.0;
  bool window_clamped = false;

  std::vector<double> t;
  std::vector<double> truth;
  std::vector<double> estimate;
  std::vector<double> noiseless;
  std::vector<double> noise_error;
};

/// Generates signal and calibrated noise, runs the estimator with and without
/// noise, and scores the metrics window. t_hi past the last estimate is clamped.
RunReport run_experiment(const ExperimentSpec& spec);

/// Integer-parameter and extended-parameter specs of one table column pair:
/// table1-a, table1-b, table2-a, table2-b.
std::vector<ExperimentSpec> preset(const std::string& name, std::uint64_t seed = 1);
std::vector<std::string> preset_names();

/// Parses a flat key = value file; '#' starts a comment.
ExperimentSpec load_spec_file(const std::string& path);
ExperimentSpec parse_spec(const std::string& text);

/// Applies one key = value setting to the spec.
void apply_setting(ExperimentSpec& spec, const std::string& key, const std::string& value);

/// Seconds, or a multiple of the sampling period written like "50Ts".
double parse_time(const std::string& text, double ts);

}  // namespace jdiff
