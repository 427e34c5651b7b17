#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "jdiff/analysis.hpp"
#include "jdiff/estimator.hpp"
#include "jdiff/experiment.hpp"
#include "jdiff/kernel.hpp"
#include "jdiff/stochastic.hpp"

namespace jdiff {

nlohmann::ordered_json config_json(const EstimatorConfig& cfg);
nlohmann::ordered_json seed_json(const RngSeed& seed);
nlohmann::ordered_json noise_json(const NoiseModel& noise);

/// Keys: total_error, snr_db, delay_s, band_low, band_high, config, seed, then run details.
nlohmann::ordered_json report_json(const RunReport& r);

struct McReport {
  EstimatorConfig config;
  std::string noise;
  double t0 = 0.0;
  RngSeed seed;
  double gamma = 2.0;
  McResult mc;
  NoiseMomentReport discrete;
  std::optional<NoiseMomentReport> continuous;  // when a closed form exists
  double inside_discrete = 0.0;                 // fraction of trials inside each band
  std::optional<double> inside_continuous;
};

/// Monte Carlo noise errors with the discrete band and, where available, the
/// closed-form continuous band.
McReport mc_report(const EstimatorConfig& cfg, const NoiseModel& model, double t0, int trials, double gamma,
                   RngSeed seed);

/// band_low/band_high are the continuous band when present, else the discrete one.
nlohmann::ordered_json report_json(const McReport& r);

/// Fraction of values strictly inside (lo, hi).
double fraction_inside(const std::vector<double>& values, double lo, double hi);

void write_kernel_csv(std::ostream& os, const DiscreteKernel& k);
void write_surface_csv(std::ostream& os, const Surface& s);
void write_series_csv(std::ostream& os, const EstimateSeries& s);
void write_signal_csv(std::ostream& os, const SampledSignal& s);
/// t, truth, estimate, noiseless, noise_error
void write_run_csv(std::ostream& os, const RunReport& r);

/// Side-by-side table of total error, estimate SNR and delay for a group of runs.
std::string render_table(const std::vector<RunReport>& runs);

}  // namespace jdiff
