#pragma once

#include <cstddef>
#include <vector>

#include "jdiff/kernel.hpp"

namespace jdiff {

/// Uniformly sampled series: sample k is taken at t_start + k * ts.
struct SampledSignal {
  double t_start = 0.0;
  double ts = 1.0;
  std::vector<double> values;

  /// Throws std::invalid_argument unless ts > 0 and values is nonempty.
  void validate() const;
  std::size_t size() const { return values.size(); }
  double time_at(std::size_t k) const { return t_start + static_cast<double>(k) * ts; }
  /// Index of the sample at time t; throws std::out_of_range if t is off-grid or outside.
  std::size_t index_of(double t) const;
};

/// One estimate per feasible estimation instant, starting at t_first.
struct EstimateSeries {
  double t_first = 0.0;
  double ts = 1.0;
  std::vector<double> estimates;
  EstimatorConfig config;

  double time_at(std::size_t k) const { return t_first + static_cast<double>(k) * ts; }
};

/// Dot product of the kernel taps with the window anchored at sample t0_index:
/// tap i multiplies sample t0_index + beta * i. Throws std::out_of_range if the
/// window leaves the signal.
double estimate_at(const SampledSignal& signal, const DiscreteKernel& kernel, std::ptrdiff_t t0_index);

/// Slides the kernel over every feasible t0. The signal's sampling period must
/// equal T/m. Throws std::invalid_argument if the signal is shorter than m+1 samples.
EstimateSeries estimate_series(const SampledSignal& signal, const DiscreteKernel& kernel);
EstimateSeries estimate_series(const SampledSignal& signal, const EstimatorConfig& cfg);

}  // namespace jdiff
