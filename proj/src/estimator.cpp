#include "jdiff/estimator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace jdiff {

namespace {

void check_sampling(const SampledSignal& signal, const EstimatorConfig& cfg) {
  const double expected = cfg.sampling_period();
  if (std::abs(signal.ts - expected) > 1e-9 * expected)
    throw std::invalid_argument("signal sampling period " + std::to_string(signal.ts) +
                                " does not match T/m = " + std::to_string(expected));
}

}  // namespace

void SampledSignal::validate() const {
  if (!(ts > 0.0)) throw std::invalid_argument("signal: ts must be > 0");
  if (values.empty()) throw std::invalid_argument("signal: no samples");
}

std::size_t SampledSignal::index_of(double t) const {
  const double pos = (t - t_start) / ts;
  const double k = std::round(pos);
  if (std::abs(pos - k) > 1e-6 || k < 0.0 || k >= static_cast<double>(values.size()))
    throw std::out_of_range("time " + std::to_string(t) + " is not a sample of the signal");
  return static_cast<std::size_t>(k);
}

double estimate_at(const SampledSignal& signal, const DiscreteKernel& kernel, std::ptrdiff_t t0_index) {
  const std::ptrdiff_t m = kernel.m();
  const std::ptrdiff_t step = static_cast<int>(kernel.config.beta);
  const std::ptrdiff_t last = t0_index + step * m;
  const auto n = static_cast<std::ptrdiff_t>(signal.size());
  if (t0_index < 0 || t0_index >= n || last < 0 || last >= n)
    throw std::out_of_range("estimation window around sample " + std::to_string(t0_index) +
                            " leaves the signal");
  double acc = 0.0;
  for (std::ptrdiff_t i = 0; i <= m; ++i) acc += kernel.taps[i] * signal.values[t0_index + step * i];
  return acc;
}

EstimateSeries estimate_series(const SampledSignal& signal, const DiscreteKernel& kernel) {
  signal.validate();
  check_sampling(signal, kernel.config);
  const auto m = static_cast<std::size_t>(kernel.m());
  if (signal.size() < m + 1)
    throw std::invalid_argument("signal too short: need at least " + std::to_string(m + 1) +
                                " samples, got " + std::to_string(signal.size()));

  const bool causal = kernel.config.beta == Direction::causal;
  const std::size_t first = causal ? m : 0;
  const std::size_t count = signal.size() - m;

  EstimateSeries out;
  out.t_first = signal.time_at(first);
  out.ts = signal.ts;
  out.config = kernel.config;
  out.estimates.resize(count);
  for (std::size_t k = 0; k < count; ++k)
    out.estimates[k] = estimate_at(signal, kernel, static_cast<std::ptrdiff_t>(first + k));
  return out;
}

EstimateSeries estimate_series(const SampledSignal& signal, const EstimatorConfig& cfg) {
  return estimate_series(signal, build_kernel(cfg));
}

}  // namespace jdiff
