#include "jdiff/stochastic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <variant>

#include "jdiff/polynomial.hpp"

namespace jdiff {

namespace {

constexpr double kPoissonChunk = 10.0;

std::uint32_t lo32(std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); }
std::uint32_t hi32(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }

std::seed_seq make_seq(RngSeed s, std::uint64_t sub) {
  return std::seed_seq{lo32(s.seed), hi32(s.seed), lo32(s.stream), hi32(s.stream), lo32(sub), hi32(sub)};
}

void fill_path(const NoiseModel& model, double t_start, double ts, Rng& rng, std::vector<double>& out) {
  const auto count = out.size();
  const auto& kind = model.kind();
  if (const auto* w = std::get_if<noise::WhiteGaussian>(&kind)) {
    const double sd = std::sqrt(w->sigma2);
    for (auto& v : out) v = sd * rng.normal();
  } else if (const auto* w = std::get_if<noise::Wiener>(&kind)) {
    const double sd = std::sqrt(w->sigma2 * ts);
    double acc = std::sqrt(w->sigma2 * t_start) * rng.normal();
    out[0] = acc;
    for (std::size_t k = 1; k < count; ++k) {
      acc += sd * rng.normal();
      out[k] = acc;
    }
  } else if (const auto* p = std::get_if<noise::Poisson>(&kind)) {
    const double lambda = p->nu * ts;
    double acc = static_cast<double>(rng.poisson(p->nu * t_start));
    out[0] = acc;
    for (std::size_t k = 1; k < count; ++k) {
      acc += static_cast<double>(rng.poisson(lambda));
      out[k] = acc;
    }
  } else {
    const auto& pm = std::get<noise::PolyMean>(kind);
    fill_path(*pm.base, t_start, ts, rng, out);
    for (std::size_t k = 0; k < count; ++k)
      out[k] += poly::eval(pm.coeffs, t_start + static_cast<double>(k) * ts);
  }
}

void check_same_grid(const SampledSignal& x, const SampledSignal& noise) {
  if (x.size() != noise.size() || x.values.empty())
    throw std::invalid_argument("snr: signal and noise must be nonempty and of equal length");
}

}  // namespace

Rng::Rng(RngSeed s, std::uint64_t substream) {
  auto seq = make_seq(s, substream);
  engine_.seed(seq);
}

double Rng::uniform() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform()));
  const double a = 2.0 * std::numbers::pi * uniform();
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

std::uint64_t Rng::poisson(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("poisson: bad mean");
  std::uint64_t total = 0;
  while (lambda > 0.0) {
    const double chunk = std::min(lambda, kPoissonChunk);
    lambda -= chunk;
    double p = std::exp(-chunk);
    double cdf = p;
    const double u = uniform();
    std::uint64_t k = 0;
    while (u > cdf) {
      ++k;
      p *= chunk / static_cast<double>(k);
      cdf += p;
      if (p == 0.0) break;  // tail exhausted by rounding
    }
    total += k;
  }
  return total;
}

SampledSignal gen_path(const NoiseModel& model, double ts, std::size_t count, RngSeed seed, double t_start) {
  if (count < 1) throw std::invalid_argument("gen_path: count must be >= 1");
  if (!(ts > 0.0)) throw std::invalid_argument("gen_path: ts must be > 0");
  if (model.needs_nonnegative_time() && t_start < 0.0)
    throw std::invalid_argument("gen_path: " + model.name() + " is defined for t >= 0 only");
  SampledSignal s{t_start, ts, std::vector<double>(count)};
  Rng rng(seed);
  fill_path(model, t_start, ts, rng, s.values);
  return s;
}

double snr_db(const SampledSignal& x, const SampledSignal& noise, double scale) {
  check_same_grid(x, noise);
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double cw = scale * noise.values[k];
    num += (x.values[k] + cw) * (x.values[k] + cw);
    den += cw * cw;
  }
  return 10.0 * std::log10(num / den);
}

double calibrate_snr(const SampledSignal& x, const SampledSignal& noise, double target_db) {
  check_same_grid(x, noise);
  double sxx = 0.0, sxw = 0.0, sww = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += x.values[k] * x.values[k];
    sxw += x.values[k] * noise.values[k];
    sww += noise.values[k] * noise.values[k];
  }
  if (sww == 0.0) throw std::invalid_argument("calibrate_snr: noise path is identically zero");

  // With u = 1/C the power ratio is a u^2 + b u + 1.
  const double a = sxx / sww;
  const double b = 2.0 * sxw / sww;
  const double r = std::pow(10.0, target_db / 10.0);
  const auto infeasible = [&] {
    return std::runtime_error("calibrate_snr: no positive scale reaches " + std::to_string(target_db) + " dB");
  };

  double u = 0.0;
  if (a == 0.0) {
    if (b == 0.0 || (r - 1.0) / b <= 0.0) throw infeasible();
    u = (r - 1.0) / b;
  } else {
    const double disc = b * b + 4.0 * a * (r - 1.0);
    if (disc < 0.0) throw infeasible();
    const double sq = std::sqrt(disc);
    // Larger root, i.e. the smallest feasible C; stable form when b > 0.
    u = b > 0.0 ? 2.0 * (r - 1.0) / (b + sq) : (-b + sq) / (2.0 * a);
    if (!(u > 0.0) || !std::isfinite(u)) throw infeasible();
  }
  return 1.0 / u;
}

McResult summarize(std::vector<double> samples) {
  const auto n = static_cast<double>(samples.size());
  if (samples.size() < 2) throw std::invalid_argument("summarize: need at least 2 samples");
  McResult r;
  double sum = 0.0;
  for (double v : samples) sum += v;
  r.mean = sum / n;
  double m2 = 0.0, m4 = 0.0;
  for (double v : samples) {
    const double d = (v - r.mean) * (v - r.mean);
    m2 += d;
    m4 += d * d;
  }
  r.variance = m2 / (n - 1.0);
  const double mu2 = m2 / n;
  const double mu4 = m4 / n;
  r.stderr_mean = std::sqrt(r.variance / n);
  r.stderr_var = std::sqrt(std::max(0.0, (mu4 - (n - 3.0) / (n - 1.0) * mu2 * mu2) / n));
  r.samples = std::move(samples);
  return r;
}

McResult mc_noise_error(const EstimatorConfig& cfg, const NoiseModel& model, double t0, int trials,
                        RngSeed seed) {
  if (trials < 100) throw std::invalid_argument("mc_noise_error: trials must be >= 100");
  const auto kernel = build_kernel(cfg);
  const auto& c = kernel.config;
  const bool causal = c.beta == Direction::causal;
  const double t_lo = causal ? t0 - c.T : t0;
  if (model.needs_nonnegative_time() && t_lo < 0.0)
    throw std::invalid_argument("mc_noise_error: window starts before t = 0 (need t0 >= T for a causal window)");

  const int m = c.m;
  const double ts = c.sampling_period();
  std::vector<double> samples(static_cast<std::size_t>(trials));
  std::vector<double> path(static_cast<std::size_t>(m) + 1);
  for (int k = 0; k < trials; ++k) {
    Rng rng(seed, static_cast<std::uint64_t>(k));
    fill_path(model, t_lo, ts, rng, path);
    double e = 0.0;
    for (int i = 0; i <= m; ++i) e += kernel.taps[i] * path[causal ? m - i : i];
    samples[static_cast<std::size_t>(k)] = e;
  }
  return summarize(std::move(samples));
}

}  // namespace jdiff
