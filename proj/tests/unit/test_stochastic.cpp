#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "jdiff/analysis.hpp"
#include "jdiff/stochastic.hpp"

using namespace jdiff;

namespace {

EstimatorConfig cfg_of(int n, int m, double T = 1.0) {
  EstimatorConfig c;
  c.n = n;
  c.m = m;
  c.T = T;
  return c;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

TEST_CASE("rng is deterministic per (seed, stream, substream)") {
  Rng a({5, 1}), b({5, 1}), c({5, 2}), d({5, 1}, 1);
  for (int i = 0; i < 20; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x > 0.0);
    CHECK(x < 1.0);
  }
  int same_c = 0, same_d = 0;
  Rng a2({5, 1});
  for (int i = 0; i < 20; ++i) {
    const double x = a2.uniform();
    same_c += x == c.uniform();
    same_d += x == d.uniform();
  }
  CHECK(same_c == 0);
  CHECK(same_d == 0);
}

TEST_CASE("rng moments") {
  Rng r({42, 0});
  std::vector<double> u, z, p;
  for (int i = 0; i < 200000; ++i) {
    u.push_back(r.uniform());
    z.push_back(r.normal());
  }
  for (int i = 0; i < 50000; ++i) p.push_back(static_cast<double>(r.poisson(23.5)));
  CHECK(mean_of(u) == doctest::Approx(0.5).epsilon(0.005));
  const auto zs = summarize(z);
  CHECK(std::abs(zs.mean) < 4.0 * zs.stderr_mean);
  CHECK(std::abs(zs.variance - 1.0) < 4.0 * zs.stderr_var);
  const auto ps = summarize(p);
  CHECK(std::abs(ps.mean - 23.5) < 4.0 * ps.stderr_mean);
  CHECK(std::abs(ps.variance - 23.5) < 4.0 * ps.stderr_var);
  CHECK(r.poisson(0.0) == 0);
  CHECK_THROWS_AS(r.poisson(-1.0), std::invalid_argument);
}

TEST_CASE("gen_path shapes and start values") {
  const RngSeed s{3, 0};
  const auto w = gen_path(NoiseModel::wiener(2.0), 0.01, 100, s);
  REQUIRE(w.size() == 100);
  CHECK(w.values[0] == 0.0);
  CHECK(w.t_start == 0.0);
  const auto p = gen_path(NoiseModel::poisson(5.0), 0.01, 100, s);
  CHECK(p.values[0] == 0.0);
  for (std::size_t k = 1; k < p.size(); ++k) {
    CHECK(p.values[k] >= p.values[k - 1]);
    CHECK(p.values[k] == std::floor(p.values[k]));
  }
  const auto pm = gen_path(NoiseModel::poly_mean({1.0, 2.0}, NoiseModel::wiener(1.0)), 0.01, 100, s);
  const auto base = gen_path(NoiseModel::wiener(1.0), 0.01, 100, s);
  for (std::size_t k = 0; k < pm.size(); ++k) CHECK(pm.values[k] == doctest::Approx(base.values[k] + 1.0 + 0.02 * k));
  CHECK(gen_path(NoiseModel::wiener(2.0), 0.01, 100, s).values == w.values);
  CHECK_THROWS_AS(gen_path(NoiseModel::wiener(1.0), 0.01, 10, s, -0.5), std::invalid_argument);
  CHECK_NOTHROW(gen_path(NoiseModel::white_gaussian(1.0), 0.01, 10, s, -0.5));
  CHECK_THROWS_AS(gen_path(NoiseModel::wiener(1.0), 0.0, 10, s), std::invalid_argument);
  CHECK_THROWS_AS(gen_path(NoiseModel::wiener(1.0), 0.01, 0, s), std::invalid_argument);
}

TEST_CASE("wiener and poisson marginals match their covariance functions") {
  // many short paths started at t = 0.5; check moments at the last sample
  const std::size_t count = 11;
  const double ts = 0.05, t0 = 0.5, t_end = t0 + ts * (count - 1);
  std::vector<double> w_end, w_start, p_end;
  for (std::uint64_t k = 0; k < 20000; ++k) {
    const auto w = gen_path(NoiseModel::wiener(1.5), ts, count, {9, k}, t0);
    w_start.push_back(w.values.front());
    w_end.push_back(w.values.back());
    p_end.push_back(gen_path(NoiseModel::poisson(3.0), ts, count, {10, k}, t0).values.back());
  }
  const auto we = summarize(w_end);
  CHECK(std::abs(we.variance - 1.5 * t_end) < 4.0 * we.stderr_var);
  CHECK(std::abs(summarize(w_start).variance - 1.5 * t0) < 4.0 * summarize(w_start).stderr_var);
  double cov = 0.0;
  for (std::size_t i = 0; i < w_end.size(); ++i) cov += w_end[i] * w_start[i];
  cov /= static_cast<double>(w_end.size());
  CHECK(cov == doctest::Approx(1.5 * t0).epsilon(0.05));
  const auto pe = summarize(p_end);
  CHECK(std::abs(pe.mean - 3.0 * t_end) < 4.0 * pe.stderr_mean);
  CHECK(std::abs(pe.variance - 3.0 * t_end) < 4.0 * pe.stderr_var);
}

TEST_CASE("snr_db and calibrate_snr") {
  SampledSignal x{0.0, 1.0, {1.0, 2.0, 3.0, 4.0}};
  SampledSignal w{0.0, 1.0, {0.5, -1.0, 0.25, 0.1}};
  for (double target : {0.5, 10.0, 16.0, 20.0, 40.0}) {
    const double c = calibrate_snr(x, w, target);
    CHECK(c > 0.0);
    CHECK(snr_db(x, w, c) == doctest::Approx(target).epsilon(1e-10));
  }
  // direct definition
  const double num = 1.5 * 1.5 + 1.0 + 3.25 * 3.25 + 4.1 * 4.1;
  const double den = 0.25 + 1.0 + 0.0625 + 0.01;
  CHECK(snr_db(x, w, 1.0) == doctest::Approx(10.0 * std::log10(num / den)));
  // x = w: the ratio (1 + 1/C)^2 never drops below 0 dB
  CHECK_THROWS_AS(calibrate_snr(w, w, -3.0), std::runtime_error);
  SampledSignal neg{0.0, 1.0, {-0.5, 1.0, -0.25, -0.1}};
  CHECK(snr_db(neg, w, calibrate_snr(neg, w, -3.0)) == doctest::Approx(-3.0).epsilon(1e-10));
  SampledSignal zero{0.0, 1.0, {0.0, 0.0, 0.0, 0.0}};
  CHECK_THROWS_AS(calibrate_snr(x, zero, 10.0), std::invalid_argument);
  SampledSignal short_w{0.0, 1.0, {1.0}};
  CHECK_THROWS_AS(snr_db(x, short_w, 1.0), std::invalid_argument);
}

TEST_CASE("summarize") {
  const auto s = summarize({1.0, 2.0, 3.0, 4.0});
  CHECK(s.mean == doctest::Approx(2.5));
  CHECK(s.variance == doctest::Approx(5.0 / 3.0));
  CHECK(s.stderr_mean == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
  CHECK(s.samples.size() == 4);
}

TEST_CASE("mc_noise_error against the exact discrete moments") {
  const auto cfg = cfg_of(1, 100);
  const auto k = build_kernel(cfg);
  for (const auto& model : {NoiseModel::white_gaussian(1.0), NoiseModel::wiener(1.0), NoiseModel::poisson(2.0)}) {
    const auto r = mc_noise_error(cfg, model, 1.5, 4000, {17, 0});
    const auto d = discrete_moments(k, model, 1.5);
    CHECK(r.samples.size() == 4000);
    CHECK(std::abs(r.mean - d.mean) < 4.0 * r.stderr_mean);
    CHECK(std::abs(r.variance - d.variance) < 4.0 * r.stderr_var);
  }
  const auto a = mc_noise_error(cfg, NoiseModel::wiener(1.0), 1.5, 200, {1, 2});
  const auto b = mc_noise_error(cfg, NoiseModel::wiener(1.0), 1.5, 200, {1, 2});
  CHECK(a.samples == b.samples);
  CHECK_THROWS_AS(mc_noise_error(cfg, NoiseModel::wiener(1.0), 0.5, 200, {1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(mc_noise_error(cfg, NoiseModel::wiener(1.0), 1.5, 99, {1, 0}), std::invalid_argument);
}

TEST_CASE("anticausal windows start at t0") {
  auto cfg = cfg_of(1, 100);
  cfg.beta = Direction::anticausal;
  const auto r = mc_noise_error(cfg, NoiseModel::wiener(1.0), 0.0, 2000, {4, 0});
  const auto d = discrete_moments(build_kernel(cfg), NoiseModel::wiener(1.0), 0.0);
  CHECK(std::abs(r.variance - d.variance) < 4.0 * r.stderr_var);
}

TEST_CASE("polynomial noise means below degree n are annihilated") {
  const auto cfg = cfg_of(2, 200);
  const auto model = NoiseModel::poly_mean({5.0, -3.0}, NoiseModel::wiener(0.1));
  const auto r = mc_noise_error(cfg, model, 2.0, 2000, {8, 0});
  CHECK(std::abs(r.mean) < 4.0 * r.stderr_mean);
  // only the trapezoid error survives, shrinking as 1/m^2
  auto exact_mean = [&](int m) {
    auto c = cfg;
    c.m = m;
    return std::abs(discrete_moments(build_kernel(c), model, 2.0).mean);
  };
  CHECK(exact_mean(200) < 1e-3);
  CHECK(exact_mean(200) / exact_mean(400) == doctest::Approx(4.0).epsilon(0.05));
}
