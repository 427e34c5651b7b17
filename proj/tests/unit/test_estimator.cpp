#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "jdiff/analysis.hpp"
#include "jdiff/estimator.hpp"

using namespace jdiff;

namespace {

EstimatorConfig cfg_of(int n, double mu, double kappa, double T, int m, Direction beta = Direction::causal) {
  EstimatorConfig c;
  c.n = n;
  c.mu = mu;
  c.kappa = kappa;
  c.T = T;
  c.m = m;
  c.beta = beta;
  return c;
}

SampledSignal sample(double (*f)(double), double t_start, double ts, std::size_t count) {
  SampledSignal s{t_start, ts, std::vector<double>(count)};
  for (std::size_t k = 0; k < count; ++k) s.values[k] = f(s.time_at(k));
  return s;
}

// Independent direct sum for the n=1, mu=kappa=0 causal kernel 6(2 tau - 1)/(-T).
double direct_n1(double (*f)(double), double t0, double T, int m) {
  double acc = 0.0;
  for (int i = 0; i <= m; ++i) {
    const double tau = static_cast<double>(i) / m;
    const double w = (i == 0 || i == m) ? 0.5 : 1.0;
    acc += w / m * 6.0 * (2.0 * tau - 1.0) / (-T) * f(t0 - T * tau);
  }
  return acc;
}

}  // namespace

TEST_CASE("SampledSignal") {
  SampledSignal s{1.0, 0.5, {1.0, 2.0, 3.0}};
  CHECK_NOTHROW(s.validate());
  CHECK(s.time_at(2) == 2.0);
  CHECK(s.index_of(1.5) == 1);
  CHECK_THROWS_AS(s.index_of(1.25), std::out_of_range);
  CHECK_THROWS_AS(s.index_of(2.5), std::out_of_range);
  CHECK_THROWS_AS((SampledSignal{0.0, 0.0, {1.0}}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((SampledSignal{0.0, 1.0, {}}).validate(), std::invalid_argument);
}

TEST_CASE("constants: exact for mu = kappa = 0, trapezoid error otherwise") {
  const auto s = sample([](double) { return 3.5; }, 0.0, 0.01, 30);
  CHECK(std::abs(estimate_at(s, build_kernel(cfg_of(1, 0.0, 0.0, 0.1, 10)), 20)) <= 1e-12);
  for (auto [mu, kappa] : {std::pair{1.0, 0.0}, std::pair{0.0, 2.0}, std::pair{2.0, 1.0}}) {
    auto err = [&](int m) {
      const auto sm = sample([](double) { return 3.5; }, 0.0, 1.0 / m, m + 1);
      return std::abs(estimate_at(sm, build_kernel(cfg_of(1, mu, kappa, 1.0, m)), m));
    };
    CHECK(err(20) / err(40) == doctest::Approx(4.0).epsilon(0.05));
  }
  // symmetric exponents give an antisymmetric n = 1 kernel
  CHECK(std::abs(estimate_at(s, build_kernel(cfg_of(1, 1.0, 1.0, 0.1, 10)), 20)) <= 1e-12);
}

TEST_CASE("slope of a line, m=20") {
  const auto k = build_kernel(cfg_of(1, 0.0, 0.0, 0.2, 20));
  const auto s = sample([](double t) { return t; }, 0.0, 0.01, 121);
  const double got = estimate_at(s, k, 100);
  // trapezoid value: exact slope times 1 + 2/m^2
  CHECK(got == doctest::Approx(direct_n1([](double t) { return t; }, 1.0, 0.2, 20)).epsilon(1e-12));
  CHECK(got == doctest::Approx(1.005).epsilon(1e-12));
}

TEST_CASE("derivative of t^2 at t0=1 shows the delay") {
  const auto f = [](double t) { return t * t; };
  const auto k = build_kernel(cfg_of(1, 0.0, 0.0, 0.2, 20));
  const auto s = sample(f, 0.0, 0.01, 121);
  const double got = estimate_at(s, k, 100);
  CHECK(got == doctest::Approx(direct_n1(f, 1.0, 0.2, 20)).epsilon(1e-12));
  CHECK(got == doctest::Approx(1.809).epsilon(1e-12));
  // continuous limit 2(1 - C) with C = 0.1
  const auto kd = build_kernel(cfg_of(1, 0.0, 0.0, 0.2, 2000));
  const auto sd = sample(f, 0.0, 0.0001, 12001);
  CHECK(estimate_at(sd, kd, 10000) == doctest::Approx(1.8).epsilon(1e-5));
}

TEST_CASE("window orientation") {
  // tap i reads sample t0_index + beta i
  SampledSignal s{0.0, 1.0, {0, 0, 0, 0, 0, 0, 0}};
  s.values[1] = 1.0;
  const auto causal = build_kernel(cfg_of(1, 0.0, 0.0, 4.0, 4, Direction::causal));
  const auto anti = build_kernel(cfg_of(1, 0.0, 0.0, 4.0, 4, Direction::anticausal));
  CHECK(estimate_at(s, causal, 4) == causal.taps[3]);
  CHECK(estimate_at(s, anti, 0) == anti.taps[1]);
  CHECK_THROWS_AS(estimate_at(s, causal, 3), std::out_of_range);
  CHECK_THROWS_AS(estimate_at(s, anti, 3), std::out_of_range);
  CHECK_THROWS_AS(estimate_at(s, anti, -1), std::out_of_range);
}

TEST_CASE("estimate_series window arithmetic") {
  const auto line = [](double t) { return 2.0 * t; };
  const auto cfg = cfg_of(1, 0.0, 0.0, 20 * 0.01, 20);
  auto s = sample(line, 0.0, 0.01, 21);
  const auto one = estimate_series(s, cfg);
  CHECK(one.estimates.size() == 1);
  CHECK(one.t_first == doctest::Approx(0.2));

  const auto sig = sample([](double t) { return std::sin(t); }, 0.0, 1.0 / 200.0, 1001);
  const auto series = estimate_series(sig, cfg_of(1, 0.0, 0.0, 18.0 / 200.0, 18));
  CHECK(series.estimates.size() == 983);
  CHECK(series.t_first == doctest::Approx(18.0 / 200.0));
  CHECK(series.time_at(982) == doctest::Approx(5.0));

  const auto anti = estimate_series(sig, cfg_of(1, 0.0, 0.0, 18.0 / 200.0, 18, Direction::anticausal));
  CHECK(anti.t_first == 0.0);
  CHECK(anti.time_at(anti.estimates.size() - 1) == doctest::Approx(5.0 - 18.0 / 200.0));

  const auto k = build_kernel(cfg_of(1, 0.0, 0.0, 18.0 / 200.0, 18));
  for (std::size_t i = 0; i < series.estimates.size(); i += 97)
    CHECK(series.estimates[i] == estimate_at(sig, k, static_cast<std::ptrdiff_t>(i + 18)));
}

TEST_CASE("estimate_series errors") {
  auto s = sample([](double t) { return t; }, 0.0, 0.01, 20);
  CHECK_THROWS_AS(estimate_series(s, cfg_of(1, 0.0, 0.0, 0.2, 20)), std::invalid_argument);
  s.values.resize(50);
  CHECK_THROWS_AS(estimate_series(s, cfg_of(1, 0.0, 0.0, 0.3, 20)), std::invalid_argument);
}

TEST_CASE("sin(2t) estimate is delayed by the theoretical delay") {
  const double ts = std::numbers::pi / 100.0;
  const auto sig = sample([](double t) { return std::sin(2.0 * t); }, 0.0, ts, 446);
  const auto series = estimate_series(sig, cfg_of(1, 0.0, 0.0, 25 * ts, 25));
  // project onto cos/sin over whole periods to read off the phase lag
  double a = 0.0, b = 0.0, maxerr = 0.0;
  const std::size_t count = 400;
  for (std::size_t k = 0; k < count; ++k) {
    const double t = series.time_at(k);
    a += series.estimates[k] * std::cos(2.0 * t);
    b += series.estimates[k] * std::sin(2.0 * t);
    maxerr = std::max(maxerr, std::abs(series.estimates[k] - 2.0 * std::cos(2.0 * (t - 0.3927))));
  }
  const double delay = std::atan2(b, a) / 2.0;
  CHECK(delay == doctest::Approx(theoretical_delay(1, 0.0, 0.0, 25 * ts)).epsilon(1e-6));
  CHECK(delay == doctest::Approx(0.3927).epsilon(1e-4));
  CHECK(maxerr < 0.15);  // amplitude attenuation of the window only
}

TEST_CASE("recurrence between orders") {
  const double T = 0.5;
  const int m = 200;
  const auto f = [](double t) { return std::exp(0.7 * t) * std::sin(3.0 * t); };
  const auto s = sample(f, 0.0, T / m, 801);
  for (auto beta : {Direction::causal, Direction::anticausal})
    for (double mu : {0.0, 1.0})
      for (double kappa : {0.0, 0.5}) {
        const double bT = sign_of(beta) * T;
        const int n = 2;
        const double A = (mu + kappa + 2 * n + 1) * (mu + kappa + 2 * n) / (2 * bT * (n + mu));
        const double B = -(mu + kappa + 2 * n + 1) * (mu + kappa + 2 * n) / (2 * bT * (n + kappa));
        const std::ptrdiff_t i0 = 400;
        auto est = [&](int order, double mu_, double kappa_) {
          return estimate_at(s, build_kernel(cfg_of(order, mu_, kappa_, T, m, beta)), i0);
        };
        const double lhs = est(2, mu, kappa);
        const double rhs = -(A + B) * est(1, mu, kappa) + A * est(1, mu, kappa + 1) + B * est(1, mu + 1, kappa);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
      }
}

TEST_CASE("causal and anti-causal estimates mirror each other") {
  const int N = 300;
  const double ts = 0.01;
  for (int n = 1; n <= 3; ++n) {
    SampledSignal y{0.0, ts, std::vector<double>(N + 1)};
    SampledSignal z{-N * ts, ts, std::vector<double>(N + 1)};
    for (int k = 0; k <= N; ++k) {
      const double t = k * ts;
      y.values[k] = 1.0 - 2.0 * t + 0.5 * t * t * t - 0.3 * t * t * t * t;
    }
    for (int j = 0; j <= N; ++j) z.values[j] = y.values[N - j];  // z(t) = y(-t)
    const auto kc = build_kernel(cfg_of(n, 0.3, 0.7, 40 * ts, 40, Direction::causal));
    const auto ka = build_kernel(cfg_of(n, 0.3, 0.7, 40 * ts, 40, Direction::anticausal));
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    for (int i0 = 40; i0 <= N; i0 += 37) {
      const double c = estimate_at(y, kc, i0);
      const double a = estimate_at(z, ka, N - i0);
      CHECK(c == doctest::Approx(sign * a).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("delay law for constant x^(n+1)") {
  for (int n = 1; n <= 2; ++n)
    for (double mu : {0.0, 1.0})
      for (double kappa : {0.0, 2.0})
        for (auto beta : {Direction::causal, Direction::anticausal}) {
          const double T = 0.4, c = 3.0;
          const int m = 2000;
          // x = c t^(n+1)/(n+1)!, so x^(n) = c t and x^(n+1) = c
          SampledSignal s{0.0, T / m, std::vector<double>(3 * m + 1)};
          double fact = 1.0;
          for (int k = 2; k <= n + 1; ++k) fact *= k;
          for (std::size_t k = 0; k < s.size(); ++k) s.values[k] = c * std::pow(s.time_at(k), n + 1) / fact;
          const std::ptrdiff_t i0 = 3 * m / 2;
          const double got = estimate_at(s, build_kernel(cfg_of(n, mu, kappa, T, m, beta)), i0);
          const double bias = bias_bounds(n, kappa, mu, T, beta, c, c).lower;
          CHECK(got - c * s.time_at(i0) == doctest::Approx(bias).epsilon(2e-3));
        }
}

TEST_CASE("discrete error on a degree-n polynomial decays as 1/m^2") {
  for (int n = 1; n <= 2; ++n) {
    auto err = [&](int m) {
      const double T = 0.5;
      SampledSignal s{0.0, T / m, std::vector<double>(2 * m + 1)};
      for (std::size_t k = 0; k < s.size(); ++k) {
        const double t = s.time_at(k);
        s.values[k] = n == 1 ? 1.0 + 2.0 * t : 1.0 + t - 1.5 * t * t;
      }
      const double exact = n == 1 ? 2.0 : -3.0;
      return std::abs(estimate_at(s, build_kernel(cfg_of(n, 1.0, 2.0, T, m)), 2 * m) - exact);
    };
    const double ratio = err(100) / err(200);
    CHECK(ratio >= 3.5);
    CHECK(ratio <= 4.5);
  }
}
