#include "jdiff/experiment.hpp"

#include <cmath>
#include <complex>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "jdiff/analysis.hpp"
#include "jdiff/polynomial.hpp"

namespace jdiff {

namespace {

constexpr double kSin2tTs = std::numbers::pi / 100.0;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || trim(v.substr(pos)) != "") throw std::invalid_argument("bad number for " + key + ": '" + v + "'");
  return d;
}

long long to_int(const std::string& key, const std::string& v) {
  const double d = to_double(key, v);
  if (d != std::floor(d)) throw std::invalid_argument("bad integer for " + key + ": '" + v + "'");
  return static_cast<long long>(d);
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
  if (out.empty()) throw std::invalid_argument("empty list for " + key);
  return out;
}

// Reads t,value,derivative rows; a non-numeric first line is taken as a header.
SampledSignal read_csv(const std::string& path, std::vector<double>& deriv) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<double> t, v;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cells.push_back(trim(c));
    if (first) {
      first = false;
      try {
        (void)std::stod(cells.at(0));
      } catch (const std::exception&) {
        continue;
      }
    }
    if (cells.size() < 2) throw std::invalid_argument(path + ": expected at least 2 columns");
    t.push_back(to_double("t", cells[0]));
    v.push_back(to_double("value", cells[1]));
    if (cells.size() >= 3) deriv.push_back(to_double("derivative", cells[2]));
  }
  if (t.size() < 2) throw std::invalid_argument(path + ": need at least 2 samples");
  const double ts = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  for (std::size_t k = 1; k < t.size(); ++k)
    if (std::abs(t[k] - t[k - 1] - ts) > 1e-6 * ts) throw std::invalid_argument(path + ": samples are not uniform");
  if (!deriv.empty() && deriv.size() != t.size()) throw std::invalid_argument(path + ": ragged derivative column");
  return SampledSignal{t.front(), ts, std::move(v)};
}

double signal_ts(const SignalSpec& s) {
  switch (s.kind) {
    case SignalKind::expsin: return 1.0 / 200.0;
    case SignalKind::sin2t: return kSin2tTs;
    case SignalKind::polynomial: return s.ts;
    case SignalKind::csv: return make_signal(s).x.ts;
  }
  return s.ts;
}

struct ParseState {
  bool T_set = false;
  bool xi_auto = false;
  std::string t_lo, t_hi;
};

void apply(ExperimentSpec& spec, const std::string& key, const std::string& value, ParseState& st) {
  auto& c = spec.estimator;
  if (key == "name") spec.name = value;
  else if (key == "signal") {
    if (value == "expsin") spec.signal.kind = SignalKind::expsin;
    else if (value == "sin2t") spec.signal.kind = SignalKind::sin2t;
    else if (value == "poly" || value == "polynomial") spec.signal.kind = SignalKind::polynomial;
    else if (value == "csv") spec.signal.kind = SignalKind::csv;
    else throw std::invalid_argument("unknown signal '" + value + "'");
  } else if (key == "coeffs") spec.signal.coeffs = to_list(key, value);
  else if (key == "csv") { spec.signal.kind = SignalKind::csv; spec.signal.path = value; }
  else if (key == "ts") spec.signal.ts = to_double(key, value);
  else if (key == "count") spec.signal.count = static_cast<std::size_t>(to_int(key, value));
  else if (key == "noise") {
    if (value == "none") spec.noise.reset();
    else if (value == "white") spec.noise = NoiseModel::white_gaussian(1.0);
    else if (value == "wiener") spec.noise = NoiseModel::wiener(1.0);
    else if (value == "poisson") spec.noise = NoiseModel::poisson(1.0);
    else throw std::invalid_argument("unknown noise '" + value + "'");
  } else if (key == "sigma2" || key == "nu") {
    const double v = to_double(key, value);
    if (!spec.noise) throw std::invalid_argument(key + " given before noise");
    const auto& kind = spec.noise->kind();
    if (std::holds_alternative<noise::WhiteGaussian>(kind) && key == "sigma2") spec.noise = NoiseModel::white_gaussian(v);
    else if (std::holds_alternative<noise::Wiener>(kind) && key == "sigma2") spec.noise = NoiseModel::wiener(v);
    else if (std::holds_alternative<noise::Poisson>(kind) && key == "nu") spec.noise = NoiseModel::poisson(v);
    else throw std::invalid_argument(key + " does not apply to " + spec.noise->name() + " noise");
  } else if (key == "snr_db") {
    if (value == "none") spec.target_snr_db.reset();
    else spec.target_snr_db = to_double(key, value);
  } else if (key == "n") c.n = static_cast<int>(to_int(key, value));
  else if (key == "q") c.q = static_cast<int>(to_int(key, value));
  else if (key == "mu") c.mu = to_double(key, value);
  else if (key == "kappa") c.kappa = to_double(key, value);
  else if (key == "beta") {
    const auto b = to_int(key, value);
    if (b != 1 && b != -1) throw std::invalid_argument("beta must be 1 or -1");
    c.beta = b < 0 ? Direction::causal : Direction::anticausal;
  } else if (key == "T") { c.T = to_double(key, value); st.T_set = true; }
  else if (key == "xi") {
    st.xi_auto = value == "auto";
    if (!st.xi_auto) c.xi = to_double(key, value);
  } else if (key == "F") c.F = to_double(key, value);
  else if (key == "m") c.m = static_cast<int>(to_int(key, value));
  else if (key == "endpoint") {
    if (value == "regularize") c.endpoint = EndpointRule::regularize;
    else if (value == "suppress") c.endpoint = EndpointRule::suppress;
    else throw std::invalid_argument("unknown endpoint rule '" + value + "'");
  } else if (key == "t_lo") st.t_lo = value;
  else if (key == "t_hi") st.t_hi = value;
  else if (key == "seed") spec.seed.seed = static_cast<std::uint64_t>(to_int(key, value));
  else if (key == "stream") spec.seed.stream = static_cast<std::uint64_t>(to_int(key, value));
  else if (key == "gamma") spec.gamma = to_double(key, value);
  else throw std::invalid_argument("unknown setting '" + key + "'");
}

void finish(ExperimentSpec& spec, const ParseState& st) {
  const double ts = signal_ts(spec.signal);
  if (!st.T_set) spec.estimator.T = spec.estimator.m * ts;
  if (st.xi_auto) spec.estimator.xi = optimal_xi(spec.estimator.n, spec.estimator.q, spec.estimator.kappa, spec.estimator.mu);
  if (!st.t_lo.empty()) spec.t_lo = parse_time(st.t_lo, ts);
  if (!st.t_hi.empty()) spec.t_hi = parse_time(st.t_hi, ts);
}

void default_window(ExperimentSpec& s) {
  switch (s.signal.kind) {
    case SignalKind::expsin:
      s.t_lo = 50.0 / 200.0;
      s.t_hi = 5.0;
      break;
    case SignalKind::sin2t:
      s.t_lo = 38.0 * kSin2tTs;
      s.t_hi = 14.0;
      break;
    default:
      s.t_lo = -std::numeric_limits<double>::infinity();
      s.t_hi = std::numeric_limits<double>::infinity();
  }
}

ExperimentSpec base(const std::string& name, SignalKind kind, NoiseModel noise, double snr, std::uint64_t seed) {
  ExperimentSpec s;
  s.name = name;
  s.signal.kind = kind;
  s.noise = std::move(noise);
  s.target_snr_db = snr;
  s.seed = RngSeed{seed, 0};
  default_window(s);
  return s;
}

ExperimentSpec with(ExperimentSpec s, const std::string& name, int q, double mu, double kappa, int m, double xi, double F) {
  s.name = name;
  auto& c = s.estimator;
  c.n = 1;
  c.q = q;
  c.mu = mu;
  c.kappa = kappa;
  c.m = m;
  c.xi = xi;
  c.F = F;
  c.beta = Direction::causal;
  c.T = m * signal_ts(s.signal);
  return s;
}

}  // namespace

TestSignal make_signal(const SignalSpec& spec) {
  switch (spec.kind) {
    case SignalKind::expsin: {
      // exp(-t/1.2) sin(6t + pi) = -Im exp(z t)
      const std::complex<double> z(-1.0 / 1.2, 6.0);
      SampledSignal x{0.0, 1.0 / 200.0, std::vector<double>(1001)};
      for (std::size_t k = 0; k < x.size(); ++k) {
        const double t = x.time_at(k);
        x.values[k] = std::exp(-t / 1.2) * std::sin(6.0 * t + std::numbers::pi);
      }
      return {x, [z](double t, int order) { return -(std::pow(z, order) * std::exp(z * t)).imag(); }};
    }
    case SignalKind::sin2t: {
      const std::complex<double> z(0.0, 2.0);
      SampledSignal x{0.0, kSin2tTs, std::vector<double>(446)};
      for (std::size_t k = 0; k < x.size(); ++k) x.values[k] = std::sin(2.0 * x.time_at(k));
      return {x, [z](double t, int order) { return (std::pow(z, order) * std::exp(z * t)).imag(); }};
    }
    case SignalKind::polynomial: {
      if (spec.coeffs.empty()) throw std::invalid_argument("polynomial signal needs coeffs");
      if (spec.count < 1 || !(spec.ts > 0.0)) throw std::invalid_argument("polynomial signal needs count >= 1 and ts > 0");
      SampledSignal x{0.0, spec.ts, std::vector<double>(spec.count)};
      for (std::size_t k = 0; k < x.size(); ++k) x.values[k] = poly::eval(spec.coeffs, x.time_at(k));
      auto coeffs = spec.coeffs;
      return {x, [coeffs](double t, int order) {
                auto d = coeffs;
                for (int i = 0; i < order; ++i) d = poly::derivative(d);
                return poly::eval(d, t);
              }};
    }
    case SignalKind::csv: {
      std::vector<double> deriv;
      auto x = read_csv(spec.path, deriv);
      return {x, [x, deriv](double t, int) {
                if (deriv.empty()) throw std::invalid_argument("csv signal has no derivative column");
                return deriv[x.index_of(t)];
              }};
    }
  }
  throw std::invalid_argument("unknown signal kind");
}

double parse_time(const std::string& text, double ts) {
  const auto s = trim(text);
  if (s.size() > 2 && s.compare(s.size() - 2, 2, "Ts") == 0) return to_double("time", s.substr(0, s.size() - 2)) * ts;
  return to_double("time", s);
}

void apply_setting(ExperimentSpec& spec, const std::string& key, const std::string& value) {
  ParseState st;
  st.T_set = true;
  apply(spec, key, value, st);
  const double ts = signal_ts(spec.signal);
  if (key == "xi" && st.xi_auto)
    spec.estimator.xi = optimal_xi(spec.estimator.n, spec.estimator.q, spec.estimator.kappa, spec.estimator.mu);
  if (key == "t_lo") spec.t_lo = parse_time(value, ts);
  if (key == "t_hi") spec.t_hi = parse_time(value, ts);
}

ExperimentSpec parse_spec(const std::string& text) {
  ExperimentSpec spec;
  ParseState st;
  std::vector<std::pair<std::string, std::string>> kv;
  std::stringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("line " + std::to_string(lineno) + ": expected key = value");
    kv.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  // Signal and noise first, so that later keys see them regardless of order.
  for (const auto& [k, v] : kv)
    if (k == "signal" || k == "csv" || k == "noise") apply(spec, k, v, st);
  default_window(spec);
  for (const auto& [k, v] : kv)
    if (k != "signal" && k != "csv" && k != "noise") apply(spec, k, v, st);
  finish(spec, st);
  return spec;
}

ExperimentSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

std::vector<std::string> preset_names() { return {"table1-a", "table1-b", "table2-a", "table2-b"}; }

std::vector<ExperimentSpec> preset(const std::string& name, std::uint64_t seed) {
  if (name == "table1-a" || name == "table1-b") {
    const auto b = base(name, SignalKind::expsin, NoiseModel::wiener(1.0), 16.0, seed);
    if (name == "table1-a")
      return {with(b, "minimal mu=0 kappa=0 T=18Ts", 0, 0.0, 0.0, 18, 0.0, 0.1),
              with(b, "minimal mu=0 kappa=-0.79 T=30Ts", 0, 0.0, -0.79, 30, 0.0, 0.1)};
    return {with(b, "affine mu=0 kappa=0 T=30Ts xi=0.276", 1, 0.0, 0.0, 30, 0.276, 0.1),
            with(b, "affine mu=-0.6 kappa=-0.78 T=46Ts xi=0.218", 1, -0.6, -0.78, 46, 0.218, 0.1)};
  }
  if (name == "table2-a" || name == "table2-b") {
    const auto b = base(name, SignalKind::sin2t, NoiseModel::white_gaussian(1.0), 20.0, seed);
    if (name == "table2-a")
      return {with(b, "minimal mu=0 kappa=0 T=25Ts", 0, 0.0, 0.0, 25, 0.0, 0.5),
              with(b, "minimal mu=0 kappa=-0.75 T=25Ts", 0, 0.0, -0.75, 25, 0.0, 0.5)};
    return {with(b, "affine mu=0 kappa=0 T=38Ts xi=0.276", 1, 0.0, 0.0, 38, 0.276, 0.5),
            with(b, "affine mu=-0.66 kappa=-0.7 T=32Ts xi=0.234", 1, -0.66, -0.7, 32, 0.234, 0.5)};
  }
  throw std::invalid_argument("unknown preset '" + name + "'");
}

RunReport run_experiment(const ExperimentSpec& spec) {
  const auto sig = make_signal(spec.signal);
  const auto& x = sig.x;
  const auto kernel = build_kernel(spec.estimator);
  const auto& cfg = kernel.config;

  RunReport r;
  r.name = spec.name;
  r.config = cfg;
  r.seed = spec.seed;
  r.gamma = spec.gamma;
  r.delay_s = config_delay(cfg);

  SampledSignal y = x;
  SampledSignal path;
  if (spec.noise) {
    path = gen_path(*spec.noise, x.ts, x.size(), spec.seed, x.t_start);
    r.noise_scale = spec.target_snr_db ? calibrate_snr(x, path, *spec.target_snr_db) : 1.0;
    for (std::size_t k = 0; k < y.size(); ++k) y.values[k] += r.noise_scale * path.values[k];
    r.input_snr_db = snr_db(x, path, r.noise_scale);
  }

  const auto noisy = estimate_series(y, kernel);
  const auto clean = estimate_series(x, kernel);

  const double ts = x.ts;
  const double first = noisy.t_first;
  const double last = noisy.time_at(noisy.estimates.size() - 1);
  const double t_lo = std::isinf(spec.t_lo) && spec.t_lo < 0.0 ? first : spec.t_lo;
  if (t_lo < first - 1e-9 * ts)
    throw std::invalid_argument("metrics window starts at " + std::to_string(t_lo) +
                                " before the first estimate at " + std::to_string(first));
  double t_hi = spec.t_hi;
  if (t_hi < t_lo) throw std::invalid_argument("metrics window is empty");
  if (t_hi > last + 1e-9 * ts) {
    t_hi = last;
    r.window_clamped = std::isfinite(spec.t_hi);
  }
  const auto k0 = static_cast<std::size_t>(std::ceil((t_lo - first) / ts - 1e-9));
  const auto k1 = static_cast<std::size_t>(std::floor((t_hi - first) / ts + 1e-9));
  r.t_lo = noisy.time_at(k0);
  r.t_hi = noisy.time_at(k1);

  double sum_e2 = 0.0, sum_est2 = 0.0, sum_noise2 = 0.0;
  for (std::size_t k = k0; k <= k1; ++k) {
    const double t = noisy.time_at(k);
    const double truth = sig.derivative(t, cfg.n);
    const double est = noisy.estimates[k];
    const double ne = est - clean.estimates[k];
    r.t.push_back(t);
    r.truth.push_back(truth);
    r.estimate.push_back(est);
    r.noiseless.push_back(clean.estimates[k]);
    r.noise_error.push_back(ne);
    sum_e2 += (est - truth) * (est - truth);
    sum_est2 += est * est;
    sum_noise2 += ne * ne;
  }
  r.total_error = ts * sum_e2;

  if (spec.noise) {
    if (sum_noise2 > 0.0) r.snr_db = 10.0 * std::log10(sum_est2 / sum_noise2);
    const auto m = discrete_moments(kernel, *spec.noise, r.t_lo, spec.gamma);
    const double c = r.noise_scale;
    const auto band = chebyshev_band(c * m.mean, c * c * m.variance, spec.gamma);
    r.band_low = band.first;
    r.band_high = band.second;
  }
  return r;
}

}  // namespace jdiff
