#include "jdiff/report.hpp"

#include <cstdio>
#include <sstream>
#include <variant>

namespace jdiff {

namespace {

using nlohmann::ordered_json;

ordered_json opt(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

// Shortest representation that round-trips.
std::string num(double v) {
  char buf[32];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::stod(buf) == v) break;
  }
  return buf;
}

ordered_json band_json(const NoiseMomentReport& m) {
  return {{"mean", m.mean}, {"variance", m.variance}, {"band_low", m.cheb_low}, {"band_high", m.cheb_high}};
}

}  // namespace

ordered_json config_json(const EstimatorConfig& c) {
  return {{"n", c.n},
          {"q", c.q},
          {"mu", c.mu},
          {"kappa", c.kappa},
          {"beta", static_cast<int>(c.beta)},
          {"T", c.T},
          {"xi", c.xi},
          {"F", c.F},
          {"m", c.m},
          {"endpoint", c.endpoint == EndpointRule::regularize ? "regularize" : "suppress"}};
}

ordered_json seed_json(const RngSeed& s) { return {{"seed", s.seed}, {"stream", s.stream}}; }

ordered_json noise_json(const NoiseModel& noise) {
  const auto& k = noise.kind();
  if (const auto* w = std::get_if<noise::WhiteGaussian>(&k)) return {{"model", "white"}, {"sigma2", w->sigma2}};
  if (const auto* w = std::get_if<noise::Wiener>(&k)) return {{"model", "wiener"}, {"sigma2", w->sigma2}};
  if (const auto* p = std::get_if<noise::Poisson>(&k)) return {{"model", "poisson"}, {"nu", p->nu}};
  const auto& pm = std::get<noise::PolyMean>(k);
  return {{"model", "polymean"}, {"coeffs", pm.coeffs}, {"base", noise_json(*pm.base)}};
}

ordered_json report_json(const RunReport& r) {
  ordered_json j;
  j["total_error"] = r.total_error;
  j["snr_db"] = opt(r.snr_db);
  j["delay_s"] = r.delay_s;
  j["band_low"] = opt(r.band_low);
  j["band_high"] = opt(r.band_high);
  j["config"] = config_json(r.config);
  j["seed"] = seed_json(r.seed);
  j["name"] = r.name;
  j["gamma"] = r.gamma;
  j["input_snr_db"] = opt(r.input_snr_db);
  j["noise_scale"] = r.noise_scale;
  j["window"] = {{"t_lo", r.t_lo}, {"t_hi", r.t_hi}, {"clamped", r.window_clamped}, {"samples", r.t.size()}};
  j["snr_definition"] = "10 log10(sum estimate^2 / sum noise_error^2) over the window";
  return j;
}

double fraction_inside(const std::vector<double>& values, double lo, double hi) {
  if (values.empty()) return 0.0;
  std::size_t in = 0;
  for (double v : values)
    if (v > lo && v < hi) ++in;
  return static_cast<double>(in) / static_cast<double>(values.size());
}

McReport mc_report(const EstimatorConfig& cfg, const NoiseModel& model, double t0, int trials, double gamma,
                   RngSeed seed) {
  McReport r;
  r.config = cfg.normalized();
  r.noise = model.name();
  r.t0 = t0;
  r.seed = seed;
  r.gamma = gamma;
  r.mc = mc_noise_error(r.config, model, t0, trials, seed);
  r.discrete = discrete_moments(build_kernel(r.config), model, t0, gamma);
  r.inside_discrete = fraction_inside(r.mc.samples, r.discrete.cheb_low, r.discrete.cheb_high);
  try {
    r.continuous = continuous_moments(r.config, model, t0, gamma);
    r.inside_continuous = fraction_inside(r.mc.samples, r.continuous->cheb_low, r.continuous->cheb_high);
  } catch (const std::invalid_argument&) {
    // no closed form for this estimator / noise pair
  }
  return r;
}

ordered_json report_json(const McReport& r) {
  const auto& main = r.continuous ? *r.continuous : r.discrete;
  ordered_json j;
  j["total_error"] = nullptr;
  j["snr_db"] = nullptr;
  j["delay_s"] = config_delay(r.config);
  j["band_low"] = main.cheb_low;
  j["band_high"] = main.cheb_high;
  j["config"] = config_json(r.config);
  j["seed"] = seed_json(r.seed);
  j["noise"] = r.noise;
  j["t0"] = r.t0;
  j["gamma"] = r.gamma;
  j["trials"] = r.mc.samples.size();
  j["empirical"] = {{"mean", r.mc.mean},
                    {"variance", r.mc.variance},
                    {"stderr_mean", r.mc.stderr_mean},
                    {"stderr_var", r.mc.stderr_var}};
  j["discrete"] = band_json(r.discrete);
  j["discrete"]["inside_fraction"] = r.inside_discrete;
  if (r.continuous) {
    j["continuous"] = band_json(*r.continuous);
    j["continuous"]["inside_fraction"] = *r.inside_continuous;
  } else {
    j["continuous"] = nullptr;
  }
  return j;
}

void write_kernel_csv(std::ostream& os, const DiscreteKernel& k) {
  os << "i,abscissa,tap\n";
  for (int i = 0; i <= k.m(); ++i) os << i << ',' << num(k.abscissa(i)) << ',' << num(k.taps[i]) << '\n';
}

void write_surface_csv(std::ostream& os, const Surface& s) {
  os << "kappa\\mu";
  for (double mu : s.mu) os << ',' << num(mu);
  os << '\n';
  for (std::size_t i = 0; i < s.kappa.size(); ++i) {
    os << num(s.kappa[i]);
    for (std::size_t j = 0; j < s.mu.size(); ++j) os << ',' << num(s.at(i, j));
    os << '\n';
  }
}

void write_series_csv(std::ostream& os, const EstimateSeries& s) {
  os << "t,estimate\n";
  for (std::size_t k = 0; k < s.estimates.size(); ++k) os << num(s.time_at(k)) << ',' << num(s.estimates[k]) << '\n';
}

void write_signal_csv(std::ostream& os, const SampledSignal& s) {
  os << "t,value\n";
  for (std::size_t k = 0; k < s.size(); ++k) os << num(s.time_at(k)) << ',' << num(s.values[k]) << '\n';
}

void write_run_csv(std::ostream& os, const RunReport& r) {
  os << "t,truth,estimate,noiseless,noise_error\n";
  for (std::size_t k = 0; k < r.t.size(); ++k)
    os << num(r.t[k]) << ',' << num(r.truth[k]) << ',' << num(r.estimate[k]) << ',' << num(r.noiseless[k]) << ','
       << num(r.noise_error[k]) << '\n';
}

std::string render_table(const std::vector<RunReport>& runs) {
  std::ostringstream os;
  char buf[64];
  const auto row = [&](const char* label, auto cell) {
    std::snprintf(buf, sizeof buf, "%-18s", label);
    os << buf;
    for (const auto& r : runs) {
      std::snprintf(buf, sizeof buf, "  %16s", cell(r).c_str());
      os << buf;
    }
    os << '\n';
  };
  const auto fixed = [](double v, int digits) {
    char b[32];
    std::snprintf(b, sizeof b, "%.*f", digits, v);
    return std::string(b);
  };
  for (std::size_t i = 0; i < runs.size(); ++i) os << "[" << i << "] " << runs[i].name << '\n';
  row("", [&](const RunReport& r) { return "[" + std::to_string(&r - runs.data()) + "]"; });
  row("total error", [&](const RunReport& r) { return fixed(r.total_error, 4); });
  row("SNR (dB)", [&](const RunReport& r) { return r.snr_db ? fixed(*r.snr_db, 4) : std::string("-"); });
  row("theoretical delay", [&](const RunReport& r) { return fixed(r.delay_s, 4); });
  return os.str();
}

}  // namespace jdiff
