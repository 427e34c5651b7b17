// jdiff: Jacobi derivative estimators from the command line.

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "jdiff/analysis.hpp"
#include "jdiff/estimator.hpp"
#include "jdiff/experiment.hpp"
#include "jdiff/kernel.hpp"
#include "jdiff/noise.hpp"
#include "jdiff/report.hpp"
#include "jdiff/stochastic.hpp"

namespace {

using namespace jdiff;

struct ConfigFlags {
  int n = 1, q = 0, m = 20, beta = -1;
  double mu = 0.0, kappa = 0.0, F = 0.1;
  std::string T, xi;  // empty: derived (T = m ts) or default (xi = 0)
  bool suppress = false;

  void add(CLI::App* app) {
    app->add_option("--n", n, "derivative order")->capture_default_str();
    app->add_option("--q", q, "extra series terms (0 = minimal)")->capture_default_str();
    app->add_option("--mu", mu, "exponent of (1 - tau)")->capture_default_str();
    app->add_option("--kappa", kappa, "exponent of tau")->capture_default_str();
    app->add_option("--beta", beta, "-1 causal, 1 anti-causal")->capture_default_str()->check(CLI::IsMember({-1, 1}));
    app->add_option("--T", T, "window length in seconds");
    app->add_option("--xi", xi, "affine evaluation point, or 'auto' for the minimal-delay root");
    app->add_option("--F", F, "endpoint regularization factor")->capture_default_str();
    app->add_option("--m", m, "sampling intervals per window")->capture_default_str();
    app->add_flag("--suppress", suppress, "drop singular endpoint samples instead of regularizing");
  }

  EstimatorConfig build(double ts = 0.0) const {
    EstimatorConfig c;
    c.n = n;
    c.q = q;
    c.mu = mu;
    c.kappa = kappa;
    c.beta = beta < 0 ? Direction::causal : Direction::anticausal;
    c.F = F;
    c.m = m;
    c.endpoint = suppress ? EndpointRule::suppress : EndpointRule::regularize;
    if (!T.empty()) {
      if (T.size() > 2 && T.ends_with("Ts") && !(ts > 0.0))
        throw std::invalid_argument("--T: a multiple of Ts needs a sampled signal");
      c.T = parse_time(T, ts);
    } else if (ts > 0.0) {
      c.T = m * ts;
    }
    if (xi == "auto") c.xi = optimal_xi(n, q, kappa, mu);
    else if (!xi.empty()) c.xi = parse_time(xi, 1.0);
    return c;
  }
};

struct NoiseFlags {
  std::string model = "wiener";
  double sigma2 = 1.0, nu = 1.0;

  void add(CLI::App* app) {
    app->add_option("--noise", model, "white | wiener | poisson")
        ->capture_default_str()
        ->check(CLI::IsMember({"white", "wiener", "poisson"}));
    app->add_option("--sigma2", sigma2, "variance parameter (white, wiener)")->capture_default_str();
    app->add_option("--nu", nu, "Poisson intensity")->capture_default_str();
  }

  NoiseModel build() const {
    if (model == "white") return NoiseModel::white_gaussian(sigma2);
    if (model == "poisson") return NoiseModel::poisson(nu);
    return NoiseModel::wiener(sigma2);
  }
};

std::ostream& out_stream(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot write " + path);
  return file;
}

std::string slug(const std::string& s) {
  std::string r;
  for (char c : s) r += std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.' ? c : '_';
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jacobi-type derivative estimation of noisy sampled signals"};
  app.require_subcommand(1);

  // estimate
  auto* est = app.add_subcommand("estimate", "estimate a derivative series from a sampled signal");
  ConfigFlags est_cfg;
  est_cfg.add(est);
  std::string est_input, est_signal = "csv", est_out;
  std::vector<double> est_coeffs;
  double est_ts = 0.01;
  std::size_t est_count = 1001;
  est->add_option("--input", est_input, "CSV with columns t,value");
  est->add_option("--signal", est_signal, "csv | expsin | sin2t | poly")->capture_default_str();
  est->add_option("--coeffs", est_coeffs, "polynomial coefficients, ascending")->delimiter(',');
  est->add_option("--ts", est_ts, "sampling period for --signal poly")->capture_default_str();
  est->add_option("--count", est_count, "sample count for --signal poly")->capture_default_str();
  est->add_option("--out", est_out, "output CSV (default stdout)");

  // experiment
  auto* exp = app.add_subcommand("experiment", "run a preset pair or a key=value spec file");
  std::string exp_target, exp_out_dir;
  std::uint64_t exp_seed = 1;
  double exp_gamma = 2.0;
  bool exp_table = false;
  std::vector<std::string> exp_set;
  exp->add_option("target", exp_target, "table1-a | table1-b | table2-a | table2-b | path to spec file")->required();
  auto* exp_seed_opt = exp->add_option("--seed", exp_seed, "noise seed")->capture_default_str();
  auto* exp_gamma_opt = exp->add_option("--gamma", exp_gamma, "Chebyshev multiplier")->capture_default_str();
  exp->add_option("--set", exp_set, "extra key=value settings applied to a spec file");
  exp->add_option("--out-dir", exp_out_dir, "write one series CSV per run here");
  exp->add_flag("--table", exp_table, "print the comparison table to stderr");

  // kernel
  auto* ker = app.add_subcommand("kernel", "dump discrete kernel taps as CSV");
  ConfigFlags ker_cfg;
  ker_cfg.add(ker);
  std::string ker_out;
  ker->add_option("--out", ker_out, "output CSV (default stdout)");

  // surface
  auto* sur = app.add_subcommand("surface", "dump a parameter surface over (kappa, mu) as CSV");
  std::string sur_quantity, sur_out;
  SurfaceParams sur_params;
  std::vector<double> sur_grid;
  sur->add_option("quantity", sur_quantity, "delay | xi | variance_minimal | variance_affine")->required();
  sur->add_option("--n", sur_params.n, "derivative order")->capture_default_str();
  sur->add_option("--T", sur_params.T, "window length")->capture_default_str();
  sur->add_option("--eta", sur_params.eta, "noise intensity")->capture_default_str();
  sur->add_option("--grid", sur_grid, "lo,hi,count (default 41 points on (-1, 1])")->delimiter(',')->expected(3);
  sur->add_option("--out", sur_out, "output CSV (default stdout)");

  // mc
  auto* mc = app.add_subcommand("mc", "Monte Carlo noise error with Chebyshev bands (JSON)");
  ConfigFlags mc_cfg;
  mc_cfg.add(mc);
  NoiseFlags mc_noise;
  mc_noise.add(mc);
  double mc_t0 = -1.0, mc_gamma = 2.0;
  int mc_trials = 10000;
  std::uint64_t mc_seed = 1;
  mc->add_option("--t0", mc_t0, "estimation instant (default T)");
  mc->add_option("--trials", mc_trials, "number of trials")->capture_default_str();
  mc->add_option("--gamma", mc_gamma, "Chebyshev multiplier")->capture_default_str();
  mc->add_option("--seed", mc_seed, "seed")->capture_default_str();

  // path
  auto* pth = app.add_subcommand("path", "sample a noise path as CSV");
  NoiseFlags pth_noise;
  pth_noise.add(pth);
  double pth_ts = 0.005;
  std::size_t pth_count = 1001;
  std::uint64_t pth_seed = 1, pth_stream = 0;
  std::string pth_out;
  pth->add_option("--ts", pth_ts, "sampling period")->capture_default_str();
  pth->add_option("--count", pth_count, "number of samples")->capture_default_str();
  pth->add_option("--seed", pth_seed, "seed")->capture_default_str();
  pth->add_option("--stream", pth_stream, "stream index")->capture_default_str();
  pth->add_option("--out", pth_out, "output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << nlohmann::json{{"error", e.what()}, {"kind", "usage"}}.dump() << '\n';
    return 2;
  }

  try {
    std::ofstream file;
    if (*est) {
      SignalSpec ss;
      if (est_signal == "csv") {
        if (est_input.empty()) throw std::invalid_argument("--input is required for csv signals");
        ss.kind = SignalKind::csv;
        ss.path = est_input;
      } else if (est_signal == "expsin") ss.kind = SignalKind::expsin;
      else if (est_signal == "sin2t") ss.kind = SignalKind::sin2t;
      else if (est_signal == "poly") {
        ss.kind = SignalKind::polynomial;
        ss.coeffs = est_coeffs;
        ss.ts = est_ts;
        ss.count = est_count;
      } else throw std::invalid_argument("unknown signal '" + est_signal + "'");
      const auto sig = make_signal(ss);
      const auto series = estimate_series(sig.x, est_cfg.build(sig.x.ts));
      write_series_csv(out_stream(est_out, file), series);
    } else if (*exp) {
      std::vector<ExperimentSpec> specs;
      const auto names = preset_names();
      const bool is_preset = std::find(names.begin(), names.end(), exp_target) != names.end();
      if (is_preset) {
        specs = preset(exp_target, exp_seed);
      } else {
        auto spec = load_spec_file(exp_target);
        for (const auto& kv : exp_set) {
          const auto eq = kv.find('=');
          if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
          apply_setting(spec, kv.substr(0, eq), kv.substr(eq + 1));
        }
        if (exp_seed_opt->count()) spec.seed.seed = exp_seed;
        specs.push_back(std::move(spec));
      }
      std::vector<RunReport> runs;
      for (auto& s : specs) {
        if (exp_gamma_opt->count()) s.gamma = exp_gamma;
        runs.push_back(run_experiment(s));
      }
      nlohmann::ordered_json doc;
      if (is_preset) {
        doc["preset"] = exp_target;
        doc["runs"] = nlohmann::ordered_json::array();
        for (const auto& r : runs) doc["runs"].push_back(report_json(r));
      } else {
        doc = report_json(runs.front());
      }
      std::cout << doc.dump(2) << '\n';
      if (!exp_out_dir.empty()) {
        std::filesystem::create_directories(exp_out_dir);
        for (std::size_t i = 0; i < runs.size(); ++i) {
          std::ofstream f(std::filesystem::path(exp_out_dir) / (std::to_string(i) + "_" + slug(runs[i].name) + ".csv"));
          if (!f) throw std::runtime_error("cannot write into " + exp_out_dir);
          write_run_csv(f, runs[i]);
        }
      }
      if (exp_table) std::cerr << render_table(runs);
    } else if (*ker) {
      write_kernel_csv(out_stream(ker_out, file), build_kernel(ker_cfg.build()));
    } else if (*sur) {
      auto grid = default_surface_grid();
      if (!sur_grid.empty()) {
        const auto count = static_cast<int>(sur_grid[2]);
        if (count < 2 || sur_grid[2] != count) throw std::invalid_argument("--grid count must be an integer >= 2");
        grid.resize(count);
        for (int i = 0; i < count; ++i) grid[i] = sur_grid[0] + (sur_grid[1] - sur_grid[0]) * i / (count - 1);
      }
      const auto s = sweep_surface(parse_surface_quantity(sur_quantity), grid, grid, sur_params);
      write_surface_csv(out_stream(sur_out, file), s);
    } else if (*mc) {
      const auto cfg = mc_cfg.build();
      const double t0 = mc_t0 < 0.0 ? cfg.T : mc_t0;
      const auto r = mc_report(cfg, mc_noise.build(), t0, mc_trials, mc_gamma, RngSeed{mc_seed, 0});
      std::cout << report_json(r).dump(2) << '\n';
    } else if (*pth) {
      const auto p = gen_path(pth_noise.build(), pth_ts, pth_count, RngSeed{pth_seed, pth_stream});
      write_signal_csv(out_stream(pth_out, file), p);
    }
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", e.what()}, {"kind", "runtime"}}.dump() << '\n';
    return 1;
  }
  return 0;
}
