#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jdiff/analysis.hpp"
#include "jdiff/estimator.hpp"
#include "jdiff/experiment.hpp"
#include "jdiff/kernel.hpp"
#include "jdiff/noise.hpp"
#include "jdiff/report.hpp"
#include "jdiff/specfun.hpp"
#include "jdiff/stochastic.hpp"

namespace py = pybind11;
using namespace jdiff;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
  py::array_t<double> a(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), a.mutable_data());
  return a;
}

std::vector<double> from_array(py::array_t<double, py::array::c_style | py::array::forcecast> a) {
  if (a.ndim() != 1) throw std::invalid_argument("expected a 1-D array");
  return std::vector<double>(a.data(), a.data() + a.size());
}

py::dict moments_dict(const NoiseMomentReport& m) {
  py::dict d;
  d["mean"] = m.mean;
  d["variance"] = m.variance;
  d["cheb_low"] = m.cheb_low;
  d["cheb_high"] = m.cheb_high;
  d["gamma"] = m.gamma;
  d["regime"] = m.regime == MomentRegime::continuous ? "continuous" : "discrete";
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Jacobi-type derivative estimators";

  py::enum_<Direction>(m, "Direction")
      .value("causal", Direction::causal)
      .value("anticausal", Direction::anticausal);
  py::enum_<EndpointRule>(m, "EndpointRule")
      .value("regularize", EndpointRule::regularize)
      .value("suppress", EndpointRule::suppress);

  py::class_<EstimatorConfig>(m, "EstimatorConfig")
      .def(py::init([](int n, int q, double mu, double kappa, Direction beta, double T, double xi, double F, int m,
                       EndpointRule endpoint) {
             EstimatorConfig c;
             c.n = n;
             c.q = q;
             c.mu = mu;
             c.kappa = kappa;
             c.beta = beta;
             c.T = T;
             c.xi = xi;
             c.F = F;
             c.m = m;
             c.endpoint = endpoint;
             c.validate();
             return c;
           }),
           py::kw_only(), py::arg("n") = 1, py::arg("q") = 0, py::arg("mu") = 0.0, py::arg("kappa") = 0.0,
           py::arg("beta") = Direction::causal, py::arg("T") = 1.0, py::arg("xi") = 0.0, py::arg("F") = 0.1,
           py::arg("m") = 20, py::arg("endpoint") = EndpointRule::regularize)
      .def_readwrite("n", &EstimatorConfig::n)
      .def_readwrite("q", &EstimatorConfig::q)
      .def_readwrite("mu", &EstimatorConfig::mu)
      .def_readwrite("kappa", &EstimatorConfig::kappa)
      .def_readwrite("beta", &EstimatorConfig::beta)
      .def_readwrite("T", &EstimatorConfig::T)
      .def_readwrite("xi", &EstimatorConfig::xi)
      .def_readwrite("F", &EstimatorConfig::F)
      .def_readwrite("m", &EstimatorConfig::m)
      .def_readwrite("endpoint", &EstimatorConfig::endpoint)
      .def("validate", &EstimatorConfig::validate)
      .def_property_readonly("sampling_period", &EstimatorConfig::sampling_period)
      .def("__repr__", [](const EstimatorConfig& c) { return "EstimatorConfig(" + config_json(c).dump() + ")"; });

  // special functions
  m.def("gamma_fn", &gamma_fn, py::arg("x"));
  m.def("beta_fn", &beta_fn, py::arg("a"), py::arg("b"));
  m.def("jacobi_eval", [](int n, double mu, double kappa, double t) { return jacobi_eval(JacobiIndex(n, mu, kappa), t); },
        py::arg("n"), py::arg("mu"), py::arg("kappa"), py::arg("t"));
  m.def("jacobi_norm_sq", [](int n, double mu, double kappa) { return jacobi_norm_sq(JacobiIndex(n, mu, kappa)); },
        py::arg("n"), py::arg("mu"), py::arg("kappa"));
  m.def("smallest_root", [](int n, double mu, double kappa) { return smallest_root(JacobiIndex(n, mu, kappa)); },
        py::arg("n"), py::arg("mu"), py::arg("kappa"));

  // kernels and estimation
  m.def("kernel_taps", [](const EstimatorConfig& c) { return to_array(build_kernel(c).taps); }, py::arg("config"),
        "Trapezoid taps; tap i multiplies the sample at t0 + beta T i/m.");
  m.def("kernel_moment", [](const EstimatorConfig& c, int j) { return wpoly_moment(make_kernel(c), j); },
        py::arg("config"), py::arg("j"), "Exact integral of tau^j times the continuous kernel.");
  m.def(
      "estimate_series",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> values, double ts, const EstimatorConfig& c,
         double t_start) {
        const auto s = estimate_series(SampledSignal{t_start, ts, from_array(values)}, c);
        return py::make_tuple(s.t_first, to_array(s.estimates));
      },
      py::arg("values"), py::arg("ts"), py::arg("config"), py::arg("t_start") = 0.0,
      "Returns (t_first, estimates) for every feasible estimation instant.");
  m.def(
      "estimate_at",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> values, double ts, const EstimatorConfig& c,
         std::ptrdiff_t t0_index) {
        return estimate_at(SampledSignal{0.0, ts, from_array(values)}, build_kernel(c), t0_index);
      },
      py::arg("values"), py::arg("ts"), py::arg("config"), py::arg("t0_index"));

  // analysis
  m.def("theoretical_delay", &theoretical_delay, py::arg("n"), py::arg("kappa"), py::arg("mu"), py::arg("T"));
  m.def("affine_delay", &affine_delay, py::arg("n"), py::arg("kappa"), py::arg("mu"), py::arg("T"), py::arg("xi"));
  m.def("optimal_xi", &optimal_xi, py::arg("n"), py::arg("q"), py::arg("kappa"), py::arg("mu"));
  m.def(
      "bias_bounds",
      [](int n, double kappa, double mu, double T, Direction beta, double inf_d, double sup_d) {
        const auto b = bias_bounds(n, kappa, mu, T, beta, inf_d, sup_d);
        return py::make_tuple(b.lower, b.upper, b.c_factor);
      },
      py::arg("n"), py::arg("kappa"), py::arg("mu"), py::arg("T"), py::arg("beta"), py::arg("inf_d"), py::arg("sup_d"));
  m.def("i_integral", &i_integral, py::arg("mu"), py::arg("kappa"), py::arg("n"));
  m.def("variance_minimal", &variance_minimal, py::arg("n"), py::arg("kappa"), py::arg("mu"), py::arg("T"),
        py::arg("eta"));
  m.def("variance_affine_n1", &variance_affine_n1, py::arg("kappa"), py::arg("mu"), py::arg("xi"), py::arg("T"),
        py::arg("eta"));
  m.def("poisson_mean", &poisson_mean, py::arg("n"), py::arg("nu"));
  m.def("chebyshev_band", &chebyshev_band, py::arg("mean"), py::arg("variance"), py::arg("gamma"));
  m.def(
      "sweep_surface",
      [](const std::string& quantity, const std::vector<double>& kappa, const std::vector<double>& mu, int n, double T,
         double eta) {
        const auto s = sweep_surface(parse_surface_quantity(quantity), kappa, mu, SurfaceParams{n, T, eta});
        py::array_t<double> a({kappa.size(), mu.size()});
        std::copy(s.values.begin(), s.values.end(), a.mutable_data());
        return a;
      },
      py::arg("quantity"), py::arg("kappa"), py::arg("mu"), py::arg("n") = 1, py::arg("T") = 1.0, py::arg("eta") = 1.0,
      "Rows follow kappa, columns follow mu.");
  m.def("default_surface_grid", &default_surface_grid);

  // noise
  py::class_<NoiseModel>(m, "NoiseModel")
      .def_static("white_gaussian", &NoiseModel::white_gaussian, py::arg("sigma2"))
      .def_static("wiener", &NoiseModel::wiener, py::arg("sigma2"))
      .def_static("poisson", &NoiseModel::poisson, py::arg("nu"))
      .def_static("poly_mean", &NoiseModel::poly_mean, py::arg("coeffs"), py::arg("base"))
      .def("mean", &NoiseModel::mean)
      .def("variance", &NoiseModel::variance)
      .def("covariance", &NoiseModel::covariance)
      .def_property_readonly("name", &NoiseModel::name)
      .def("__repr__", [](const NoiseModel& n) { return "NoiseModel(" + noise_json(n).dump() + ")"; });

  m.def(
      "gen_path",
      [](const NoiseModel& model, double ts, std::size_t count, std::uint64_t seed, std::uint64_t stream) {
        return to_array(gen_path(model, ts, count, RngSeed{seed, stream}).values);
      },
      py::arg("model"), py::arg("ts"), py::arg("count"), py::arg("seed") = 0, py::arg("stream") = 0);
  m.def(
      "calibrate_snr",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> x,
         py::array_t<double, py::array::c_style | py::array::forcecast> noise, double target_db) {
        return calibrate_snr(SampledSignal{0.0, 1.0, from_array(x)}, SampledSignal{0.0, 1.0, from_array(noise)},
                             target_db);
      },
      py::arg("x"), py::arg("noise"), py::arg("target_db"));
  m.def(
      "mc_noise_error",
      [](const EstimatorConfig& c, const NoiseModel& model, double t0, int trials, std::uint64_t seed) {
        const auto r = mc_noise_error(c, model, t0, trials, RngSeed{seed, 0});
        py::dict d;
        d["mean"] = r.mean;
        d["variance"] = r.variance;
        d["stderr_mean"] = r.stderr_mean;
        d["stderr_var"] = r.stderr_var;
        d["samples"] = to_array(r.samples);
        return d;
      },
      py::arg("config"), py::arg("model"), py::arg("t0"), py::arg("trials"), py::arg("seed") = 0);
  m.def(
      "discrete_moments",
      [](const EstimatorConfig& c, const NoiseModel& model, double t0, double gamma) {
        return moments_dict(discrete_moments(build_kernel(c), model, t0, gamma));
      },
      py::arg("config"), py::arg("model"), py::arg("t0"), py::arg("gamma") = 2.0);

  // experiments; reports come back as JSON text
  m.def("preset_names", &preset_names);
  m.def(
      "run_preset_json",
      [](const std::string& name, std::uint64_t seed) {
        auto doc = nlohmann::ordered_json::array();
        for (const auto& s : preset(name, seed)) doc.push_back(report_json(run_experiment(s)));
        return doc.dump();
      },
      py::arg("name"), py::arg("seed") = 1);
  m.def(
      "run_spec_json", [](const std::string& text) { return report_json(run_experiment(parse_spec(text))).dump(); },
      py::arg("text"), "Runs a key = value experiment spec given as text.");
  m.def(
      "mc_report_json",
      [](const EstimatorConfig& c, const NoiseModel& model, double t0, int trials, double gamma, std::uint64_t seed) {
        return report_json(mc_report(c, model, t0, trials, gamma, RngSeed{seed, 0})).dump();
      },
      py::arg("config"), py::arg("model"), py::arg("t0"), py::arg("trials"), py::arg("gamma") = 2.0,
      py::arg("seed") = 0);
}
