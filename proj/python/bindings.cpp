#include <sstream>
#include <string>
#include <vector>

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "extremes/blocks.hpp"
#include "extremes/bootstrap.hpp"
#include "extremes/cli.hpp"
#include "extremes/fit.hpp"
#include "extremes/gev.hpp"
#include "extremes/report.hpp"
#include "extremes/sensitivity.hpp"
#include "extremes/synth.hpp"

namespace py = pybind11;
using namespace extremes;

namespace {

py::object to_python(const report::Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

DailySeries daily(std::vector<double> values, Variable variable) {
  DailySeries s;
  s.values = std::move(values);
  s.variable = variable;
  validate(s);
  return s;
}

py::dict interval(const Interval& i) {
  py::dict d;
  d["lower"] = i.lower;
  d["upper"] = i.upper;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "GEV block-extrema analysis core";

  py::enum_<Orientation>(m, "Orientation").value("MAXIMA", Orientation::Maxima).value("MINIMA", Orientation::Minima);
  py::enum_<FitMethod>(m, "FitMethod").value("ML", FitMethod::ML).value("PWM", FitMethod::PWM);

  py::class_<GevParams>(m, "GevParams")
      .def(py::init([](double mu, double sigma, double xi, Orientation o) {
             GevParams p{mu, sigma, xi, o};
             validate(p);
             return p;
           }),
           py::arg("mu"), py::arg("sigma"), py::arg("xi"), py::arg("orientation") = Orientation::Maxima)
      .def_readwrite("mu", &GevParams::mu)
      .def_readwrite("sigma", &GevParams::sigma)
      .def_readwrite("xi", &GevParams::xi)
      .def_readwrite("orientation", &GevParams::orientation)
      .def(py::self == py::self)
      .def("__repr__", [](const GevParams& p) {
        std::ostringstream s;
        s.precision(17);
        s << "GevParams(mu=" << p.mu << ", sigma=" << p.sigma << ", xi=" << p.xi << ", orientation="
          << to_string(p.orientation) << ")";
        return s.str();
      });

  py::class_<BlockExtremes>(m, "BlockExtremes")
      .def(py::init([](std::vector<double> values, Orientation o, int block_length) {
             return BlockExtremes{o, block_length, std::move(values)};
           }),
           py::arg("values"), py::arg("orientation") = Orientation::Maxima, py::arg("block_length") = 1)
      .def_readonly("values", &BlockExtremes::values)
      .def_readonly("orientation", &BlockExtremes::orientation)
      .def_readonly("block_length", &BlockExtremes::block_length)
      .def("__len__", &BlockExtremes::n_blocks);

  py::class_<FitResult>(m, "FitResult")
      .def_readonly("params", &FitResult::params)
      .def_readonly("method", &FitResult::method)
      .def_readonly("nll", &FitResult::nll)
      .def_readonly("converged", &FitResult::converged)
      .def_readonly("n_obs", &FitResult::n_obs)
      .def_readonly("iterations", &FitResult::iterations)
      .def_readonly("block_length", &FitResult::block_length)
      .def_readonly("warnings", &FitResult::warnings);

  m.def("cdf", &cdf, py::arg("params"), py::arg("y"), "P(Y <= y)");
  m.def("survival", &survival, py::arg("params"), py::arg("y"), "P(Y > y)");
  m.def("density", &density, py::arg("params"), py::arg("y"));
  m.def("quantile", &quantile, py::arg("params"), py::arg("prob"));
  m.def("return_level", py::overload_cast<const GevParams&, double, double>(&return_level), py::arg("params"),
        py::arg("return_period"), py::arg("block_length") = 1.0);
  m.def("neg_log_likelihood", &neg_log_likelihood, py::arg("params"), py::arg("extremes"));
  m.def("sample", &sample, py::arg("params"), py::arg("n"), py::arg("seed"));

  m.def("annual_maxima", [](std::vector<double> daily_values) {
    return annual_maxima(daily(std::move(daily_values), Variable::Tmax));
  }, py::arg("daily_values"), "January-December maxima of a 365-day-calendar series");
  m.def("annual_minima", [](std::vector<double> daily_values) {
    return annual_minima(daily(std::move(daily_values), Variable::Tmin));
  }, py::arg("daily_values"), "July-June minima of a 365-day-calendar series");
  m.def("multi_year_extremes", &multi_year_extremes, py::arg("extremes"), py::arg("group_size"));

  m.def("fit_ml", [](const BlockExtremes& e) { return fit_ml(e); }, py::arg("extremes"));
  m.def("fit_pwm", &fit_pwm, py::arg("extremes"));
  m.def("pwm_moments", [](const std::vector<double>& v) {
    const PwmMoments pm = pwm_moments(std::span<const double>(v));
    return py::make_tuple(pm.b0, pm.b1, pm.b2);
  }, py::arg("values"));

  m.def(
      "bootstrap_fit",
      [](const BlockExtremes& e, std::size_t n_replicates, std::size_t block_length, std::uint64_t seed,
         FitMethod method, std::vector<double> periods) {
        BootstrapConfig c;
        c.n_replicates = n_replicates;
        c.block_length = block_length;
        c.seed = seed;
        const FitResult point = fit(e, method);
        const BootstrapResult r = bootstrap_fit(e, c, method, periods, point.params);
        py::dict d;
        d["se_mu"] = r.se_mu;
        d["se_log_sigma"] = r.se_log_sigma;
        d["se_sigma"] = r.se_sigma;
        d["se_xi"] = r.se_xi;
        d["se_return_levels"] = r.se_return_levels;
        d["envelope_mu"] = interval(r.env_mu);
        d["envelope_sigma"] = interval(r.env_sigma);
        d["envelope_xi"] = interval(r.env_xi);
        py::list env;
        for (const Interval& i : r.env_return_levels) env.append(interval(i));
        d["envelope_return_levels"] = env;
        d["n_failed"] = r.n_failed;
        d["unreliable"] = r.unreliable;
        return d;
      },
      py::arg("extremes"), py::arg("n_replicates") = 1000, py::arg("block_length") = 1, py::arg("seed") = 0,
      py::arg("method") = FitMethod::ML, py::arg("return_periods") = std::vector<double>{});

  m.def(
      "block_size_diagnostic",
      [](const BlockExtremes& annual, std::size_t n_replicates, std::uint64_t seed, FitMethod method,
         std::vector<int> block_lengths) {
        BlockDiagnosticConfig c;
        c.n_replicates = n_replicates;
        c.seed = seed;
        c.method = method;
        c.block_lengths = std::move(block_lengths);
        return to_python(report::diagnostic_cell(block_size_diagnostic(annual, c), annual.n_blocks(), {}));
      },
      py::arg("annual"), py::arg("n_replicates") = 500, py::arg("seed") = 0, py::arg("method") = FitMethod::ML,
      py::arg("block_lengths") = std::vector<int>{1, 2, 5, 10});

  m.def(
      "segment_experiment",
      [](std::vector<double> a, std::vector<double> b, std::size_t segment_years, std::vector<double> periods,
         FitMethod method, Orientation orientation) {
        const Variable v = orientation == Orientation::Maxima ? Variable::Tmax : Variable::Tmin;
        SegmentOptions o;
        o.segment_years = segment_years;
        o.periods = std::move(periods);
        o.method = method;
        o.orientation = orientation;
        return to_python(report::segment_experiment(segment_experiment(daily(std::move(a), v), daily(std::move(b), v), o)));
      },
      py::arg("daily_a"), py::arg("daily_b"), py::arg("segment_years") = 20,
      py::arg("return_periods") = std::vector<double>{20.0, 50.0, 100.0}, py::arg("method") = FitMethod::ML,
      py::arg("orientation") = Orientation::Maxima);

  m.def(
      "generate_daily",
      [](std::size_t n_years, double mean, double amplitude, double phi, double noise_sd, double winter_sd_scale,
         std::uint64_t seed) {
        SyntheticSpec s;
        s.n_years = n_years;
        s.annual_cycle_mean = mean;
        s.annual_cycle_amplitude = amplitude;
        s.ar1_phi = phi;
        s.noise_sd = noise_sd;
        s.winter_sd_scale = winter_sd_scale;
        s.seed = seed;
        return generate_daily(s).values;
      },
      py::arg("n_years"), py::arg("mean") = 0.0, py::arg("amplitude") = 0.0, py::arg("phi") = 0.0,
      py::arg("noise_sd") = 1.0, py::arg("winter_sd_scale") = 1.0, py::arg("seed") = 0);

  m.def(
      "run_command",
      [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        int code = 0;
        {
          py::gil_scoped_release release;
          code = cli::run_command(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs an `extremes` subcommand; returns (exit_status, stdout, stderr).");
}
