// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "aocsi/channel_model.hpp"
#include "aocsi/experiment.hpp"
#include "aocsi/link_adaptation.hpp"
#include "aocsi/mmse_estimation.hpp"
#include "aocsi/pilot_scheduler.hpp"
#include "aocsi/reward_curve.hpp"
#include "aocsi/sim_engine.hpp"

namespace py = pybind11;
using namespace aocsi;

namespace {

RewardCurve to_curve(const py::object& obj) {
    if (py::isinstance<RewardCurve>(obj)) return obj.cast<RewardCurve>();
    return RewardCurve(obj.cast<std::vector<double>>());
}

py::array_t<double> curve_array(const RewardCurve& c) {
    const auto v = c.values();
    return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Pilot scheduling by CSI age: channel model, MMSE estimation, link adaptation, "
              "threshold scheduler and simulator.";

    py::register_exception<HorizonExhausted>(m, "HorizonExhausted", PyExc_RuntimeError);
    py::register_exception<NotConverged>(m, "NotConverged", PyExc_RuntimeError);

    py::class_<LinkParams>(m, "LinkParams")
        .def(py::init([](double pilot_power, double data_power, double noise_variance,
                         double channel_variance, double doppler_hz, double sample_period_s) {
                 LinkParams p{pilot_power, data_power,  noise_variance,
                              channel_variance, doppler_hz, sample_period_s};
                 p.validate();
                 return p;
             }),
             py::arg("pilot_power") = 1.0, py::arg("data_power") = 1.0,
             py::arg("noise_variance") = 0.01, py::arg("channel_variance") = 1.0,
             py::arg("doppler_hz") = 0.0, py::arg("sample_period_s") = 1e-3)
        .def_readwrite("pilot_power", &LinkParams::pilot_power)
        .def_readwrite("data_power", &LinkParams::data_power)
        .def_readwrite("noise_variance", &LinkParams::noise_variance)
        .def_readwrite("channel_variance", &LinkParams::channel_variance)
        .def_readwrite("doppler_hz", &LinkParams::doppler_hz)
        .def_readwrite("sample_period_s", &LinkParams::sample_period_s)
        .def_property_readonly("normalized_doppler", &LinkParams::normalized_doppler)
        .def("__repr__", [](const LinkParams& p) {
            return "LinkParams(noise_variance=" + std::to_string(p.noise_variance) +
                   ", doppler_hz=" + std::to_string(p.doppler_hz) + ")";
        });

    // channel_model
    m.def("mph_to_mps", &mph_to_mps, py::arg("mph"));
    m.def("doppler_frequency",
          [](double speed_mps, double carrier_hz) {
              return doppler_frequency({speed_mps, carrier_hz});
          },
          py::arg("speed_mps"), py::arg("carrier_hz") = 2.4e9);
    m.def("bessel_j0", py::vectorize(&bessel_j0), py::arg("x"));
    m.def("autocorrelation", &autocorrelation, py::arg("lag"), py::arg("params"));
    m.def("generate_fading_trace",
          [](const LinkParams& p, std::size_t length, std::uint64_t seed) {
              const auto t = generate_fading_trace(p, length, seed);
              const auto s = t.samples();
              return py::array_t<std::complex<double>>(static_cast<py::ssize_t>(s.size()),
                                                       s.data());
          },
          py::arg("params"), py::arg("length"), py::arg("seed"));
    m.def("empirical_autocorrelation",
          [](py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast> x,
             std::size_t max_lag) {
              return empirical_autocorrelation(
                  std::span<const std::complex<double>>(x.data(), static_cast<std::size_t>(x.size())),
                  max_lag);
          },
          py::arg("samples"), py::arg("max_lag"));

    // mmse_estimation
    m.def("mmse_gain", &mmse_gain, py::arg("age"), py::arg("params"));
    m.def("error_variance", &error_variance, py::arg("age"), py::arg("params"));
    m.def("estimate_channel",
          [](std::complex<double> y, std::int64_t age, const LinkParams& p) {
              const auto e = estimate_channel({y, age}, p);
              return py::make_tuple(e.estimate, e.error_variance);
          },
          py::arg("y"), py::arg("age"), py::arg("params"),
          "Returns (h_hat, error_variance).");
    m.def("sinr", &sinr, py::arg("age"), py::arg("y"), py::arg("params"));

    // link_adaptation
    py::class_<McsTable>(m, "McsTable")
        .def_property_readonly("e_max", &McsTable::e_max)
        .def_property_readonly("max_rate", &McsTable::max_rate)
        .def_property_readonly("rates",
                               [](const McsTable& t) {
                                   std::vector<double> r;
                                   for (const auto& e : t.entries()) r.push_back(e.rate);
                                   return r;
                               })
        .def_property_readonly("cqis", [](const McsTable& t) {
            std::vector<int> r;
            for (const auto& e : t.entries()) r.push_back(e.cqi);
            return r;
        });
    m.def("default_mcs_table", &default_mcs_table, py::arg("e_max") = 0.10);
    m.def("load_bler_table",
          [](const std::filesystem::path& path, std::optional<std::filesystem::path> rates) {
              return load_bler_table(path, rates ? load_mcs_rates(*rates) : lte_cqi_rates());
          },
          py::arg("path"), py::arg("rates") = py::none());
    m.def("max_goodput",
          [](double sinr_value, const McsTable& t) {
              const auto c = max_goodput(sinr_value, t);
              py::object cqi = py::none();
              if (c.entry) cqi = py::int_(t.entries()[*c.entry].cqi);
              return py::make_tuple(c.goodput, cqi);
          },
          py::arg("sinr"), py::arg("table"), "Returns (goodput, cqi or None).");
    m.def("expected_goodput",
          [](std::int64_t age, const LinkParams& p, const McsTable& t, int nodes) {
              return expected_goodput(age, p, t, {nodes});
          },
          py::arg("age"), py::arg("params"), py::arg("table"), py::arg("nodes") = 64);

    py::class_<RewardCurve>(m, "RewardCurve")
        .def(py::init([](std::vector<double> v) { return RewardCurve(std::move(v)); }),
             py::arg("values"))
        .def("__call__", &RewardCurve::at, py::arg("age"))
        .def("__len__", &RewardCurve::max_age)
        .def_property_readonly("values", &curve_array)
        .def_property_readonly("fingerprint", &RewardCurve::fingerprint)
        .def("zero_extended", &RewardCurve::zero_extended, py::arg("max_age"));
    m.def("build_reward_curve",
          [](const LinkParams& p, const McsTable& t, std::int64_t max_age, int nodes) {
              return build_reward_curve(p, t, max_age, {nodes});
          },
          py::arg("params"), py::arg("table"), py::arg("max_age") = 1024, py::arg("nodes") = 64);
    m.def("load_reward_csv", &load_reward_csv, py::arg("path"));

    // pilot_scheduler
    py::class_<ThresholdSolution>(m, "ThresholdSolution")
        .def_readonly("beta", &ThresholdSolution::beta)
        .def_readonly("period", &ThresholdSolution::period)
        .def_readonly("hitting_age", &ThresholdSolution::hitting_age)
        .def_readonly("window_limit", &ThresholdSolution::window_limit)
        .def_readonly("iterations", &ThresholdSolution::iterations)
        .def_readonly("window_limit_reached", &ThresholdSolution::window_limit_reached);
    m.def("index_gamma",
          [](std::int64_t age, const py::object& r, std::int64_t w) {
              return index_gamma(age, to_curve(r), w);
          },
          py::arg("age"), py::arg("reward"), py::arg("window_limit") = kDefaultWindowLimit);
    m.def("solve_threshold",
          [](const py::object& r, double tol, std::int64_t w) {
              return solve_threshold(to_curve(r), tol, w);
          },
          py::arg("reward"), py::arg("tol") = 1e-12, py::arg("window_limit") = kDefaultWindowLimit);
    m.def("brute_force_optimal_period",
          [](const py::object& r, std::int64_t max_period) {
              const auto res = brute_force_optimal_period(to_curve(r), max_period);
              return py::make_tuple(res.period, res.average);
          },
          py::arg("reward"), py::arg("max_period") = 200, "Returns (period, average).");
    m.def("relative_value_iteration",
          [](const py::object& r, std::int64_t max_age, double tol) {
              const auto s = relative_value_iteration(to_curve(r), max_age, tol);
              std::vector<bool> pilot;
              for (auto a : s.policy) pilot.push_back(a == Action::kPilot);
              return py::dict(py::arg("gain") = s.gain,
                              py::arg("relative_values") = s.relative_values,
                              py::arg("pilot") = pilot, py::arg("iterations") = s.iterations);
          },
          py::arg("reward"), py::arg("max_age") = 200, py::arg("tol") = 1e-10);

    // sim_engine
    py::class_<SimulationResult>(m, "SimulationResult")
        .def_readonly("policy", &SimulationResult::policy)
        .def_readonly("seed", &SimulationResult::seed)
        .def_readonly("horizon", &SimulationResult::horizon)
        .def_readonly("avg_goodput", &SimulationResult::avg_goodput)
        .def_readonly("pilot_fraction", &SimulationResult::pilot_fraction)
        .def_readonly("pilot_count", &SimulationResult::pilot_count)
        .def_readonly("age_histogram", &SimulationResult::age_histogram)
        .def_readonly("std_error", &SimulationResult::std_error)
        .def_readonly("decoding_std_error", &SimulationResult::decoding_std_error)
        .def_property_readonly("mode",
                               [](const SimulationResult& r) { return std::string(to_string(r.mode)); });

    py::class_<Simulator>(m, "Simulator")
        .def(py::init([](const LinkParams& p, const McsTable& t, std::uint64_t horizon,
                         std::uint64_t seed, std::optional<RewardCurve> curve) {
                 return std::make_unique<Simulator>(p, t, horizon, seed, std::move(curve));
             }),
             py::arg("params"), py::arg("table"), py::arg("horizon"), py::arg("seed"),
             py::arg("reward") = py::none())
        .def("run_periodic",
             [](const Simulator& s, std::int64_t period, const std::string& mode) {
                 py::gil_scoped_release release;
                 return s.run(periodic_policy(period), parse_reward_mode(mode));
             },
             py::arg("period"), py::arg("mode") = "expected")
        .def("run_threshold",
             [](const Simulator& s, const ThresholdSolution& sol, const RewardCurve& curve,
                const std::string& mode) {
                 py::gil_scoped_release release;
                 return s.run(threshold_policy(sol, curve), parse_reward_mode(mode));
             },
             py::arg("solution"), py::arg("reward"), py::arg("mode") = "expected");

    // experiment
    m.def("solve_config",
          [](const std::string& json_text) {
              return py::module_::import("json").attr("loads")(to_json(solve(parse_config(json_text))));
          },
          py::arg("config_json") = "{}", "Solve an operating point given as a JSON config string.");
    m.def("simulate_config",
          [](const std::string& json_text) {
              const auto c = parse_config(json_text);
              std::vector<SimulationResult> r;
              {
                  py::gil_scoped_release release;
                  r = simulate(c);
              }
              return r;
          },
          py::arg("config_json") = "{}");
}
