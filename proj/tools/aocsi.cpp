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

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "aocsi/experiment.hpp"

namespace fs = std::filesystem;
using namespace aocsi;

namespace {

struct Options {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> mode;
};

ExperimentConfig load(const Options& o) {
    auto c = o.config.empty() ? parse_config("{}") : load_config(o.config);
    if (!o.out.empty()) c.output_dir = o.out;
    if (o.seed) c.seeds = {*o.seed};
    if (o.mode) c.mode = parse_reward_mode(*o.mode);
    fs::create_directories(c.output_dir);
    return c;
}

std::ofstream open_output(const ExperimentConfig& c, const std::string& name) {
    const auto path = c.output_dir / name;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    std::cout << "wrote " << path.string() << '\n';
    return out;
}

int goodput_curve_cmd(const Options& o) {
    const auto c = load(o);
    const auto curve = goodput_curve(c);
    auto out = open_output(c, "goodput_curve.csv");
    write_curve_csv(out, curve);
    return 0;
}

int solve_cmd(const Options& o) {
    const auto c = load(o);
    const auto report = solve(c);
    open_output(c, "solve.json") << to_json(report) << '\n';
    std::printf("beta %.12g  period %lld  hitting age %lld\n", report.solution.beta,
                static_cast<long long>(report.solution.period),
                static_cast<long long>(report.solution.hitting_age));
    if (report.solution.window_limit_reached)
        std::fprintf(stderr, "warning: index used the longest allowed window (%lld slots)\n",
                     static_cast<long long>(report.solution.window_limit));
    if (!report.oracles_agree()) {
        std::fprintf(stderr, "oracle disagreement: bisection %.3g, brute force %.3g, RVI %.3g\n",
                     report.deviation_bisection_brute_force, report.deviation_bisection_rvi,
                     report.deviation_brute_force_rvi);
        return 1;
    }
    return 0;
}

int sweep_snr_cmd(const Options& o) {
    const auto c = load(o);
    const auto rows = sweep_snr(c);
    auto out = open_output(c, "sweep_snr.csv");
    write_snr_csv(out, rows);
    return 0;
}

int sweep_mobility_cmd(const Options& o) {
    const auto c = load(o);
    const auto rows = sweep_mobility(c);
    auto out = open_output(c, "sweep_mobility.csv");
    write_mobility_csv(out, rows);
    return 0;
}

int simulate_cmd(const Options& o) {
    const auto c = load(o);
    const auto results = simulate(c);
    {
        auto out = open_output(c, "simulate.csv");
        write_simulation_csv(out, results);
    }
    open_output(c, "simulate.json") << to_json(results) << '\n';
    for (const auto& r : results)
        std::printf("seed %llu  %-12s %.6f +- %.6f  pilots %.4f\n",
                    static_cast<unsigned long long>(r.seed), r.policy.c_str(), r.avg_goodput,
                    r.std_error, r.pilot_fraction);
    return 0;
}

int validate_cmd(const Options& o) {
    const auto c = load(o);
    const auto report = validate(c);
    open_output(c, "validate.json") << to_json(report) << '\n';
    for (const auto& ch : report.checks)
        std::printf("%s %-32s %.4g (limit %.4g)  %s\n", ch.passed ? "ok  " : "FAIL",
                    ch.name.c_str(), ch.value, ch.limit, ch.detail.c_str());
    return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pilot scheduling by CSI age: goodput curves, threshold policy, simulation"};
    app.require_subcommand(1);
    Options opts;
    int status = 0;

    auto add = [&](const std::string& name, const std::string& help, int (*fn)(const Options&),
                   bool with_mode) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("-c,--config", opts.config, "JSON config file (defaults if omitted)")
            ->check(CLI::ExistingFile);
        sub->add_option("-o,--out", opts.out, "output directory (overrides output_dir)");
        sub->add_option("--seed", opts.seed, "single seed, overrides simulation.seeds");
        if (with_mode)
            sub->add_option("--mode", opts.mode, "reward mode")
                ->check(CLI::IsMember({"expected", "realized", "analytic"}));
        sub->callback([&status, fn, &opts] { status = fn(opts); });
    };
    add("goodput-curve", "tabulate r(age) to goodput_curve.csv", goodput_curve_cmd, false);
    add("solve", "threshold, period and oracle cross-checks to solve.json", solve_cmd, false);
    add("sweep-snr", "threshold vs periodic baseline over sweep.snr_db", sweep_snr_cmd, true);
    add("sweep-mobility", "threshold vs periodic baseline over sweep.speed", sweep_mobility_cmd,
        true);
    add("simulate", "per-seed closed-loop runs at the configured point", simulate_cmd, true);
    add("validate", "channel, estimator, quadrature and scheduler self-checks", validate_cmd,
        false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return status;
}
