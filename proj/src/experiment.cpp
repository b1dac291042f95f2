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

#include "aocsi/experiment.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "aocsi/mmse_estimation.hpp"
#include "aocsi/oracles.hpp"
#include "aocsi/random.hpp"

namespace aocsi {

using nlohmann::json;

namespace {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void reject_unknown(const json& obj, const std::string& where, std::set<std::string> allowed) {
    if (!obj.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key)) throw ConfigError(where + "." + key + ": unknown field");
}

template <typename T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
    if (!obj.contains(key)) return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(where + "." + key + ": " + e.what());
    }
}

std::string resolve(const std::string& value, const std::filesystem::path& base) {
    if (value == "default" || base.empty()) return value;
    const std::filesystem::path p(value);
    return p.is_absolute() ? value : (base / p).string();
}

// Runs fn(0..n-1) on up to hardware_concurrency workers; results keep index order.
template <typename Fn>
auto parallel_map(std::size_t n, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
    using R = decltype(fn(std::size_t{}));
    std::vector<R> out;
    out.reserve(n);
    const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    for (std::size_t start = 0; start < n; start += workers) {
        std::vector<std::future<R>> batch;
        for (std::size_t i = start; i < std::min(n, start + workers); ++i)
            batch.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred,
                                       fn, i));
        for (auto& f : batch) out.push_back(f.get());
    }
    return out;
}

json result_json(const SimulationResult& r) {
    json hist = json::object();
    for (const auto& [age, count] : r.age_histogram) hist[std::to_string(age)] = count;
    return {{"policy", r.policy},
            {"mode", std::string(to_string(r.mode))},
            {"seed", r.seed},
            {"horizon", r.horizon},
            {"avg_goodput", r.avg_goodput},
            {"pilot_fraction", r.pilot_fraction},
            {"pilot_count", r.pilot_count},
            {"std_error", r.std_error},
            {"decoding_std_error", r.decoding_std_error},
            {"age_histogram", hist}};
}

struct PointResult {
    std::int64_t period = 1;
    std::vector<SweepRow> rows;
};

PointResult simulate_point(const ExperimentConfig& config, const LinkParams& params, double key) {
    const auto table = config.mcs_table();
    const auto curve = build_reward_curve(params, table, config.max_age, config.quadrature());
    const auto sol = solve_threshold(curve, config.solve_tolerance, config.window_limit);
    const std::vector<Policy> policies{threshold_policy(sol, curve),
                                       periodic_policy(config.baseline_period)};
    std::vector<std::vector<double>> goodput(policies.size());
    std::vector<double> pilot_fraction(policies.size(), 0.0);
    for (const auto seed : config.seeds) {
        Simulator sim(params, table, config.horizon, seed, curve);
        for (std::size_t i = 0; i < policies.size(); ++i) {
            const auto r = sim.run(policies[i], config.mode);
            goodput[i].push_back(r.avg_goodput);
            pilot_fraction[i] += r.pilot_fraction;
        }
    }
    PointResult out;
    out.period = sol.period;
    const double n = static_cast<double>(config.seeds.size());
    for (std::size_t i = 0; i < policies.size(); ++i) {
        double mean = 0.0;
        for (double g : goodput[i]) mean += g;
        mean /= n;
        double var = 0.0;
        for (double g : goodput[i]) var += (g - mean) * (g - mean);
        const double se = n > 1 ? std::sqrt(var / (n - 1.0) / n) : 0.0;
        out.rows.push_back({key, policies[i].name(), mean, pilot_fraction[i] / n,
                            i == 0 ? sol.period : config.baseline_period, se});
    }
    return out;
}

}  // namespace

double speed_to_mps(double speed, SpeedUnit unit) {
    return unit == SpeedUnit::kMph ? mph_to_mps(speed) : speed;
}

double speed_to_mph(double speed, SpeedUnit unit) {
    return unit == SpeedUnit::kMph ? speed : speed / kMetersPerSecondPerMph;
}

void ExperimentConfig::validate() const {
    if (noise_variance.has_value() == snr_db.has_value())
        throw ConfigError("link: give exactly one of noise_variance and snr_db");
    if (max_age < 1) throw ConfigError("scheduler.max_age must be positive");
    if (window_limit < 1) throw ConfigError("scheduler.window_limit must be positive");
    if (max_age <= window_limit)
        throw ConfigError("scheduler.max_age must exceed scheduler.window_limit");
    if (oracle_max_age < 2) throw ConfigError("scheduler.oracle_max_age must be at least 2");
    if (quadrature_nodes < 8) throw ConfigError("scheduler.quadrature_nodes must be at least 8");
    if (!(solve_tolerance > 0.0)) throw ConfigError("scheduler.tolerance must be positive");
    if (horizon < kMinHorizon)
        throw ConfigError("simulation.horizon must be at least " + std::to_string(kMinHorizon));
    if (seeds.empty()) throw ConfigError("simulation.seeds must not be empty");
    if (baseline_period < 1) throw ConfigError("simulation.baseline_period must be positive");
    link_params().validate();
}

LinkParams ExperimentConfig::link_params() const { return link_params_at(std::nullopt, std::nullopt); }

LinkParams ExperimentConfig::link_params_at(std::optional<double> snr_override,
                                            std::optional<double> speed_override) const {
    LinkParams p;
    p.pilot_power = pilot_power;
    p.data_power = data_power;
    p.channel_variance = channel_variance;
    p.sample_period_s = sample_period_s;
    if (snr_override) {
        p.noise_variance = data_power * channel_variance / std::pow(10.0, *snr_override / 10.0);
    } else if (snr_db) {
        p.noise_variance = data_power * channel_variance / std::pow(10.0, *snr_db / 10.0);
    } else {
        p.noise_variance = noise_variance.value_or(0.0);
    }
    const double v = speed_to_mps(speed_override.value_or(speed), speed_unit);
    p.doppler_hz = doppler_frequency({v, carrier_hz});
    return p;
}

McsTable ExperimentConfig::mcs_table() const {
    const McsRates rates = mcs_config == "default" ? lte_cqi_rates() : load_mcs_rates(mcs_config);
    if (bler_table == "default") {
        auto table = default_mcs_table(rates.e_max);
        if (mcs_config == "default") return table;
        // Custom rates over the default curves.
        std::vector<McsEntry> entries;
        for (const auto& e : table.entries()) {
            const auto it = rates.rate_by_cqi.find(e.cqi);
            if (it != rates.rate_by_cqi.end()) entries.push_back({e.cqi, it->second, e.curve});
        }
        return McsTable(std::move(entries), rates.e_max);
    }
    return load_bler_table(bler_table, rates);
}

ExperimentConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir,
                              const std::string& source) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(source + ": " + e.what());
    }
    ExperimentConfig c;
    const std::string root = source;
    reject_unknown(doc, root,
                   {"link", "mobility", "sample_period_s", "mcs", "reward_csv", "scheduler",
                    "simulation", "sweep", "validation", "output_dir"});

    if (doc.contains("link")) {
        const auto& link = doc["link"];
        const auto where = root + ".link";
        reject_unknown(link, where,
                       {"pilot_power", "data_power", "channel_variance", "noise_variance", "snr_db"});
        read(link, "pilot_power", c.pilot_power, where);
        read(link, "data_power", c.data_power, where);
        read(link, "channel_variance", c.channel_variance, where);
        if (link.contains("noise_variance") || link.contains("snr_db")) {
            c.snr_db.reset();
            if (link.contains("noise_variance")) {
                double v = 0.0;
                read(link, "noise_variance", v, where);
                c.noise_variance = v;
            }
            if (link.contains("snr_db")) {
                double v = 0.0;
                read(link, "snr_db", v, where);
                c.snr_db = v;
            }
        }
    }
    if (doc.contains("mobility")) {
        const auto& mob = doc["mobility"];
        const auto where = root + ".mobility";
        reject_unknown(mob, where, {"speed", "unit", "carrier_hz"});
        read(mob, "speed", c.speed, where);
        read(mob, "carrier_hz", c.carrier_hz, where);
        std::string unit = "mph";
        read(mob, "unit", unit, where);
        if (unit == "mph") c.speed_unit = SpeedUnit::kMph;
        else if (unit == "mps" || unit == "m/s") c.speed_unit = SpeedUnit::kMps;
        else throw ConfigError(where + ".unit: expected mph or mps, got '" + unit + "'");
    }
    read(doc, "sample_period_s", c.sample_period_s, root);
    if (doc.contains("mcs")) {
        const auto& mcs = doc["mcs"];
        const auto where = root + ".mcs";
        reject_unknown(mcs, where, {"rates", "bler_table"});
        read(mcs, "rates", c.mcs_config, where);
        read(mcs, "bler_table", c.bler_table, where);
        c.mcs_config = resolve(c.mcs_config, base_dir);
        c.bler_table = resolve(c.bler_table, base_dir);
    }
    if (doc.contains("reward_csv")) {
        std::string path;
        read(doc, "reward_csv", path, root);
        c.reward_csv = resolve(path, base_dir);
    }
    if (doc.contains("scheduler")) {
        const auto& s = doc["scheduler"];
        const auto where = root + ".scheduler";
        reject_unknown(s, where,
                       {"max_age", "window_limit", "oracle_max_age", "quadrature_nodes",
                        "tolerance", "oracle_agreement"});
        read(s, "max_age", c.max_age, where);
        read(s, "window_limit", c.window_limit, where);
        read(s, "oracle_max_age", c.oracle_max_age, where);
        read(s, "quadrature_nodes", c.quadrature_nodes, where);
        read(s, "tolerance", c.solve_tolerance, where);
        read(s, "oracle_agreement", c.oracle_agreement, where);
    }
    if (doc.contains("simulation")) {
        const auto& s = doc["simulation"];
        const auto where = root + ".simulation";
        reject_unknown(s, where, {"horizon", "seeds", "baseline_period", "mode"});
        read(s, "horizon", c.horizon, where);
        read(s, "seeds", c.seeds, where);
        read(s, "baseline_period", c.baseline_period, where);
        std::string mode(to_string(c.mode));
        read(s, "mode", mode, where);
        try {
            c.mode = parse_reward_mode(mode);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(where + ".mode: " + e.what());
        }
    }
    if (doc.contains("sweep")) {
        const auto& s = doc["sweep"];
        const auto where = root + ".sweep";
        reject_unknown(s, where, {"snr_db", "speed"});
        read(s, "snr_db", c.snr_grid_db, where);
        read(s, "speed", c.speed_grid, where);
    }
    if (doc.contains("validation")) {
        const auto& s = doc["validation"];
        const auto where = root + ".validation";
        reject_unknown(s, where, {"samples", "quadrature_mc_samples", "random_reward_curves"});
        read(s, "samples", c.validation_samples, where);
        read(s, "quadrature_mc_samples", c.quadrature_mc_samples, where);
        read(s, "random_reward_curves", c.random_reward_curves, where);
    }
    if (doc.contains("output_dir")) {
        std::string out;
        read(doc, "output_dir", out, root);
        c.output_dir = out;
    }
    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(source + ": " + e.what());
    } catch (const ConfigError& e) {
        throw ConfigError(source + ": " + e.what());
    }
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path.parent_path(), path.string());
}

RewardCurve goodput_curve(const ExperimentConfig& config) {
    return build_reward_curve(config.link_params(), config.mcs_table(), config.max_age,
                              config.quadrature());
}

RewardCurve scheduling_curve(const ExperimentConfig& config) {
    if (config.reward_csv) {
        const auto csv = load_reward_csv(*config.reward_csv);
        return csv.zero_extended(std::max(config.max_age, csv.max_age() + config.window_limit));
    }
    return goodput_curve(config);
}

bool SolveReport::oracles_agree() const {
    return deviation_bisection_brute_force <= tolerance && deviation_bisection_rvi <= tolerance &&
           deviation_brute_force_rvi <= tolerance;
}

SolveReport solve_with_oracles(const RewardCurve& reward, std::int64_t window_limit,
                               double solve_tolerance, std::int64_t oracle_max_age,
                               double agreement) {
    SolveReport report;
    report.source = reward.fingerprint();
    report.tolerance = agreement;
    report.solution = solve_threshold(reward, solve_tolerance, window_limit);
    report.brute_force =
        brute_force_optimal_period(reward, std::min(oracle_max_age, reward.max_age() + 1));
    const auto mdp = relative_value_iteration(reward, std::min(oracle_max_age, reward.max_age()),
                                              agreement * 1e-3);
    report.rvi_gain = mdp.gain;
    report.rvi_iterations = mdp.iterations;
    report.deviation_bisection_brute_force =
        std::abs(report.solution.beta - report.brute_force.average);
    report.deviation_bisection_rvi = std::abs(report.solution.beta - report.rvi_gain);
    report.deviation_brute_force_rvi = std::abs(report.brute_force.average - report.rvi_gain);
    return report;
}

SolveReport solve(const ExperimentConfig& config) {
    return solve_with_oracles(scheduling_curve(config), config.window_limit,
                              config.solve_tolerance, config.oracle_max_age,
                              config.oracle_agreement);
}

std::vector<SweepRow> sweep_snr(const ExperimentConfig& config) {
    if (config.snr_grid_db.empty()) throw ConfigError("sweep.snr_db grid is empty");
    auto grid = config.snr_grid_db;
    std::sort(grid.begin(), grid.end());
    const auto points = parallel_map(grid.size(), [&](std::size_t i) {
        return simulate_point(config, config.link_params_at(grid[i], std::nullopt), grid[i]);
    });
    std::vector<SweepRow> rows;
    for (const auto& p : points) rows.insert(rows.end(), p.rows.begin(), p.rows.end());
    return rows;
}

std::vector<SweepRow> sweep_mobility(const ExperimentConfig& config) {
    if (config.speed_grid.empty()) throw ConfigError("sweep.speed grid is empty");
    auto grid = config.speed_grid;
    std::sort(grid.begin(), grid.end());
    for (double v : grid) {
        try {
            config.link_params_at(std::nullopt, v).validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError("speed grid point " + std::to_string(v) + ": " + e.what());
        }
    }
    const auto points = parallel_map(grid.size(), [&](std::size_t i) {
        return simulate_point(config, config.link_params_at(std::nullopt, grid[i]),
                              speed_to_mph(grid[i], config.speed_unit));
    });
    std::vector<SweepRow> rows;
    for (const auto& p : points) rows.insert(rows.end(), p.rows.begin(), p.rows.end());
    return rows;
}

std::vector<SimulationResult> simulate(const ExperimentConfig& config) {
    const auto params = config.link_params();
    const auto table = config.mcs_table();
    const auto curve = build_reward_curve(params, table, config.max_age, config.quadrature());
    const auto sol = solve_threshold(curve, config.solve_tolerance, config.window_limit);
    const std::vector<Policy> policies{threshold_policy(sol, curve),
                                       periodic_policy(config.baseline_period)};
    auto per_seed = parallel_map(config.seeds.size(), [&](std::size_t i) {
        Simulator sim(params, table, config.horizon, config.seeds[i], curve);
        std::vector<SimulationResult> out;
        for (const auto& p : policies) out.push_back(sim.run(p, config.mode));
        return out;
    });
    std::vector<SimulationResult> results;
    for (auto& v : per_seed) results.insert(results.end(), v.begin(), v.end());
    return results;
}

bool ValidationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

ValidationReport validate(const ExperimentConfig& config) {
    ValidationReport report;
    const std::uint64_t seed = config.seeds.front();

    std::optional<McsTable> table;
    try {
        table = config.mcs_table();
        report.checks.push_back({"mcs_table", true, static_cast<double>(table->entries().size()),
                                 0.0, "loaded " + std::to_string(table->entries().size()) +
                                          " MCS entries"});
    } catch (const std::exception& e) {
        report.checks.push_back({"mcs_table", false, 0.0, 0.0, e.what()});
    }

    const auto params = config.link_params();
    const double rho0 = params.channel_variance;

    {
        const std::size_t max_lag = 100;
        const auto trace = generate_fading_trace(params, config.validation_samples, seed);
        const auto acf = empirical_autocorrelation(trace, max_lag);
        double sq = 0.0;
        for (std::size_t k = 0; k <= max_lag; ++k) {
            const double d = acf[k] - autocorrelation(static_cast<std::int64_t>(k), params);
            sq += d * d;
        }
        const double rmse = std::sqrt(sq / static_cast<double>(max_lag + 1));
        std::ostringstream detail;
        detail << "lags 0..100 at f_d*T_s = " << params.normalized_doppler();
        report.checks.push_back({"autocorrelation_fidelity", rmse <= 0.02 * rho0, rmse, 0.02 * rho0,
                                 detail.str()});
        const double lag0 = std::abs(acf[0] - rho0);
        report.checks.push_back(
            {"trace_power", lag0 <= 0.01 * rho0, lag0, 0.01 * rho0, "|lag-0 power - rho0|"});
    }

    for (const std::int64_t age : {1, 5, 10}) {
        const auto stat = mmse_orthogonality(age, params, config.validation_samples, seed + age);
        const double mag = std::abs(stat.cross_mean);
        report.checks.push_back({"mmse_orthogonality_age_" + std::to_string(age),
                                 mag <= 3.0 * stat.cross_std_error, mag,
                                 3.0 * stat.cross_std_error, "|mean(h_hat conj(h_err))|"});
        const double gap = std::abs(stat.estimate_power + stat.error_variance - rho0);
        report.checks.push_back({"variance_decomposition_age_" + std::to_string(age),
                                 gap <= 3.0 * stat.estimate_power_std_error, gap,
                                 3.0 * stat.estimate_power_std_error,
                                 "|E|h_hat|^2 + error variance - rho0|"});
    }

    if (table) {
        auto engine = make_engine(seed, Stream::kOracle);
        std::uniform_real_distribution<double> snr(0.0, 25.0);
        std::uniform_real_distribution<double> speed(2.0, 60.0);
        std::uniform_int_distribution<int> age(1, 6);
        double worst = 0.0;
        int points = 0;
        std::ostringstream detail;
        for (int attempt = 0; points < 10 && attempt < 1000; ++attempt) {
            const double s = snr(engine);
            const double v = speed(engine);
            const int a = age(engine);
            const auto p = config.link_params_at(s, v * (config.speed_unit == SpeedUnit::kMph
                                                             ? 1.0
                                                             : kMetersPerSecondPerMph));
            const double quad = expected_goodput(a, p, *table, config.quadrature());
            if (quad < 0.2) continue;  // skip rare-event regimes
            const auto mc = monte_carlo_expected_goodput(a, p, *table, config.quadrature_mc_samples,
                                                         seed * 1000 + static_cast<std::uint64_t>(points));
            const double rel = std::abs(quad - mc.mean) / mc.mean;
            worst = std::max(worst, rel);
            detail << (points ? "; " : "") << "age " << a << " snr " << std::setprecision(4) << s
                   << " dB: " << rel;
            ++points;
        }
        report.checks.push_back(
            {"quadrature_vs_monte_carlo", points == 10 && worst <= 1e-3, worst, 1e-3, detail.str()});
    }

    {
        auto engine = make_engine(seed + 17, Stream::kOracle);
        std::uniform_int_distribution<int> length(1, 50);
        std::uniform_real_distribution<double> value(0.0, 5.0);
        std::bernoulli_distribution zero(0.3);
        double worst = 0.0;
        for (int i = 0; i < config.random_reward_curves; ++i) {
            std::vector<double> r(static_cast<std::size_t>(length(engine)));
            for (auto& x : r) x = zero(engine) ? 0.0 : value(engine);
            const RewardCurve curve(std::move(r), "random");
            const auto rep = solve_with_oracles(curve.zero_extended(config.window_limit + 64),
                                                config.window_limit, config.solve_tolerance,
                                                config.oracle_max_age, config.oracle_agreement);
            worst = std::max({worst, rep.deviation_bisection_brute_force,
                              rep.deviation_bisection_rvi, rep.deviation_brute_force_rvi});
        }
        if (table) {
            const auto curve = build_reward_curve(params, *table, config.max_age, config.quadrature());
            const auto rep = solve_with_oracles(curve, config.window_limit, config.solve_tolerance,
                                                config.oracle_max_age, config.oracle_agreement);
            worst = std::max({worst, rep.deviation_bisection_brute_force,
                              rep.deviation_bisection_rvi, rep.deviation_brute_force_rvi});
        }
        report.checks.push_back({"scheduler_oracles", worst <= config.oracle_agreement, worst,
                                 config.oracle_agreement,
                                 std::to_string(config.random_reward_curves) +
                                     " random curves plus the configured operating point"});
    }
    return report;
}

void write_curve_csv(std::ostream& out, const RewardCurve& curve) { write_reward_csv(out, curve); }

void write_snr_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "snr_db,policy,avg_goodput,pilot_fraction\n" << std::setprecision(12);
    for (const auto& r : rows)
        out << r.key << ',' << r.policy << ',' << r.avg_goodput << ',' << r.pilot_fraction << '\n';
}

void write_mobility_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "speed_mph,policy,avg_goodput,period\n" << std::setprecision(12);
    for (const auto& r : rows)
        out << r.key << ',' << r.policy << ',' << r.avg_goodput << ',' << r.period << '\n';
}

void write_simulation_csv(std::ostream& out, const std::vector<SimulationResult>& results) {
    out << "seed,policy,mode,avg_goodput,pilot_fraction,std_error,horizon\n"
        << std::setprecision(12);
    for (const auto& r : results)
        out << r.seed << ',' << r.policy << ',' << to_string(r.mode) << ',' << r.avg_goodput << ','
            << r.pilot_fraction << ',' << r.std_error << ',' << r.horizon << '\n';
}

std::string to_json(const SolveReport& report) {
    const json doc = {
        {"source", report.source},
        {"beta", report.solution.beta},
        {"period", report.solution.period},
        {"hitting_age", report.solution.hitting_age},
        {"bisection_iterations", report.solution.iterations},
        {"window_limit", report.solution.window_limit},
        {"window_limit_reached", report.solution.window_limit_reached},
        {"brute_force", {{"period", report.brute_force.period},
                         {"average", report.brute_force.average}}},
        {"relative_value_iteration", {{"gain", report.rvi_gain},
                                      {"iterations", report.rvi_iterations}}},
        {"deviations", {{"bisection_vs_brute_force", report.deviation_bisection_brute_force},
                        {"bisection_vs_rvi", report.deviation_bisection_rvi},
                        {"brute_force_vs_rvi", report.deviation_brute_force_rvi}}},
        {"tolerance", report.tolerance},
        {"oracles_agree", report.oracles_agree()}};
    return doc.dump(2);
}

std::string to_json(const ValidationReport& report) {
    json checks = json::array();
    for (const auto& c : report.checks)
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"value", c.value},
                          {"limit", c.limit}, {"detail", c.detail}});
    return json{{"passed", report.passed()}, {"checks", checks}}.dump(2);
}

std::string to_json(const std::vector<SimulationResult>& results) {
    json arr = json::array();
    for (const auto& r : results) arr.push_back(result_json(r));
    return arr.dump(2);
}

}  // namespace aocsi
