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

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aocsi/channel_model.hpp"
#include "aocsi/link_adaptation.hpp"
#include "aocsi/pilot_scheduler.hpp"
#include "aocsi/reward_curve.hpp"
#include "aocsi/sim_engine.hpp"

namespace aocsi {

enum class SpeedUnit { kMph, kMps };

/// Experiment settings. Core code stays in SI and linear units; mph and dB
/// are converted here.
struct ExperimentConfig {
    // Link. Exactly one of noise_variance and snr_db is set.
    double pilot_power = 1.0;
    double data_power = 1.0;
    double channel_variance = 1.0;
    std::optional<double> noise_variance;
    std::optional<double> snr_db = 20.0;

    double speed = 15.0;
    SpeedUnit speed_unit = SpeedUnit::kMph;
    double carrier_hz = 2.4e9;
    double sample_period_s = 1e-3;

    // "default" or a path (relative paths resolve against the config file).
    std::string mcs_config = "default";
    std::string bler_table = "default";
    std::optional<std::string> reward_csv;

    std::int64_t max_age = 1024;
    std::int64_t window_limit = kDefaultWindowLimit;
    std::int64_t oracle_max_age = 200;
    int quadrature_nodes = 64;
    double solve_tolerance = 1e-12;
    double oracle_agreement = 1e-6;

    std::uint64_t horizon = 1'000'000;
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
    std::int64_t baseline_period = 2;
    RewardMode mode = RewardMode::kExpected;

    std::vector<double> snr_grid_db;
    std::vector<double> speed_grid;  // in speed_unit

    // validate
    std::uint64_t validation_samples = 1'000'000;
    std::uint64_t quadrature_mc_samples = 10'000'000;
    int random_reward_curves = 20;

    std::filesystem::path output_dir = "out";

    void validate() const;

    LinkParams link_params() const;
    /// Operating point with SNR (dB) and/or speed (config unit) overridden.
    LinkParams link_params_at(std::optional<double> snr_db, std::optional<double> speed) const;
    McsTable mcs_table() const;
    QuadratureConfig quadrature() const { return {quadrature_nodes}; }
};

ExperimentConfig parse_config(std::string_view json_text,
                              const std::filesystem::path& base_dir = {},
                              const std::string& source = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);

double speed_to_mps(double speed, SpeedUnit unit);
double speed_to_mph(double speed, SpeedUnit unit);

/// r(1..max_age) at the configured operating point.
RewardCurve goodput_curve(const ExperimentConfig& config);

/// Reward curve for scheduling: the configured CSV (zero beyond its last row)
/// or the physical curve.
RewardCurve scheduling_curve(const ExperimentConfig& config);

struct SolveReport {
    std::string source;
    ThresholdSolution solution;
    PeriodSearchResult brute_force;
    double rvi_gain = 0.0;
    int rvi_iterations = 0;
    double deviation_bisection_brute_force = 0.0;
    double deviation_bisection_rvi = 0.0;
    double deviation_brute_force_rvi = 0.0;
    double tolerance = 1e-6;

    bool oracles_agree() const;
};

/// Threshold solution plus both optimality oracles on the same curve.
SolveReport solve_with_oracles(const RewardCurve& reward, std::int64_t window_limit,
                               double solve_tolerance, std::int64_t oracle_max_age,
                               double agreement);
SolveReport solve(const ExperimentConfig& config);

struct SweepRow {
    double key = 0.0;  // SNR in dB or speed in mph
    std::string policy;
    double avg_goodput = 0.0;
    double pilot_fraction = 0.0;
    std::int64_t period = 0;
    double std_error = 0.0;  // across-seed standard error of the mean
};

std::vector<SweepRow> sweep_snr(const ExperimentConfig& config);
std::vector<SweepRow> sweep_mobility(const ExperimentConfig& config);

/// Threshold policy and the periodic baseline at the operating point, per seed.
std::vector<SimulationResult> simulate(const ExperimentConfig& config);

struct CheckResult {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double limit = 0.0;
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool passed() const;
};

/// Generator fidelity, MMSE orthogonality, quadrature vs Monte Carlo and the
/// three scheduler oracles.
ValidationReport validate(const ExperimentConfig& config);

void write_curve_csv(std::ostream& out, const RewardCurve& curve);
void write_snr_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void write_mobility_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void write_simulation_csv(std::ostream& out, const std::vector<SimulationResult>& results);
std::string to_json(const SolveReport& report);
std::string to_json(const ValidationReport& report);
std::string to_json(const std::vector<SimulationResult>& results);

}  // namespace aocsi
