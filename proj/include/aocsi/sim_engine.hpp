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

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aocsi/channel_model.hpp"
#include "aocsi/link_adaptation.hpp"
#include "aocsi/pilot_scheduler.hpp"
#include "aocsi/reward_curve.hpp"

namespace aocsi {

/// How a data slot is scored.
///  - kExpected: R (1 - bler(eta)) for the SINR implied by the stored pilot.
///  - kRealized: R on a Bernoulli(1 - bler) decoding success, else 0.
///  - kAnalytic: r(age) from a reward curve, i.e. also averaged over the pilot.
enum class RewardMode { kExpected, kRealized, kAnalytic };

std::string_view to_string(RewardMode mode);
RewardMode parse_reward_mode(std::string_view text);

struct SchedulerState {
    std::int64_t age = 1;  // slots since the last pilot
    std::complex<double> last_pilot{};
    std::uint64_t slot = 0;
    bool has_pilot = false;
};

struct StepOutcome {
    SchedulerState state;
    double reward = 0.0;
    double decoding_variance = 0.0;  // R^2 p (1 - p) of this slot's decoding draw
};

/// A named decision rule mapping the closed-loop state to an action.
class Policy {
public:
    using Rule = std::function<Action(const SchedulerState&)>;

    Policy(std::string name, Rule rule) : name_(std::move(name)), rule_(std::move(rule)) {}

    Action operator()(const SchedulerState& state) const { return rule_(state); }
    const std::string& name() const { return name_; }

private:
    std::string name_;
    Rule rule_;
};

/// Open loop: pilot at slots t with t % period == 0.
Policy periodic_policy(std::int64_t period);

/// Closed loop on the age only: pilot iff gamma(age) <= beta.
Policy threshold_policy(ThresholdSolution solution, RewardCurve reward);

struct SimulationResult {
    std::string policy;
    RewardMode mode = RewardMode::kExpected;
    std::uint64_t seed = 0;
    std::uint64_t horizon = 0;
    double avg_goodput = 0.0;
    double pilot_fraction = 0.0;
    std::uint64_t pilot_count = 0;
    std::map<std::int64_t, std::uint64_t> age_histogram;
    /// Batch-means standard error of avg_goodput.
    double std_error = 0.0;
    /// Standard error from decoding draws alone, sqrt(sum R^2 p (1-p)) / horizon.
    double decoding_std_error = 0.0;
};

/// One closed-loop experiment: a fading trace plus per-slot pilot noise and
/// decoding draws, all fixed by the seed. Every policy run on the same
/// simulator sees the same random numbers.
class Simulator {
public:
    Simulator(const LinkParams& params, McsTable table, std::uint64_t horizon, std::uint64_t seed,
              std::optional<RewardCurve> reward = std::nullopt);

    StepOutcome step(const SchedulerState& state, Action action, RewardMode mode) const;

    /// Runs `policy` for `horizon` slots (default: the full trace). Slot 0 is
    /// always a pilot.
    SimulationResult run(const Policy& policy, RewardMode mode,
                         std::optional<std::uint64_t> horizon = std::nullopt) const;

    const FadingTrace& trace() const { return trace_; }
    const LinkParams& params() const { return params_; }
    const McsTable& table() const { return table_; }
    std::uint64_t seed() const { return seed_; }

private:
    double data_sinr_gain(std::int64_t age) const;

    LinkParams params_;
    McsTable table_;
    std::uint64_t seed_;
    FadingTrace trace_;
    std::vector<std::complex<double>> pilot_noise_;
    std::vector<double> decoding_draws_;
    std::vector<double> sinr_gain_cache_;
    std::optional<RewardCurve> reward_;
};

inline constexpr std::uint64_t kMinHorizon = 1000;

SimulationResult run_policy(const Policy& policy, const LinkParams& params, const McsTable& table,
                            std::uint64_t horizon, std::uint64_t seed, RewardMode mode,
                            std::optional<RewardCurve> reward = std::nullopt);

}  // namespace aocsi
