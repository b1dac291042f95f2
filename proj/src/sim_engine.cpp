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

#include "aocsi/sim_engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aocsi/mmse_estimation.hpp"
#include "aocsi/random.hpp"

namespace aocsi {

namespace {

constexpr std::size_t kSinrCacheAges = 4096;
constexpr std::uint64_t kBatches = 100;

}  // namespace

std::string_view to_string(RewardMode mode) {
    switch (mode) {
        case RewardMode::kExpected: return "expected";
        case RewardMode::kRealized: return "realized";
        case RewardMode::kAnalytic: return "analytic";
    }
    return "unknown";
}

RewardMode parse_reward_mode(std::string_view text) {
    if (text == "expected") return RewardMode::kExpected;
    if (text == "realized") return RewardMode::kRealized;
    if (text == "analytic") return RewardMode::kAnalytic;
    throw std::invalid_argument("unknown reward mode '" + std::string(text) +
                                "' (expected|realized|analytic)");
}

Policy periodic_policy(std::int64_t period) {
    if (period < 1) throw std::invalid_argument("periodic policy needs period >= 1");
    const auto p = static_cast<std::uint64_t>(period);
    return Policy("periodic-" + std::to_string(period), [p](const SchedulerState& s) {
        return s.slot % p == 0 ? Action::kPilot : Action::kData;
    });
}

Policy threshold_policy(ThresholdSolution solution, RewardCurve reward) {
    return Policy("threshold", [solution, reward = std::move(reward)](const SchedulerState& s) {
        return decide(s.age, solution, reward);
    });
}

Simulator::Simulator(const LinkParams& params, McsTable table, std::uint64_t horizon,
                     std::uint64_t seed, std::optional<RewardCurve> reward)
    : params_(params),
      table_(std::move(table)),
      seed_(seed),
      trace_(generate_fading_trace(params, horizon, seed)),
      reward_(std::move(reward)) {
    if (horizon < kMinHorizon)
        throw std::invalid_argument("simulation horizon must be at least " +
                                    std::to_string(kMinHorizon));
    auto noise_engine = make_engine(seed, Stream::kPilotNoise);
    ComplexGaussian noise(params_.noise_variance);
    pilot_noise_.resize(horizon);
    for (auto& n : pilot_noise_) n = noise(noise_engine);

    auto decode_engine = make_engine(seed, Stream::kDecoding);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    decoding_draws_.resize(horizon);
    for (auto& u : decoding_draws_) u = uniform(decode_engine);

    sinr_gain_cache_.resize(kSinrCacheAges + 1);
    for (std::size_t age = 0; age <= kSinrCacheAges; ++age)
        sinr_gain_cache_[age] = sinr_gain(static_cast<std::int64_t>(age), params_);
}

double Simulator::data_sinr_gain(std::int64_t age) const {
    const auto a = static_cast<std::size_t>(age);
    return a < sinr_gain_cache_.size() ? sinr_gain_cache_[a] : sinr_gain(age, params_);
}

StepOutcome Simulator::step(const SchedulerState& state, Action action, RewardMode mode) const {
    if (state.slot >= trace_.size())
        throw std::out_of_range("slot " + std::to_string(state.slot) + " beyond the fading trace");
    StepOutcome out;
    out.state = state;
    out.state.slot = state.slot + 1;

    if (action == Action::kPilot) {
        const auto t = static_cast<std::size_t>(state.slot);
        out.state.last_pilot = std::sqrt(params_.pilot_power) * trace_[t] + pilot_noise_[t];
        out.state.has_pilot = true;
        out.state.age = 1;
        return out;
    }

    if (!state.has_pilot)
        throw std::logic_error("data slot scheduled before the first pilot of the run");
    out.state.age = state.age + 1;

    if (mode == RewardMode::kAnalytic) {
        if (!reward_) throw std::logic_error("analytic reward mode needs a reward curve");
        out.reward = reward_->at(state.age);
        return out;
    }

    const double eta = data_sinr_gain(state.age) * std::norm(state.last_pilot);
    const auto choice = max_goodput(eta, table_);
    if (!choice.entry) return out;
    const auto& entry = table_.entries()[*choice.entry];
    const double success = 1.0 - bler(eta, entry);
    out.decoding_variance = entry.rate * entry.rate * success * (1.0 - success);
    if (mode == RewardMode::kExpected) {
        out.reward = choice.goodput;
    } else {
        const bool decoded = decoding_draws_[static_cast<std::size_t>(state.slot)] < success;
        out.reward = decoded ? entry.rate : 0.0;
    }
    return out;
}

SimulationResult Simulator::run(const Policy& policy, RewardMode mode,
                                std::optional<std::uint64_t> horizon) const {
    const std::uint64_t n = horizon.value_or(trace_.size());
    if (n < kMinHorizon)
        throw std::invalid_argument("simulation horizon must be at least " +
                                    std::to_string(kMinHorizon));
    if (n > trace_.size())
        throw std::invalid_argument("horizon " + std::to_string(n) +
                                    " exceeds the fading trace length " +
                                    std::to_string(trace_.size()));

    SimulationResult result;
    result.policy = policy.name();
    result.mode = mode;
    result.seed = seed_;
    result.horizon = n;

    const std::uint64_t batch = n / kBatches;
    std::vector<double> batch_sums(kBatches, 0.0);
    double total = 0.0;
    double decoding_variance = 0.0;

    SchedulerState state;
    for (std::uint64_t t = 0; t < n; ++t) {
        const Action action = t == 0 ? Action::kPilot : policy(state);
        ++result.age_histogram[state.age];
        if (action == Action::kPilot) ++result.pilot_count;
        const auto out = step(state, action, mode);
        total += out.reward;
        decoding_variance += out.decoding_variance;
        if (t / batch < kBatches) batch_sums[t / batch] += out.reward;
        state = out.state;
    }

    result.avg_goodput = total / static_cast<double>(n);
    result.pilot_fraction = static_cast<double>(result.pilot_count) / static_cast<double>(n);
    result.decoding_std_error = std::sqrt(decoding_variance) / static_cast<double>(n);

    double mean = 0.0;
    for (auto& s : batch_sums) mean += (s /= static_cast<double>(batch));
    mean /= static_cast<double>(kBatches);
    double var = 0.0;
    for (double s : batch_sums) var += (s - mean) * (s - mean);
    var /= static_cast<double>(kBatches - 1);
    result.std_error = std::sqrt(var / static_cast<double>(kBatches));
    return result;
}

SimulationResult run_policy(const Policy& policy, const LinkParams& params, const McsTable& table,
                            std::uint64_t horizon, std::uint64_t seed, RewardMode mode,
                            std::optional<RewardCurve> reward) {
    if (horizon < kMinHorizon)
        throw std::invalid_argument("simulation horizon must be at least " +
                                    std::to_string(kMinHorizon));
    Simulator sim(params, table, horizon, seed, std::move(reward));
    return sim.run(policy, mode);
}

}  // namespace aocsi
