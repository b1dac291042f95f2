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
#include <stdexcept>
#include <vector>

#include "aocsi/reward_curve.hpp"

namespace aocsi {

enum class Action { kPilot, kData };

inline constexpr std::int64_t kDefaultWindowLimit = 512;
inline constexpr int kBisectionIterationCap = 200;

/// No age within the tabulated curve satisfies gamma(age) <= beta.
class HorizonExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotConverged : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Optimal threshold policy. One cycle lasts `period` slots: data at ages
/// 1..period-1, then a pilot at age `period`.
struct ThresholdSolution {
    double beta = 0.0;  // optimal long-run average goodput
    std::int64_t hitting_age = 1;
    std::int64_t period = 1;
    std::int64_t window_limit = kDefaultWindowLimit;
    int iterations = 0;
    /// Some index evaluation picked the longest allowed window, so the
    /// truncated supremum may understate the true index.
    bool window_limit_reached = false;
};

struct PeriodSearchResult {
    std::int64_t period = 1;
    double average = 0.0;
};

struct MdpSolution {
    double gain = 0.0;
    std::vector<double> relative_values;  // h(1..max_age), h(1) = 0
    std::vector<Action> policy;           // greedy action per age 1..max_age
    int iterations = 0;
};

struct IndexValue {
    double value = 0.0;
    std::int64_t window = 1;  // maximising tau
};

/// gamma(age) = max_{1 <= tau <= window_limit} (1/tau) sum_{k<tau} r(age + k).
/// Throws std::out_of_range if the window runs past the tabulated curve.
double index_gamma(std::int64_t age, const RewardCurve& reward,
                   std::int64_t window_limit = kDefaultWindowLimit);
IndexValue index_gamma_detail(std::int64_t age, const RewardCurve& reward,
                              std::int64_t window_limit = kDefaultWindowLimit);

/// Smallest age >= 1 with gamma(age) <= beta. Throws HorizonExhausted.
std::int64_t hitting_age(double beta, const RewardCurve& reward,
                         std::int64_t window_limit = kDefaultWindowLimit);

/// Bisection for the root of g(beta) = sum_{k=1}^{H(beta)-1} r(k) - beta H(beta),
/// H = hitting_age, over [0, max r]. The returned beta is polished to the exact
/// cycle average of the returned period.
ThresholdSolution solve_threshold(const RewardCurve& reward, double tol = 1e-12,
                                  std::int64_t window_limit = kDefaultWindowLimit);

/// Exhaustive search of (sum_{k=1}^{p-1} r(k)) / p over p = 1..max_period.
PeriodSearchResult brute_force_optimal_period(const RewardCurve& reward, std::int64_t max_period);

/// Relative value iteration on the age MDP truncated at max_age (data at
/// max_age stays at max_age). Uses the aperiodicity transform
/// P' = (1 - a) I + a P, which keeps the gain and optimal policies.
MdpSolution relative_value_iteration(const RewardCurve& reward, std::int64_t max_age,
                                     double tol = 1e-10, int max_iterations = 5'000'000);

/// Pilot iff gamma(age) <= beta. Ages outside the tabulated index range fall
/// back to a pilot. Uses the window limit the solution was computed with.
Action decide(std::int64_t age, const ThresholdSolution& solution, const RewardCurve& reward);

}  // namespace aocsi
