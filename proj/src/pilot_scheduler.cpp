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

#include "aocsi/pilot_scheduler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

namespace aocsi {

namespace {

void check_window(std::int64_t window_limit) {
    if (window_limit < 1) throw std::invalid_argument("window limit must be at least 1");
}

// prefix[k] = r(1) + ... + r(k), prefix[0] = 0.
std::vector<double> prefix_sums(const RewardCurve& reward) {
    std::vector<double> prefix(static_cast<std::size_t>(reward.max_age()) + 1, 0.0);
    for (std::int64_t k = 1; k <= reward.max_age(); ++k)
        prefix[static_cast<std::size_t>(k)] = prefix[static_cast<std::size_t>(k - 1)] + reward(k);
    return prefix;
}

// Index of every age whose full window fits in the table.
std::vector<IndexValue> all_indices(const RewardCurve& reward, std::int64_t window_limit) {
    std::vector<IndexValue> out;
    for (std::int64_t age = 1; age + window_limit - 1 <= reward.max_age(); ++age)
        out.push_back(index_gamma_detail(age, reward, window_limit));
    return out;
}

std::optional<std::int64_t> first_below(const std::vector<IndexValue>& indices, double beta) {
    for (std::size_t i = 0; i < indices.size(); ++i)
        if (indices[i].value <= beta) return static_cast<std::int64_t>(i) + 1;
    return std::nullopt;
}

}  // namespace

IndexValue index_gamma_detail(std::int64_t age, const RewardCurve& reward,
                              std::int64_t window_limit) {
    check_window(window_limit);
    if (age < 1) throw std::out_of_range("index_gamma: age must be at least 1");
    if (age + window_limit - 1 > reward.max_age())
        throw std::out_of_range("index_gamma: window of " + std::to_string(window_limit) +
                                " slots from age " + std::to_string(age) +
                                " exceeds the tabulated curve (max age " +
                                std::to_string(reward.max_age()) + ")");
    IndexValue best{reward(age), 1};
    double sum = 0.0;
    for (std::int64_t tau = 1; tau <= window_limit; ++tau) {
        sum += reward(age + tau - 1);
        const double avg = sum / static_cast<double>(tau);
        if (avg > best.value) best = {avg, tau};
    }
    return best;
}

double index_gamma(std::int64_t age, const RewardCurve& reward, std::int64_t window_limit) {
    return index_gamma_detail(age, reward, window_limit).value;
}

std::int64_t hitting_age(double beta, const RewardCurve& reward, std::int64_t window_limit) {
    check_window(window_limit);
    for (std::int64_t age = 1; age + window_limit - 1 <= reward.max_age(); ++age)
        if (index_gamma(age, reward, window_limit) <= beta) return age;
    throw HorizonExhausted("no age with gamma <= " + std::to_string(beta) +
                           " within the tabulated curve (max age " +
                           std::to_string(reward.max_age()) + ", window " +
                           std::to_string(window_limit) + ")");
}

ThresholdSolution solve_threshold(const RewardCurve& reward, double tol,
                                  std::int64_t window_limit) {
    check_window(window_limit);
    if (!(tol > 0.0)) throw std::invalid_argument("solve_threshold: tol must be positive");
    if (reward.max_age() < window_limit)
        throw std::invalid_argument("solve_threshold: curve shorter than the window limit");

    ThresholdSolution sol;
    sol.window_limit = window_limit;
    const double r_max = reward.max_value();
    if (r_max == 0.0) return sol;  // beta 0, pilot every slot

    const auto prefix = prefix_sums(reward);
    const auto indices = all_indices(reward, window_limit);
    auto g = [&](double beta, std::int64_t h) {
        return prefix[static_cast<std::size_t>(h - 1)] - beta * static_cast<double>(h);
    };

    // g is continuous and strictly decreasing; at beta = r_max the hitting age is 1.
    double lo = 0.0;
    double hi = r_max;
    double beta = hi;
    bool converged = false;
    int it = 0;
    for (; it < kBisectionIterationCap; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {  // bracket at floating-point resolution
            beta = hi;
            converged = true;
            break;
        }
        const auto h = first_below(indices, mid);
        if (!h) {  // hitting age beyond the table: mid is below the root
            lo = mid;
            continue;
        }
        const double value = g(mid, *h);
        if (std::abs(value) <= tol) {
            beta = mid;
            converged = true;
            break;
        }
        (value > 0.0 ? lo : hi) = mid;
    }
    if (!converged)
        throw NotConverged("threshold bisection did not converge in " +
                           std::to_string(kBisectionIterationCap) + " iterations");

    // Polish to the exact cycle average so decide() and the period agree.
    std::optional<std::int64_t> h = first_below(indices, beta);
    if (!h) throw HorizonExhausted("threshold solution has no hitting age within the table");
    for (int polish = 0; polish < 8; ++polish) {
        const double exact = prefix[static_cast<std::size_t>(*h - 1)] / static_cast<double>(*h);
        const auto h2 = first_below(indices, exact);
        if (!h2)
            throw HorizonExhausted("optimal cycle does not close within the tabulated curve (max age " +
                                   std::to_string(reward.max_age()) + ")");
        beta = exact;
        if (*h2 == *h) break;
        h = h2;
    }

    sol.beta = beta;
    sol.hitting_age = *h;
    sol.period = *h;
    sol.iterations = it + 1;
    for (std::int64_t age = 1; age <= *h; ++age)
        if (indices[static_cast<std::size_t>(age - 1)].window == window_limit)
            sol.window_limit_reached = true;
    return sol;
}

PeriodSearchResult brute_force_optimal_period(const RewardCurve& reward, std::int64_t max_period) {
    if (max_period < 1 || max_period > reward.max_age() + 1)
        throw std::invalid_argument("brute_force_optimal_period: max_period must lie in 1.." +
                                    std::to_string(reward.max_age() + 1));
    PeriodSearchResult best{1, 0.0};
    double sum = 0.0;  // r(1) + ... + r(p-1)
    for (std::int64_t p = 2; p <= max_period; ++p) {
        sum += reward(p - 1);
        const double avg = sum / static_cast<double>(p);
        if (avg > best.average) best = {p, avg};
    }
    return best;
}

MdpSolution relative_value_iteration(const RewardCurve& reward, std::int64_t max_age, double tol,
                                     int max_iterations) {
    if (max_age < 1 || max_age > reward.max_age())
        throw std::invalid_argument("relative_value_iteration: max_age must lie in 1.." +
                                    std::to_string(reward.max_age()));
    if (!(tol > 0.0)) throw std::invalid_argument("relative_value_iteration: tol must be positive");

    constexpr double kStay = 0.5;  // self-loop weight of the aperiodicity transform
    constexpr double kMove = 1.0 - kStay;
    const auto n = static_cast<std::size_t>(max_age);
    std::vector<double> v(n, 0.0);
    std::vector<double> next(n);

    MdpSolution sol;
    for (int it = 1; it <= max_iterations; ++it) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (std::size_t s = 0; s < n; ++s) {
            const std::size_t succ = std::min(s + 1, n - 1);
            const double pilot = kStay * v[s] + kMove * v[0];
            const double data = reward(static_cast<std::int64_t>(s) + 1) + kStay * v[s] + kMove * v[succ];
            next[s] = std::max(pilot, data);
            const double d = next[s] - v[s];
            lo = std::min(lo, d);
            hi = std::max(hi, d);
        }
        const double ref = next[0];
        for (std::size_t s = 0; s < n; ++s) v[s] = next[s] - ref;
        if (hi - lo <= tol) {
            sol.gain = 0.5 * (hi + lo);
            sol.iterations = it;
            break;
        }
        if (it == max_iterations)
            throw NotConverged("relative value iteration did not converge in " +
                               std::to_string(max_iterations) + " iterations");
    }

    // Relative values of the untransformed chain are kMove times those of the lazy one.
    sol.relative_values.resize(n);
    for (std::size_t s = 0; s < n; ++s) sol.relative_values[s] = kMove * v[s];
    const double tie = 1e-9 * std::max(1.0, reward.max_value());
    sol.policy.resize(n);
    for (std::size_t s = 0; s < n; ++s) {
        const std::size_t succ = std::min(s + 1, n - 1);
        const double pilot = sol.relative_values[0];
        const double data = reward(static_cast<std::int64_t>(s) + 1) + sol.relative_values[succ];
        sol.policy[s] = data > pilot + tie ? Action::kData : Action::kPilot;
    }
    return sol;
}

Action decide(std::int64_t age, const ThresholdSolution& solution, const RewardCurve& reward) {
    if (age < 1 || age + solution.window_limit - 1 > reward.max_age()) {
        static std::atomic<bool> warned{false};
        if (!warned.exchange(true))
            std::clog << "aocsi: age " << age
                      << " outside the tabulated index range, sending pilot\n";
        return Action::kPilot;
    }
    return index_gamma(age, reward, solution.window_limit) <= solution.beta ? Action::kPilot
                                                                            : Action::kData;
}

}  // namespace aocsi
