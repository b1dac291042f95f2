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
#include <span>
#include <string>
#include <vector>

namespace aocsi {

/// Tabulated expected goodput r(age) for age = 1..max_age, in bits/symbol.
class RewardCurve {
public:
    RewardCurve() = default;
    explicit RewardCurve(std::vector<double> values, std::string fingerprint = {});

    /// r(age) for 1 <= age <= max_age(); throws std::out_of_range otherwise.
    double at(std::int64_t age) const;
    double operator()(std::int64_t age) const { return values_[static_cast<std::size_t>(age - 1)]; }

    std::int64_t max_age() const { return static_cast<std::int64_t>(values_.size()); }
    std::span<const double> values() const { return values_; }
    const std::string& fingerprint() const { return fingerprint_; }
    double max_value() const;

    /// Same curve treated as finite support: zero beyond the current table.
    RewardCurve zero_extended(std::int64_t max_age) const;
    RewardCurve truncated(std::int64_t max_age) const;
    RewardCurve scaled(double factor) const;

private:
    std::vector<double> values_;
    std::string fingerprint_;
};

/// Reads an `age,reward` CSV. Ages must run 1, 2, 3, ... without gaps.
RewardCurve load_reward_csv(const std::filesystem::path& path);
RewardCurve parse_reward_csv(std::istream& in, const std::string& source = "<stream>");
void write_reward_csv(std::ostream& out, const RewardCurve& curve);

}  // namespace aocsi
