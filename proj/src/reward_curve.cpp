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

#include "aocsi/reward_curve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "csv.hpp"

namespace aocsi {

RewardCurve::RewardCurve(std::vector<double> values, std::string fingerprint)
    : values_(std::move(values)), fingerprint_(std::move(fingerprint)) {
    if (values_.empty()) throw std::invalid_argument("reward curve must cover at least age 1");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]) || values_[i] < 0.0)
            throw std::invalid_argument("reward r(" + std::to_string(i + 1) +
                                        ") must be finite and non-negative");
    }
}

double RewardCurve::at(std::int64_t age) const {
    if (age < 1 || age > max_age())
        throw std::out_of_range("age " + std::to_string(age) + " outside tabulated range 1.." +
                                std::to_string(max_age()));
    return (*this)(age);
}

double RewardCurve::max_value() const {
    return values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end());
}

RewardCurve RewardCurve::zero_extended(std::int64_t max_age) const {
    auto values = values_;
    if (max_age > this->max_age()) values.resize(static_cast<std::size_t>(max_age), 0.0);
    return RewardCurve(std::move(values), fingerprint_);
}

RewardCurve RewardCurve::truncated(std::int64_t max_age) const {
    if (max_age < 1 || max_age > this->max_age())
        throw std::out_of_range("cannot truncate reward curve to " + std::to_string(max_age));
    return RewardCurve(std::vector<double>(values_.begin(), values_.begin() + max_age),
                       fingerprint_);
}

RewardCurve RewardCurve::scaled(double factor) const {
    auto values = values_;
    for (auto& v : values) v *= factor;
    return RewardCurve(std::move(values), fingerprint_);
}

RewardCurve parse_reward_csv(std::istream& in, const std::string& source) {
    detail::CsvReader reader(in, source, {"age", "reward"});
    std::vector<double> values;
    detail::CsvRow row;
    while (reader.next(row)) {
        const auto where = source + ":" + std::to_string(row.line);
        if (row.fields.size() != 2) throw std::runtime_error(where + ": expected 2 fields");
        const auto age = detail::parse_integer(row.fields[0], where);
        if (age != static_cast<long long>(values.size()) + 1)
            throw std::runtime_error(where + ": ages must be consecutive starting at 1");
        const double reward = detail::parse_double(row.fields[1], where);
        if (!std::isfinite(reward) || reward < 0.0)
            throw std::runtime_error(where + ": reward must be finite and non-negative");
        values.push_back(reward);
    }
    if (values.empty()) throw std::runtime_error(source + ": no reward rows");
    return RewardCurve(std::move(values), "csv:" + source);
}

RewardCurve load_reward_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open reward CSV " + path.string());
    return parse_reward_csv(in, path.string());
}

void write_reward_csv(std::ostream& out, const RewardCurve& curve) {
    out << "age,reward\n" << std::setprecision(17);
    for (std::int64_t age = 1; age <= curve.max_age(); ++age)
        out << age << ',' << curve(age) << '\n';
}

}  // namespace aocsi
