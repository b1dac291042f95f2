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
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "aocsi/channel_model.hpp"
#include "aocsi/reward_curve.hpp"

namespace aocsi {

/// bler(sinr) = 1 / (1 + exp(slope * (sinr_db - midpoint))).
struct LogisticBler {
    double slope_per_db = 2.5;
    double midpoint_db = 0.0;
};

/// Piecewise-linear BLER over an SNR grid in dB; clamped to the end values
/// outside the grid.
class TabulatedBler {
public:
    TabulatedBler(std::vector<double> snr_db, std::vector<double> bler);

    const std::vector<double>& snr_db() const { return snr_db_; }
    const std::vector<double>& bler() const { return bler_; }

private:
    std::vector<double> snr_db_;
    std::vector<double> bler_;
};

using BlerCurve = std::variant<LogisticBler, TabulatedBler>;

struct McsEntry {
    int cqi = 1;
    double rate = 0.0;  // information bits per symbol
    BlerCurve curve;
};

/// MCS entries sorted by strictly increasing rate, plus the BLER ceiling.
class McsTable {
public:
    McsTable(std::vector<McsEntry> entries, double e_max);

    const std::vector<McsEntry>& entries() const { return entries_; }
    double e_max() const { return e_max_; }
    double max_rate() const { return entries_.back().rate; }
    /// feasibility_threshold() of each entry at this table's e_max.
    const std::vector<double>& thresholds() const { return thresholds_; }

private:
    std::vector<McsEntry> entries_;
    double e_max_;
    std::vector<double> thresholds_;
};

/// Rate column and BLER ceiling, independent of the BLER curves.
struct McsRates {
    std::map<int, double> rate_by_cqi;
    double e_max = 0.10;
};

/// LTE 4-bit CQI table (spectral efficiency per CQI 1..15), e_max = 0.1.
McsRates lte_cqi_rates();

/// JSON: {"e_max": 0.1, "rates": {"1": 0.1523, ...}}.
McsRates load_mcs_rates(const std::filesystem::path& path);
McsRates parse_mcs_rates(const std::string& json_text, const std::string& source = "<string>");

/// 15 LTE CQI rates with logistic BLER curves. The midpoints place the 10%
/// BLER point of each CQI near its AWGN requirement, so higher CQIs need
/// higher SINR.
McsTable default_mcs_table(double e_max = 0.10);

/// CSV with header `cqi,snr_db,bler`, rows sorted by (cqi, snr_db).
McsTable load_bler_table(const std::filesystem::path& path, const McsRates& rates = lte_cqi_rates());
McsTable parse_bler_table(std::istream& in, const McsRates& rates,
                          const std::string& source = "<stream>");

/// Block error probability of `entry` at linear SINR. Throws on negative SINR.
double bler(double sinr, const McsEntry& entry);

/// Smallest linear SINR at which bler <= e_max; 0 if feasible everywhere and
/// +inf if never feasible.
double feasibility_threshold(const McsEntry& entry, double e_max);

struct GoodputChoice {
    double goodput = 0.0;
    std::optional<std::size_t> entry;  // index into McsTable::entries()
};

/// Best R (1 - bler) among entries satisfying bler <= e_max; ties go to the lower rate.
GoodputChoice max_goodput(double sinr, const McsTable& table);

struct QuadratureConfig {
    /// Gauss-Legendre nodes per panel.
    int nodes = 64;
};

/// E[G_max(gain * X)] with X ~ Exp(mean). Integrates in probability space
/// u = 1 - exp(-X/mean) with panels split at each MCS feasibility threshold,
/// where the integrand jumps.
double expected_goodput_for_sinr_gain(double sinr_gain, double pilot_mean, const McsTable& table,
                                      const QuadratureConfig& quad = {});

/// r(age): expected maximum goodput at a data slot with CSI of the given age.
double expected_goodput(std::int64_t age, const LinkParams& params, const McsTable& table,
                        const QuadratureConfig& quad = {});

inline constexpr std::int64_t kMaxRewardAge = 100'000;

RewardCurve build_reward_curve(const LinkParams& params, const McsTable& table,
                               std::int64_t max_age, const QuadratureConfig& quad = {});

}  // namespace aocsi
