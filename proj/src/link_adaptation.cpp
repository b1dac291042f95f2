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

#include "aocsi/link_adaptation.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "aocsi/mmse_estimation.hpp"
#include "csv.hpp"
#include "gauss_legendre.hpp"

namespace aocsi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double to_db(double linear) { return linear > 0.0 ? 10.0 * std::log10(linear) : -kInf; }

// AWGN SINR (dB) at 10% BLER for CQI 1..15, approximate link-level values.
constexpr double kCqiSinr10PctDb[15] = {-6.934, -5.147, -3.180, -1.254, 0.761,
                                        2.700,  4.697,  6.528,  8.576,  10.370,
                                        12.300, 14.180, 15.890, 17.820, 19.829};
constexpr double kDefaultSlopePerDb = 2.5;

// `db` is 10 log10(sinr), -inf at zero SINR.
double evaluate(const LogisticBler& c, double db) {
    if (db == -kInf) return 1.0;
    return 1.0 / (1.0 + std::exp(c.slope_per_db * (db - c.midpoint_db)));
}

double evaluate(const TabulatedBler& c, double db) {
    const auto& x = c.snr_db();
    const auto& y = c.bler();
    if (db <= x.front()) return y.front();
    if (db >= x.back()) return y.back();
    const auto hi = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), db) - x.begin());
    const std::size_t lo = hi - 1;
    const double t = (db - x[lo]) / (x[hi] - x[lo]);
    return y[lo] + t * (y[hi] - y[lo]);
}

double threshold(const LogisticBler& c, double e_max) {
    return std::pow(10.0, (c.midpoint_db + std::log((1.0 - e_max) / e_max) / c.slope_per_db) / 10.0);
}

double threshold(const TabulatedBler& c, double e_max) {
    const auto& x = c.snr_db();
    const auto& y = c.bler();
    if (y.front() <= e_max) return 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        if (y[i + 1] <= e_max) {
            const double db = x[i] + (y[i] - e_max) / (y[i] - y[i + 1]) * (x[i + 1] - x[i]);
            return std::pow(10.0, db / 10.0);
        }
    }
    return kInf;
}

double bler_at_db(const BlerCurve& curve, double db) {
    const double b = std::visit([db](const auto& c) { return evaluate(c, db); }, curve);
    return std::clamp(b, 0.0, 1.0);
}

std::string fingerprint(const LinkParams& p, const McsTable& t, const QuadratureConfig& q) {
    std::ostringstream os;
    os.precision(17);
    os << "Pp=" << p.pilot_power << ";Pd=" << p.data_power << ";N0=" << p.noise_variance
       << ";rho0=" << p.channel_variance << ";fd=" << p.doppler_hz << ";Ts=" << p.sample_period_s
       << ";mcs=" << t.entries().size() << ";emax=" << t.e_max() << ";nodes=" << q.nodes;
    return os.str();
}

}  // namespace

TabulatedBler::TabulatedBler(std::vector<double> snr_db, std::vector<double> bler)
    : snr_db_(std::move(snr_db)), bler_(std::move(bler)) {
    if (snr_db_.empty() || snr_db_.size() != bler_.size())
        throw std::invalid_argument("tabulated BLER curve needs matching, non-empty columns");
    for (std::size_t i = 0; i < snr_db_.size(); ++i) {
        if (!(bler_[i] >= 0.0 && bler_[i] <= 1.0))
            throw std::invalid_argument("BLER values must lie in [0, 1]");
        if (i > 0 && !(snr_db_[i] > snr_db_[i - 1]))
            throw std::invalid_argument("SNR grid must be strictly increasing");
        if (i > 0 && bler_[i] > bler_[i - 1])
            throw std::invalid_argument("BLER must be non-increasing in SNR");
    }
}

McsTable::McsTable(std::vector<McsEntry> entries, double e_max)
    : entries_(std::move(entries)), e_max_(e_max) {
    if (entries_.empty()) throw std::invalid_argument("MCS table is empty");
    if (!(e_max_ > 0.0 && e_max_ < 1.0)) throw std::invalid_argument("e_max must lie in (0, 1)");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (!(entries_[i].rate > 0.0) || !std::isfinite(entries_[i].rate))
            throw std::invalid_argument("MCS rate for CQI " + std::to_string(entries_[i].cqi) +
                                        " must be positive");
        if (i > 0 && !(entries_[i].rate > entries_[i - 1].rate))
            throw std::invalid_argument("MCS rates must be strictly increasing (CQI " +
                                        std::to_string(entries_[i].cqi) + ")");
    }
    for (const auto& e : entries_) thresholds_.push_back(feasibility_threshold(e, e_max_));
}

McsRates lte_cqi_rates() {
    McsRates rates;
    constexpr double kEfficiency[15] = {0.1523, 0.2344, 0.3770, 0.6016, 0.8770,
                                        1.1758, 1.4766, 1.9141, 2.4063, 2.7305,
                                        3.3223, 3.9023, 4.5234, 5.1152, 5.5547};
    for (int cqi = 1; cqi <= 15; ++cqi) rates.rate_by_cqi[cqi] = kEfficiency[cqi - 1];
    rates.e_max = 0.10;
    return rates;
}

McsRates parse_mcs_rates(const std::string& json_text, const std::string& source) {
    McsRates rates;
    try {
        const auto doc = nlohmann::json::parse(json_text);
        rates.e_max = doc.value("e_max", 0.10);
        for (const auto& [key, value] : doc.at("rates").items())
            rates.rate_by_cqi[std::stoi(key)] = value.get<double>();
    } catch (const std::exception& e) {
        throw std::runtime_error(source + ": invalid MCS rate config: " + e.what());
    }
    if (rates.rate_by_cqi.empty()) throw std::runtime_error(source + ": no MCS rates");
    return rates;
}

McsRates load_mcs_rates(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open MCS rate config " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_mcs_rates(ss.str(), path.string());
}

McsTable default_mcs_table(double e_max) {
    const auto rates = lte_cqi_rates();
    std::vector<McsEntry> entries;
    const double offset = std::log(9.0) / kDefaultSlopePerDb;  // 10% point -> 50% point
    for (const auto& [cqi, rate] : rates.rate_by_cqi) {
        entries.push_back(
            {cqi, rate, LogisticBler{kDefaultSlopePerDb, kCqiSinr10PctDb[cqi - 1] - offset}});
    }
    return McsTable(std::move(entries), e_max);
}

McsTable parse_bler_table(std::istream& in, const McsRates& rates, const std::string& source) {
    detail::CsvReader reader(in, source, {"cqi", "snr_db", "bler"});
    std::map<int, std::pair<std::vector<double>, std::vector<double>>> curves;
    int last_cqi = std::numeric_limits<int>::min();
    detail::CsvRow row;
    while (reader.next(row)) {
        const auto where = source + ":" + std::to_string(row.line);
        if (row.fields.size() != 3) throw std::runtime_error(where + ": expected 3 fields");
        const int cqi = static_cast<int>(detail::parse_integer(row.fields[0], where));
        const double snr = detail::parse_double(row.fields[1], where);
        const double b = detail::parse_double(row.fields[2], where);
        const auto tag = where + " (CQI " + std::to_string(cqi) + ")";
        if (cqi < last_cqi) throw std::runtime_error(tag + ": rows not sorted by CQI");
        if (!(b >= 0.0 && b <= 1.0)) throw std::runtime_error(tag + ": BLER outside [0, 1]");
        auto& [snrs, blers] = curves[cqi];
        if (!snrs.empty() && !(snr > snrs.back()))
            throw std::runtime_error(tag + ": SNR grid not strictly increasing");
        if (!blers.empty() && b > blers.back())
            throw std::runtime_error(tag + ": BLER increases with SNR (non-monotone curve)");
        snrs.push_back(snr);
        blers.push_back(b);
        last_cqi = cqi;
    }
    if (curves.empty()) throw std::runtime_error(source + ": no BLER rows");

    std::vector<McsEntry> entries;
    double last_rate = 0.0;
    for (auto& [cqi, curve] : curves) {
        const auto it = rates.rate_by_cqi.find(cqi);
        if (it == rates.rate_by_cqi.end())
            throw std::runtime_error(source + ": CQI " + std::to_string(cqi) +
                                     " has no configured rate");
        if (!(it->second > last_rate))
            throw std::runtime_error(source + ": rate of CQI " + std::to_string(cqi) +
                                     " does not increase with CQI");
        last_rate = it->second;
        entries.push_back(
            {cqi, it->second, TabulatedBler(std::move(curve.first), std::move(curve.second))});
    }
    return McsTable(std::move(entries), rates.e_max);
}

McsTable load_bler_table(const std::filesystem::path& path, const McsRates& rates) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open BLER table " + path.string());
    return parse_bler_table(in, rates, path.string());
}

double bler(double sinr, const McsEntry& entry) {
    if (!(sinr >= 0.0)) throw std::invalid_argument("bler: SINR must be non-negative");
    return bler_at_db(entry.curve, to_db(sinr));
}

double feasibility_threshold(const McsEntry& entry, double e_max) {
    return std::visit([e_max](const auto& c) { return threshold(c, e_max); }, entry.curve);
}

GoodputChoice max_goodput(double sinr, const McsTable& table) {
    if (!(sinr >= 0.0)) throw std::invalid_argument("max_goodput: SINR must be non-negative");
    GoodputChoice best;
    const double db = to_db(sinr);
    const auto& entries = table.entries();
    const auto& thresholds = table.thresholds();
    // Highest rate first: once a rate cannot beat the incumbent, no lower one can.
    for (std::size_t i = entries.size(); i-- > 0;) {
        if (best.entry && entries[i].rate < best.goodput) break;
        if (sinr < thresholds[i]) continue;  // below threshold bler > e_max
        const double b = bler_at_db(entries[i].curve, db);
        if (b > table.e_max()) continue;
        const double g = entries[i].rate * (1.0 - b);
        if (!best.entry || g >= best.goodput) {
            best.goodput = g;
            best.entry = i;
        }
    }
    return best;
}

double expected_goodput_for_sinr_gain(double sinr_gain, double pilot_mean, const McsTable& table,
                                      const QuadratureConfig& quad) {
    if (quad.nodes < 8) throw std::invalid_argument("quadrature needs at least 8 nodes");
    if (!(pilot_mean > 0.0)) throw std::invalid_argument("pilot power mean must be positive");
    if (!(sinr_gain > 0.0)) return max_goodput(0.0, table).goodput;

    std::vector<double> cuts{0.0, 1.0};
    for (const auto& entry : table.entries()) {
        const double eta = feasibility_threshold(entry, table.e_max());
        if (!(eta > 0.0) || !std::isfinite(eta)) continue;
        const double u = -std::expm1(-eta / sinr_gain / pilot_mean);
        if (u > 0.0 && u < 1.0) cuts.push_back(u);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const auto& rule = detail::gauss_legendre(quad.nodes);
    double total = 0.0;
    for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
        const double half = 0.5 * (cuts[p + 1] - cuts[p]);
        const double mid = 0.5 * (cuts[p + 1] + cuts[p]);
        if (!(half > 0.0)) continue;
        double panel = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double u = mid + half * rule.nodes[i];
            const double x = -pilot_mean * std::log1p(-u);
            panel += rule.weights[i] * max_goodput(sinr_gain * x, table).goodput;
        }
        total += half * panel;
    }
    return std::clamp(total, 0.0, table.max_rate());
}

double expected_goodput(std::int64_t age, const LinkParams& params, const McsTable& table,
                        const QuadratureConfig& quad) {
    if (age < 1) throw std::invalid_argument("expected_goodput: age must be at least 1");
    params.validate();
    return expected_goodput_for_sinr_gain(sinr_gain(age, params), pilot_power_mean(params), table,
                                          quad);
}

RewardCurve build_reward_curve(const LinkParams& params, const McsTable& table,
                               std::int64_t max_age, const QuadratureConfig& quad) {
    if (max_age < 1) throw std::invalid_argument("reward curve needs max_age >= 1");
    if (max_age > kMaxRewardAge)
        throw std::invalid_argument("max_age " + std::to_string(max_age) + " exceeds bound " +
                                    std::to_string(kMaxRewardAge));
    params.validate();
    std::vector<double> values(static_cast<std::size_t>(max_age));
    for (std::int64_t age = 1; age <= max_age; ++age)
        values[static_cast<std::size_t>(age - 1)] = expected_goodput(age, params, table, quad);
    return RewardCurve(std::move(values), fingerprint(params, table, quad));
}

}  // namespace aocsi
