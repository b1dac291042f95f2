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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include "aocsi/link_adaptation.hpp"
#include "aocsi/mmse_estimation.hpp"
#include "support/reference.hpp"

using namespace aocsi;
namespace ref = aocsi::testing;

namespace {

LinkParams operating_point(double snr_db, double doppler_hz) {
    LinkParams p;
    p.noise_variance = std::pow(10.0, -snr_db / 10.0);
    p.doppler_hz = doppler_hz;
    return p;
}

McsTable parse_table(const std::string& csv, const McsRates& rates = lte_cqi_rates()) {
    std::istringstream in(csv);
    return parse_bler_table(in, rates, "test.csv");
}

std::string error_of(const std::string& csv) {
    try {
        parse_table(csv);
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_SUITE("link_adaptation") {

TEST_CASE("default table uses the LTE CQI efficiencies") {
    const auto t = default_mcs_table();
    REQUIRE(t.entries().size() == 15);
    CHECK(t.e_max() == 0.1);
    for (std::size_t i = 0; i < 15; ++i) {
        CHECK(t.entries()[i].cqi == static_cast<int>(i) + 1);
        CHECK(t.entries()[i].rate == ref::kRefRates[i]);
        // Each entry hits 10% BLER at its tabulated AWGN SINR.
        const double s10 = std::pow(10.0, ref::kRefSinr10Db[i] / 10.0);
        CHECK(bler(s10, t.entries()[i]) == doctest::Approx(0.1).epsilon(1e-12));
        CHECK(t.thresholds()[i] == doctest::Approx(s10).epsilon(1e-12));
    }
    CHECK(t.max_rate() == 5.5547);
}

TEST_CASE("bler is monotone and bounded") {
    const auto t = default_mcs_table();
    for (const auto& e : t.entries()) {
        double prev = 1.0;
        for (double db = -30.0; db <= 40.0; db += 0.25) {
            const double b = bler(std::pow(10.0, db / 10.0), e);
            REQUIRE(b >= 0.0);
            REQUIRE(b <= 1.0);
            REQUIRE(b <= prev);
            prev = b;
        }
        CHECK(bler(0.0, e) == 1.0);
    }
    CHECK_THROWS_AS(bler(-1.0, t.entries()[0]), std::invalid_argument);
}

TEST_CASE("max goodput against a reference scan") {
    const auto t = default_mcs_table();
    for (double db = -15.0; db <= 35.0; db += 0.173) {
        const double s = std::pow(10.0, db / 10.0);
        const auto choice = max_goodput(s, t);
        CAPTURE(db);
        CHECK(choice.goodput == doctest::Approx(ref::reference_goodput(s)).epsilon(1e-13));
        if (choice.entry) {
            CHECK(bler(s, t.entries()[*choice.entry]) <= t.e_max());
        } else {
            CHECK(choice.goodput == 0.0);
        }
    }
    CHECK(max_goodput(0.0, t).goodput == 0.0);
    CHECK_FALSE(max_goodput(0.0, t).entry.has_value());
    CHECK(max_goodput(1e9, t).goodput == doctest::Approx(5.5547));
}

TEST_CASE("max goodput is non-decreasing in SINR") {
    const auto t = default_mcs_table();
    double prev = 0.0;
    for (double db = -20.0; db <= 40.0; db += 0.01) {
        const double g = max_goodput(std::pow(10.0, db / 10.0), t).goodput;
        REQUIRE(g >= prev - 1e-12);
        prev = g;
    }
}

TEST_CASE("expected goodput against a midpoint-rule reference") {
    const auto t = default_mcs_table();
    for (double snr : {0.0, 10.0, 20.0}) {
        for (double fd : {5.0, 53.68, 150.0}) {
            const auto p = operating_point(snr, fd);
            for (std::int64_t age : {1, 2, 4, 9}) {
                CAPTURE(snr);
                CAPTURE(fd);
                CAPTURE(age);
                const double r = expected_goodput(age, p, t);
                const double want = ref::reference_expected_goodput(sinr_gain(age, p),
                                                                    pilot_power_mean(p), 200'000);
                CHECK(std::abs(r - want) <= 1e-4 * std::max(1.0, want));
            }
        }
    }
}

TEST_CASE("expected goodput against a test-side Monte Carlo") {
    const auto t = default_mcs_table();
    const auto p = operating_point(15.0, 40.0);
    for (std::int64_t age : {1, 3}) {
        ref::ReferenceLink l;
        l.noise = p.noise_variance;
        l.rho = autocorrelation(age, p);
        const auto mc = ref::reference_monte_carlo(l, 400'000, 99 + age);
        CHECK(std::abs(expected_goodput(age, p, t) - mc.mean) <= 4.0 * mc.std_error);
    }
}

TEST_CASE("quadrature converges with node count") {
    const auto t = default_mcs_table();
    const auto p = operating_point(20.0, 53.68);
    const double coarse = expected_goodput(2, p, t, {16});
    const double fine = expected_goodput(2, p, t, {256});
    CHECK(std::abs(coarse - fine) <= 1e-6 * fine);
    CHECK_THROWS_AS(expected_goodput(2, p, t, {4}), std::invalid_argument);
}

TEST_CASE("expected goodput is bounded by the top rate and vanishes with no information") {
    const auto t = default_mcs_table();
    const auto p = operating_point(40.0, 0.0);
    const double r = expected_goodput(1, p, t);
    CHECK(r > 0.0);
    CHECK(r <= t.max_rate());
    // Zero SINR gain: every slot scores max_goodput(0) = 0.
    CHECK(expected_goodput_for_sinr_gain(0.0, 1.0, t) == 0.0);
    CHECK_THROWS_AS(expected_goodput(0, p, t), std::invalid_argument);
}

TEST_CASE("reward curve decreases before the first correlation zero") {
    const auto t = default_mcs_table();
    const auto p = operating_point(20.0, 53.681937522257481);
    const auto curve = build_reward_curve(p, t, 20);
    REQUIRE(curve.max_age() == 20);
    for (std::int64_t age = 2; age <= 6; ++age) CHECK(curve(age) < curve(age - 1));
    for (double v : curve.values()) {
        CHECK(v >= 0.0);
        CHECK(v <= t.max_rate());
    }
    CHECK_FALSE(curve.fingerprint().empty());
    CHECK_THROWS_AS(build_reward_curve(p, t, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_reward_curve(p, t, kMaxRewardAge + 1), std::invalid_argument);
}

TEST_CASE("tabulated BLER curves interpolate in dB and clamp at the ends") {
    const auto t = parse_table(
        "cqi,snr_db,bler\n"
        "# comment lines are ignored\n"
        "1,0,1\n1,10,0\n"
        "2,5,0.8\n2,15,0.05\n");
    REQUIRE(t.entries().size() == 2);
    const auto& e1 = t.entries()[0];
    CHECK(bler(std::pow(10.0, 0.05), e1) == doctest::Approx(0.95));
    CHECK(bler(std::pow(10.0, -1.0), e1) == 1.0);
    CHECK(bler(std::pow(10.0, 2.0), e1) == 0.0);
    // BLER hits 0.1 at 9 dB on entry 1.
    CHECK(feasibility_threshold(e1, 0.1) == doctest::Approx(std::pow(10.0, 0.9)).epsilon(1e-12));
    // Entry 2 never reaches 0.01.
    CHECK(std::isinf(feasibility_threshold(t.entries()[1], 0.01)));
    CHECK(t.entries()[1].rate == doctest::Approx(0.2344));
}

TEST_CASE("malformed BLER tables name the offending CQI") {
    CHECK(error_of("cqi,snr_db,bler\n1,0,0.5\n1,0,0.4\n").find("CQI 1") != std::string::npos);
    CHECK(error_of("cqi,snr_db,bler\n1,0,0.5\n1,1,0.6\n").find("non-monotone") != std::string::npos);
    CHECK(error_of("cqi,snr_db,bler\n2,0,0.5\n1,1,0.4\n").find("not sorted") != std::string::npos);
    CHECK(error_of("cqi,snr_db,bler\n3,0,1.5\n").find("CQI 3") != std::string::npos);
    CHECK(error_of("cqi,snr_db,bler\n16,0,0.5\n").find("CQI 16") != std::string::npos);
    CHECK(error_of("cqi,snr_db,bler\n1,x,0.5\n") != "");
    CHECK(error_of("snr,bler\n1,0.5\n") != "");
    CHECK(error_of("") != "");
}

TEST_CASE("MCS rate config parsing") {
    const auto rates = parse_mcs_rates(R"({"e_max": 0.05, "rates": {"1": 0.5, "2": 1.5}})");
    CHECK(rates.e_max == 0.05);
    REQUIRE(rates.rate_by_cqi.size() == 2);
    CHECK(rates.rate_by_cqi.at(2) == 1.5);
    CHECK_THROWS(parse_mcs_rates("{"));
    CHECK_THROWS(parse_mcs_rates(R"({"rates": {}})"));

    const auto bad = parse_mcs_rates(R"({"rates": {"1": 2.0, "2": 1.0}})");
    std::istringstream in("cqi,snr_db,bler\n1,0,0.5\n2,0,0.5\n");
    CHECK_THROWS(parse_bler_table(in, bad));
}

TEST_CASE("shipped rate config matches the built-in table") {
    const auto path = std::filesystem::path(AOCSI_SOURCE_DIR) / "data" / "lte_cqi_rates.json";
    const auto loaded = load_mcs_rates(path);
    CHECK(loaded.rate_by_cqi == lte_cqi_rates().rate_by_cqi);
    CHECK(loaded.e_max == 0.1);
    CHECK_THROWS(load_mcs_rates("/nonexistent/rates.json"));
}

TEST_CASE("MCS table validation") {
    CHECK_THROWS_AS(McsTable({}, 0.1), std::invalid_argument);
    std::vector<McsEntry> e{{1, 1.0, LogisticBler{2.5, 0.0}}, {2, 0.5, LogisticBler{2.5, 3.0}}};
    CHECK_THROWS_AS(McsTable(e, 0.1), std::invalid_argument);
    e[1].rate = 2.0;
    CHECK_NOTHROW(McsTable(e, 0.1));
    CHECK_THROWS_AS(McsTable(e, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(McsTable(e, 1.0), std::invalid_argument);
}

TEST_CASE("logistic default crosses one half at its midpoint") {
    for (const auto& e : default_mcs_table().entries()) {
        const auto& c = std::get<LogisticBler>(e.curve);
        CHECK(bler(std::pow(10.0, c.midpoint_db / 10.0), e) == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("hand-built tables") {
    // One entry, R = 2, BLER 0.05 at 10 dB: goodput 2 * 0.95.
    std::istringstream one("cqi,snr_db,bler\n1,0,0.5\n1,10,0.05\n");
    const auto t1 = parse_bler_table(one, parse_mcs_rates(R"({"rates": {"1": 2.0}})"));
    const auto g1 = max_goodput(10.0, t1);
    CHECK(g1.goodput == doctest::Approx(1.9).epsilon(1e-12));
    CHECK(g1.entry == std::optional<std::size_t>{0});

    // (R = 1, BLER 0) and (R = 4, BLER 0.5): the constraint rules out the second.
    std::istringstream two("cqi,snr_db,bler\n1,-50,0\n1,50,0\n2,-50,0.5\n2,50,0.5\n");
    const auto t2 = parse_bler_table(two, parse_mcs_rates(R"({"rates": {"1": 1.0, "2": 4.0}})"));
    const auto g2 = max_goodput(1.0, t2);
    CHECK(g2.goodput == 1.0);
    CHECK(g2.entry == std::optional<std::size_t>{0});

    // One CQI from 0.9 at 0 dB to 0.01 at 10 dB.
    std::istringstream lin("cqi,snr_db,bler\n1,0,0.9\n1,10,0.01\n");
    const auto t3 = parse_bler_table(lin, lte_cqi_rates());
    CHECK(bler(std::pow(10.0, 0.5), t3.entries()[0]) == doctest::Approx(0.455).epsilon(1e-12));
    CHECK(bler(0.1, t3.entries()[0]) == 0.9);
}

TEST_CASE("always-decodable single entry earns its rate at any informative age") {
    std::istringstream in("cqi,snr_db,bler\n1,-300,0\n1,300,0\n");
    const auto t = parse_bler_table(in, parse_mcs_rates(R"({"rates": {"1": 2.5}})"));
    LinkParams p;
    p.doppler_hz = 40.0;
    for (std::int64_t age : {1, 3, 20}) CHECK(expected_goodput(age, p, t) == doctest::Approx(2.5));
}

TEST_CASE("reward at a correlation zero is zero") {
    LinkParams p;
    p.doppler_hz = 2.404825557695773 / (2.0 * std::numbers::pi * 4.0) / p.sample_period_s;
    CHECK(sinr_gain(4, p) <= 1e-15);
    CHECK(expected_goodput(4, p, default_mcs_table()) <= 1e-12);
}

TEST_CASE("reward depends on the age only through the correlation") {
    // Age 1 at Doppler 2f and age 2 at Doppler f see the same J0 argument.
    LinkParams fast = operating_point(15.0, 80.0);
    LinkParams slow = operating_point(15.0, 40.0);
    const auto t = default_mcs_table();
    CHECK(expected_goodput(1, fast, t) == doctest::Approx(expected_goodput(2, slow, t)).epsilon(1e-13));
    CHECK(expected_goodput(3, fast, t) == doctest::Approx(expected_goodput(6, slow, t)).epsilon(1e-13));
}

TEST_CASE("reward curve tabulation") {
    const auto t = default_mcs_table();
    const auto p = operating_point(20.0, 53.681937522257481);
    const auto one = build_reward_curve(p, t, 1);
    CHECK(one.max_age() == 1);
    CHECK(one(1) == expected_goodput(1, p, t));
    const auto a = build_reward_curve(p, t, 64);
    const auto b = build_reward_curve(p, t, 64);
    for (std::int64_t age = 1; age <= 64; ++age) REQUIRE(a(age) == b(age));
    // Argmax over the ages before the first zero of J0 sits at age 1.
    for (std::int64_t age = 2; age <= 7; ++age) CHECK(a(age) < a(1));
}

}  // TEST_SUITE
