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

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "aocsi/experiment.hpp"

using namespace aocsi;

namespace {

std::string config_error(const std::string& text) {
    try {
        parse_config(text);
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("aocsi_test_" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("defaults describe the 15 mph, 20 dB operating point") {
    const auto c = parse_config("{}");
    const auto p = c.link_params();
    CHECK(p.noise_variance == doctest::Approx(0.01).epsilon(1e-14));
    CHECK(p.doppler_hz == doctest::Approx(53.681937522257481).epsilon(1e-12));
    CHECK(p.sample_period_s == 1e-3);
    CHECK(c.mode == RewardMode::kExpected);
    CHECK(c.seeds.size() == 5);
    CHECK(c.window_limit == 512);
}

TEST_CASE("full config parses") {
    const auto c = parse_config(R"({
        "link": {"pilot_power": 2, "data_power": 1, "channel_variance": 1, "noise_variance": 0.1},
        "mobility": {"speed": 10, "unit": "mps", "carrier_hz": 1e9},
        "sample_period_s": 5e-4,
        "scheduler": {"max_age": 600, "window_limit": 64, "oracle_max_age": 50,
                      "quadrature_nodes": 32, "tolerance": 1e-10, "oracle_agreement": 1e-5},
        "simulation": {"horizon": 5000, "seeds": [7], "baseline_period": 3, "mode": "realized"},
        "sweep": {"snr_db": [0, 10], "speed": [1, 2]},
        "validation": {"samples": 2000, "quadrature_mc_samples": 1000, "random_reward_curves": 2},
        "output_dir": "results"
    })");
    CHECK(c.pilot_power == 2.0);
    CHECK(c.noise_variance.value() == 0.1);
    CHECK_FALSE(c.snr_db.has_value());
    CHECK(c.speed_unit == SpeedUnit::kMps);
    CHECK(c.link_params().doppler_hz == doctest::Approx(10.0 * 1e9 / kSpeedOfLight));
    CHECK(c.max_age == 600);
    CHECK(c.mode == RewardMode::kRealized);
    CHECK(c.seeds == std::vector<std::uint64_t>{7});
    CHECK(c.snr_grid_db.size() == 2);
    CHECK(c.output_dir == "results");
    // SNR override keeps P_d rho0 / s2.
    CHECK(c.link_params_at(10.0, std::nullopt).noise_variance == doctest::Approx(0.1));
}

TEST_CASE("config errors name the field") {
    CHECK(config_error(R"({"link": {"snr": 3}})").find("link.snr") != std::string::npos);
    CHECK(config_error(R"({"bogus": 1})").find("bogus") != std::string::npos);
    CHECK(config_error(R"({"link": {"snr_db": 3, "noise_variance": 0.1}})").find("exactly one") !=
          std::string::npos);
    CHECK(config_error(R"({"mobility": {"unit": "kph"}})").find("mobility.unit") !=
          std::string::npos);
    CHECK(config_error(R"({"simulation": {"mode": "psychic"}})").find("simulation.mode") !=
          std::string::npos);
    CHECK(config_error(R"({"simulation": {"horizon": 10}})").find("horizon") != std::string::npos);
    CHECK(config_error(R"({"scheduler": {"max_age": 100}})").find("max_age") != std::string::npos);
    CHECK(config_error(R"({"scheduler": {"max_age": "many"}})").find("scheduler.max_age") !=
          std::string::npos);
    CHECK(config_error(R"({"mobility": {"speed": 1e9}})") != "");
    CHECK(config_error("{not json") != "");
    CHECK_THROWS(load_config("/nonexistent/config.json"));
}

TEST_CASE("relative paths resolve against the config file") {
    TempDir dir;
    {
        std::ofstream(dir.path / "curve.csv") << "age,reward\n1,1\n2,1\n3,1\n";
        std::ofstream(dir.path / "cfg.json") << R"({"reward_csv": "curve.csv",
            "scheduler": {"max_age": 600}})";
    }
    const auto c = load_config(dir.path / "cfg.json");
    REQUIRE(c.reward_csv.has_value());
    CHECK(std::filesystem::path(*c.reward_csv) == dir.path / "curve.csv");

    const auto curve = scheduling_curve(c);
    CHECK(curve.max_age() == 600);
    CHECK(curve(4) == 0.0);
    const auto report = solve(c);
    CHECK(report.solution.beta == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(report.solution.period == 4);
    CHECK(report.oracles_agree());
    const auto doc = nlohmann::json::parse(to_json(report));
    CHECK(doc["period"] == 4);
    CHECK(doc["oracles_agree"] == true);
}

TEST_CASE("custom BLER table through the config") {
    TempDir dir;
    {
        std::ofstream(dir.path / "bler.csv") << "cqi,snr_db,bler\n1,-10,1\n1,0,0\n2,0,1\n2,10,0\n";
        std::ofstream(dir.path / "cfg.json") << R"({"mcs": {"bler_table": "bler.csv"}})";
    }
    const auto c = load_config(dir.path / "cfg.json");
    const auto t = c.mcs_table();
    CHECK(t.entries().size() == 2);
    const auto curve = build_reward_curve(c.link_params(), t, 4);
    CHECK(curve(1) > 0.0);
    CHECK(curve(1) <= t.max_rate());
}

TEST_CASE("solve on the default operating point") {
    auto c = parse_config("{}");
    const auto report = solve(c);
    CHECK(report.oracles_agree());
    CHECK(report.solution.period == 3);
    CHECK(report.solution.beta == doctest::Approx(1.1441389).epsilon(1e-6));
}

TEST_CASE("simulate and sweeps on a short horizon") {
    auto c = parse_config(R"({"simulation": {"horizon": 20000, "seeds": [1, 2]},
                              "sweep": {"snr_db": [10, 0], "speed": [30, 5]}})");
    const auto sims = simulate(c);
    REQUIRE(sims.size() == 4);
    CHECK(sims[0].policy == "threshold");
    CHECK(sims[1].policy == "periodic-2");

    const auto snr = sweep_snr(c);
    REQUIRE(snr.size() == 4);
    CHECK(snr[0].key == 0.0);  // sorted
    CHECK(snr[2].key == 10.0);
    std::ostringstream snr_csv;
    write_snr_csv(snr_csv, snr);
    CHECK(snr_csv.str().rfind("snr_db,policy,avg_goodput,pilot_fraction\n", 0) == 0);

    const auto mob = sweep_mobility(c);
    REQUIRE(mob.size() == 4);
    CHECK(mob[0].key == 5.0);
    CHECK(mob[0].period >= mob[2].period);  // faster fading, shorter cycle
    std::ostringstream mob_csv;
    write_mobility_csv(mob_csv, mob);
    CHECK(mob_csv.str().rfind("speed_mph,policy,avg_goodput,period\n", 0) == 0);

    std::ostringstream sim_csv;
    write_simulation_csv(sim_csv, sims);
    CHECK(sim_csv.str().rfind("seed,policy,mode,avg_goodput,pilot_fraction,std_error,horizon\n", 0) ==
          0);
    const auto doc = nlohmann::json::parse(to_json(sims));
    CHECK(doc.size() == 4);
    CHECK(doc[0]["age_histogram"].is_object());

    c.snr_grid_db.clear();
    CHECK_THROWS(sweep_snr(c));
}

TEST_CASE("mobility sweep rejects an impossible grid point up front") {
    auto c = parse_config(R"({"sweep": {"speed": [10, 1e8]}})");
    try {
        sweep_mobility(c);
        FAIL("expected an error");
    } catch (const std::exception& e) {
        CHECK(std::string(e.what()).find("speed grid point") != std::string::npos);
    }
}

TEST_CASE("validate runs every check on a reduced budget") {
    auto c = parse_config(R"({"validation": {"samples": 20000, "quadrature_mc_samples": 2000,
                                             "random_reward_curves": 3}})");
    const auto report = validate(c);
    std::set<std::string> names;
    for (const auto& ch : report.checks) names.insert(ch.name);
    for (const char* n : {"mcs_table", "autocorrelation_fidelity", "trace_power",
                          "mmse_orthogonality_age_1", "quadrature_vs_monte_carlo",
                          "scheduler_oracles"})
        CHECK(names.count(n) == 1);
    for (const auto& ch : report.checks)
        if (ch.name == "scheduler_oracles" || ch.name == "mcs_table") CHECK(ch.passed);
    const auto doc = nlohmann::json::parse(to_json(report));
    CHECK(doc["checks"].size() == report.checks.size());
}

TEST_CASE("corrupted BLER table fails validation naming the CQI") {
    TempDir dir;
    {
        std::ofstream(dir.path / "bad.csv") << "cqi,snr_db,bler\n1,0,0.9\n1,5,0.1\n2,0,0.9\n2,5,0.95\n";
        std::ofstream(dir.path / "cfg.json") << R"({"mcs": {"bler_table": "bad.csv"},
            "validation": {"samples": 20000, "quadrature_mc_samples": 1000,
                           "random_reward_curves": 1}})";
    }
    const auto report = validate(load_config(dir.path / "cfg.json"));
    CHECK_FALSE(report.passed());
    REQUIRE_FALSE(report.checks.empty());
    CHECK(report.checks[0].name == "mcs_table");
    CHECK_FALSE(report.checks[0].passed);
    CHECK(report.checks[0].detail.find("CQI 2") != std::string::npos);
}

TEST_CASE("reruns are bit-identical and curve CSVs round trip") {
    const auto c = parse_config(R"({"simulation": {"horizon": 5000, "seeds": [3]}})");
    std::ostringstream a;
    std::ostringstream b;
    write_simulation_csv(a, simulate(c));
    write_simulation_csv(b, simulate(c));
    CHECK(a.str() == b.str());

    const auto curve = goodput_curve(c);
    std::stringstream csv;
    write_curve_csv(csv, curve);
    const auto back = parse_reward_csv(csv);
    REQUIRE(back.max_age() == curve.max_age());
    for (std::int64_t age = 1; age <= curve.max_age(); ++age) REQUIRE(back(age) == curve(age));
}

TEST_CASE("no feasible MCS at very low SNR") {
    const auto c = parse_config(R"({"link": {"snr_db": -40},
                                    "simulation": {"horizon": 5000, "seeds": [1]}})");
    for (const auto& r : simulate(c)) CHECK(r.avg_goodput <= 1e-6);
}

TEST_CASE("sweep trends over the published grids") {
    // One seed, shorter horizon: the trends are far larger than the noise here.
    const auto c = parse_config(R"({
        "simulation": {"horizon": 200000, "seeds": [1]},
        "sweep": {"snr_db": [-5, 0, 5, 10, 15, 20, 25],
                  "speed": [2, 10, 20, 30, 40, 50, 60]}})");
    constexpr double kSlack = 0.02;

    const auto snr = sweep_snr(c);
    REQUIRE(snr.size() == 14);
    for (std::size_t i = 0; i < snr.size(); i += 2) {
        CAPTURE(snr[i].key);
        CHECK(snr[i].avg_goodput >= snr[i + 1].avg_goodput - 1e-3);  // threshold vs periodic-2
        if (i >= 2) {
            CHECK(snr[i].avg_goodput >= snr[i - 2].avg_goodput - kSlack);
            CHECK(snr[i + 1].avg_goodput >= snr[i - 1].avg_goodput - kSlack);
        }
    }

    const auto mob = sweep_mobility(c);
    REQUIRE(mob.size() == 14);
    for (std::size_t i = 0; i < mob.size(); i += 2) {
        CAPTURE(mob[i].key);
        CHECK(mob[i].avg_goodput >= mob[i + 1].avg_goodput - 1e-3);
        if (i >= 2) {
            CHECK(mob[i].avg_goodput <= mob[i - 2].avg_goodput + kSlack);
            CHECK(mob[i + 1].avg_goodput <= mob[i - 1].avg_goodput + kSlack);
            CHECK(mob[i].period <= mob[i - 2].period);
        }
        // Period agrees with a brute-force search on the same curve.
        const auto curve = build_reward_curve(c.link_params_at(std::nullopt, mob[i].key),
                                              c.mcs_table(), c.max_age);
        CHECK(brute_force_optimal_period(curve, 200).period == mob[i].period);
    }
}

}  // TEST_SUITE
