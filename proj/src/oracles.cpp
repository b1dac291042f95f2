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

#include "aocsi/oracles.hpp"

#include <cmath>
#include <stdexcept>

#include "aocsi/mmse_estimation.hpp"
#include "aocsi/random.hpp"

namespace aocsi {

namespace {

struct CorrelatedPair {
    std::complex<double> past;
    std::complex<double> now;
};

// now = (rho/rho0) past + innovation, innovation ~ CN(0, rho0 - rho^2/rho0).
class PairSampler {
public:
    PairSampler(double rho, double rho0)
        : ratio_(rho / rho0), past_(rho0), innovation_(std::max(rho0 - rho * rho / rho0, 0.0)) {}

    template <typename Engine>
    CorrelatedPair operator()(Engine& engine) {
        const auto past = past_(engine);
        return {past, ratio_ * past + innovation_(engine)};
    }

private:
    double ratio_;
    ComplexGaussian past_;
    ComplexGaussian innovation_;
};

}  // namespace

MonteCarloEstimate monte_carlo_expected_goodput(std::int64_t age, const LinkParams& params,
                                                const McsTable& table, std::uint64_t samples,
                                                std::uint64_t seed) {
    if (samples < 2) throw std::invalid_argument("Monte Carlo needs at least two samples");
    params.validate();
    auto engine = make_engine(seed, Stream::kOracle);
    const double sqrt_pp = std::sqrt(params.pilot_power);
    ComplexGaussian channel(params.channel_variance);
    ComplexGaussian noise(params.noise_variance);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        const auto h = channel(engine);
        const auto y = sqrt_pp * h + noise(engine);
        const double g = max_goodput(sinr(age, y, params), table).goodput;
        sum += g;
        sum_sq += g * g;
    }
    const double n = static_cast<double>(samples);
    const double mean = sum / n;
    const double var = std::max(sum_sq / n - mean * mean, 0.0) * n / (n - 1.0);
    return {mean, std::sqrt(var / n)};
}

OrthogonalityStatistic mmse_orthogonality(std::int64_t age, const LinkParams& params,
                                          std::uint64_t samples, std::uint64_t seed) {
    if (samples < 2) throw std::invalid_argument("orthogonality check needs at least two samples");
    params.validate();
    auto engine = make_engine(seed, Stream::kOracle);
    const double rho0 = params.channel_variance;
    const double rho = autocorrelation(age, params);
    const double sqrt_pp = std::sqrt(params.pilot_power);

    PairSampler pairs(rho, rho0);
    ComplexGaussian noise(params.noise_variance);
    std::complex<double> sum{};
    double sum_abs_sq = 0.0;
    double power = 0.0;
    double power_sq = 0.0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        const auto [past, now] = pairs(engine);
        const auto y = sqrt_pp * past + noise(engine);
        const auto est = estimate_channel({y, age}, params);
        const auto z = est.estimate * std::conj(now - est.estimate);
        sum += z;
        sum_abs_sq += std::norm(z);
        power += est.estimate_variance;
        power_sq += est.estimate_variance * est.estimate_variance;
    }
    const double n = static_cast<double>(samples);
    OrthogonalityStatistic out;
    out.cross_mean = sum / n;
    out.cross_std_error = std::sqrt(std::max(sum_abs_sq / n - std::norm(out.cross_mean), 0.0) / (n - 1.0));
    out.estimate_power = power / n;
    out.estimate_power_std_error =
        std::sqrt(std::max(power_sq / n - out.estimate_power * out.estimate_power, 0.0) / (n - 1.0));
    out.error_variance = error_variance(age, params);
    return out;
}

}  // namespace aocsi
