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

#include "aocsi/mmse_estimation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aocsi {

namespace {

void check_age(std::int64_t age) {
    if (age < 0) throw std::invalid_argument("pilot age must be non-negative");
}

void check_noise(const LinkParams& params) {
    if (!(params.noise_variance > 0.0))
        throw std::invalid_argument("SINR requires a strictly positive noise variance");
}

}  // namespace

double mmse_gain_for_correlation(double correlation, const LinkParams& params) {
    return std::sqrt(params.pilot_power) * correlation / pilot_power_mean(params);
}

double error_variance_for_correlation(double correlation, const LinkParams& params) {
    const double explained =
        params.pilot_power * correlation * correlation / pilot_power_mean(params);
    // Rounding can push the difference a hair below zero at age 0 with no noise.
    return std::clamp(params.channel_variance - explained, 0.0, params.channel_variance);
}

double sinr_gain_for_correlation(double correlation, const LinkParams& params) {
    check_noise(params);
    const double a = mmse_gain_for_correlation(std::abs(correlation), params);
    return params.data_power * a * a /
           (params.data_power * error_variance_for_correlation(correlation, params) +
            params.noise_variance);
}

double mmse_gain(std::int64_t age, const LinkParams& params) {
    check_age(age);
    return mmse_gain_for_correlation(autocorrelation(age, params), params);
}

double error_variance(std::int64_t age, const LinkParams& params) {
    check_age(age);
    return error_variance_for_correlation(autocorrelation(age, params), params);
}

ChannelEstimate estimate_channel(const PilotObservation& obs, const LinkParams& params) {
    check_age(obs.age);
    const double rho = autocorrelation(obs.age, params);
    const double gain = mmse_gain_for_correlation(rho, params);
    return {gain * obs.value, gain * gain * std::norm(obs.value),
            error_variance_for_correlation(rho, params)};
}

double sinr(std::int64_t age, std::complex<double> y, const LinkParams& params) {
    check_age(age);
    check_noise(params);
    const double rho = autocorrelation(age, params);
    const double a = mmse_gain_for_correlation(std::abs(rho), params);
    const double signal = params.data_power * a * a * std::norm(y);
    const double interference =
        params.data_power * error_variance_for_correlation(rho, params) + params.noise_variance;
    return signal / interference;
}

double sinr_gain(std::int64_t age, const LinkParams& params) {
    check_age(age);
    return sinr_gain_for_correlation(autocorrelation(age, params), params);
}

}  // namespace aocsi
