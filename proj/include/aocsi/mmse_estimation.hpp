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

#include <complex>
#include <cstdint>

#include "aocsi/channel_model.hpp"

namespace aocsi {

/// Latest received pilot y_{t-age} and its age in slots.
struct PilotObservation {
    std::complex<double> value;
    std::int64_t age = 1;
};

/// Decomposition h_t = estimate + error of the linear MMSE estimator.
struct ChannelEstimate {
    std::complex<double> estimate;
    double estimate_variance = 0.0;  // E[|h_hat|^2 | y]
    double error_variance = 0.0;     // E[|h - h_hat|^2], independent of y
};

// The *_for_correlation overloads take rho_h(age) directly; the age-based
// forms look it up through autocorrelation().

double mmse_gain_for_correlation(double correlation, const LinkParams& params);
double error_variance_for_correlation(double correlation, const LinkParams& params);
double sinr_gain_for_correlation(double correlation, const LinkParams& params);

/// sqrt(P_p) rho_h(age) / (P_p rho0 + sigma_n^2). Age 0 is the fresh-pilot limit.
double mmse_gain(std::int64_t age, const LinkParams& params);

/// rho0 - P_p |rho_h(age)|^2 / (P_p rho0 + sigma_n^2).
double error_variance(std::int64_t age, const LinkParams& params);

ChannelEstimate estimate_channel(const PilotObservation& obs, const LinkParams& params);

/// SINR of a data slot decoded with the MMSE estimate built from pilot y of the given age.
double sinr(std::int64_t age, std::complex<double> y, const LinkParams& params);

/// sinr(age, y) == sinr_gain(age) * |y|^2.
double sinr_gain(std::int64_t age, const LinkParams& params);

/// Variance of the received pilot, P_p rho0 + sigma_n^2. |y|^2 is exponential with this mean.
inline double pilot_power_mean(const LinkParams& params) {
    return params.pilot_power * params.channel_variance + params.noise_variance;
}

}  // namespace aocsi
