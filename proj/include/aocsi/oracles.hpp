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
#include "aocsi/link_adaptation.hpp"

namespace aocsi {

/// Monte Carlo estimate of r(age) that simulates the pilot physically:
/// h_old ~ CN(0, rho0), y = sqrt(P_p) h_old + n, eta = sinr(age, y). It never
/// touches the exponential law of |y|^2 that the quadrature relies on.
struct MonteCarloEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};

MonteCarloEstimate monte_carlo_expected_goodput(std::int64_t age, const LinkParams& params,
                                                const McsTable& table, std::uint64_t samples,
                                                std::uint64_t seed);

/// Draws (h_{t-age}, h_t) jointly Gaussian with the Jakes covariance, forms
/// the MMSE estimate and its error, and reports the sample mean of
/// estimate * conj(error) plus the mean estimate power.
struct OrthogonalityStatistic {
    std::complex<double> cross_mean;
    double cross_std_error = 0.0;  // of the complex mean, sqrt(E|z - mean|^2 / N)
    double estimate_power = 0.0;   // sample mean of |h_hat|^2
    double estimate_power_std_error = 0.0;
    double error_variance = 0.0;   // analytic
};

OrthogonalityStatistic mmse_orthogonality(std::int64_t age, const LinkParams& params,
                                          std::uint64_t samples, std::uint64_t seed);

}  // namespace aocsi
