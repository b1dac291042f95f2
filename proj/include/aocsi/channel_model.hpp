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
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace aocsi {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s, exact SI value
inline constexpr double kMetersPerSecondPerMph = 0.44704;

/// Physical constants of the point-to-point link. Powers and variances are linear.
struct LinkParams {
    double pilot_power = 1.0;
    double data_power = 1.0;
    double noise_variance = 0.01;
    double channel_variance = 1.0;  // rho_h(0)
    double doppler_hz = 0.0;
    double sample_period_s = 1e-3;

    double normalized_doppler() const { return doppler_hz * sample_period_s; }

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

struct MobilityParams {
    double speed_mps = 0.0;
    double carrier_hz = 2.4e9;

    void validate() const;
};

double mph_to_mps(double mph);

/// Maximum Doppler shift v * f_c / c.
double doppler_frequency(const MobilityParams& mobility);

/// Bessel function of the first kind, order zero. Absolute error below 1e-8
/// for |x| <= 1e4 (power series for small arguments, Hankel asymptotic
/// expansion beyond).
double bessel_j0(double x);

/// Jakes autocovariance rho_h(lag) = rho0 * J0(2 pi f_d T_s lag).
double autocorrelation(std::int64_t lag, const LinkParams& params);

/// Immutable realisation of the fading process h_t.
class FadingTrace {
public:
    FadingTrace(std::vector<std::complex<double>> samples, const LinkParams& params,
                std::uint64_t seed);

    std::span<const std::complex<double>> samples() const { return samples_; }
    std::size_t size() const { return samples_.size(); }
    const std::complex<double>& operator[](std::size_t t) const { return samples_[t]; }
    const LinkParams& params() const { return params_; }
    std::uint64_t seed() const { return seed_; }

private:
    std::vector<std::complex<double>> samples_;
    LinkParams params_;
    std::uint64_t seed_;
};

/// Spectral synthesis of a stationary circularly-symmetric complex Gaussian
/// sequence with the Jakes autocovariance. The circulant embedding is at
/// least twice the trace length, so the process is not periodic within the
/// trace. The sample power is normalised to rho0. With f_d = 0 the trace is
/// a single CN(0, rho0) draw held constant.
FadingTrace generate_fading_trace(const LinkParams& params, std::size_t length,
                                  std::uint64_t seed);

/// Lag-k sample autocovariance Re{(1/N) sum_t h_t conj(h_{t-k})} for k = 0..max_lag.
std::vector<double> empirical_autocorrelation(std::span<const std::complex<double>> samples,
                                              std::size_t max_lag);

inline std::vector<double> empirical_autocorrelation(const FadingTrace& trace,
                                                     std::size_t max_lag) {
    return empirical_autocorrelation(trace.samples(), max_lag);
}

}  // namespace aocsi
