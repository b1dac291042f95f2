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

#include "aocsi/channel_model.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>

#include "aocsi/random.hpp"

namespace aocsi {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

// sum_k (-1)^k (x/2)^{2k} / (k!)^2, accurate to ~1e-12 absolute for |x| <= 12.
double j0_series(double x) {
    const double q = -0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(k));
        sum += term;
        if (std::abs(term) < 1e-17 * std::max(1.0, std::abs(sum))) break;
    }
    return sum;
}

// Hankel expansion J0(x) = sqrt(2/(pi x)) (P cos chi - Q sin chi), chi = x - pi/4.
// Summed until the terms stop shrinking; at x = 12 the smallest term is ~1e-11.
double j0_asymptotic(double x) {
    const double inv8x = 1.0 / (8.0 * x);
    double p = 1.0;
    double q = 0.0;
    double term = 1.0;  // a_k / x^k including sign pattern handled below
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 64; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= odd * odd * inv8x / static_cast<double>(k);
        if (term > prev) break;
        prev = term;
        // k odd contributes to Q, k even to P; signs alternate within each.
        switch (k % 4) {
            case 1: q -= term; break;
            case 2: p -= term; break;
            case 3: q += term; break;
            case 0: p += term; break;
        }
        if (term < 1e-17) break;
    }
    const double chi = x - 0.25 * std::numbers::pi;
    return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

struct FftwPlanDeleter {
    void operator()(fftw_plan_s* plan) const { fftw_destroy_plan(plan); }
};
struct FftwFree {
    void operator()(fftw_complex* p) const { fftw_free(p); }
};

}  // namespace

void LinkParams::validate() const {
    require(positive_finite(pilot_power), "pilot_power must be positive");
    require(positive_finite(data_power), "data_power must be positive");
    require(positive_finite(noise_variance), "noise_variance must be positive");
    require(positive_finite(channel_variance), "channel_variance must be positive");
    require(std::isfinite(doppler_hz) && doppler_hz >= 0.0, "doppler_hz must be non-negative");
    require(positive_finite(sample_period_s), "sample_period_s must be positive");
    require(normalized_doppler() < 0.5,
            "normalized Doppler f_d*T_s = " + std::to_string(normalized_doppler()) +
                " must be below 0.5");
}

void MobilityParams::validate() const {
    require(std::isfinite(speed_mps) && speed_mps >= 0.0, "speed must be non-negative");
    require(speed_mps < kSpeedOfLight, "speed must be below the speed of light");
    require(positive_finite(carrier_hz), "carrier frequency must be positive");
}

double mph_to_mps(double mph) { return mph * kMetersPerSecondPerMph; }

double doppler_frequency(const MobilityParams& mobility) {
    mobility.validate();
    return mobility.speed_mps * mobility.carrier_hz / kSpeedOfLight;
}

double bessel_j0(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("bessel_j0: argument must be finite");
    const double ax = std::abs(x);
    return ax <= 12.0 ? j0_series(ax) : j0_asymptotic(ax);
}

double autocorrelation(std::int64_t lag, const LinkParams& params) {
    if (lag < 0) throw std::invalid_argument("autocorrelation: lag must be non-negative");
    if (lag == 0 || params.doppler_hz == 0.0) return params.channel_variance;
    const double arg = 2.0 * std::numbers::pi * params.normalized_doppler() * static_cast<double>(lag);
    return params.channel_variance * bessel_j0(arg);
}

FadingTrace::FadingTrace(std::vector<std::complex<double>> samples, const LinkParams& params,
                         std::uint64_t seed)
    : samples_(std::move(samples)), params_(params), seed_(seed) {}

FadingTrace generate_fading_trace(const LinkParams& params, std::size_t length,
                                  std::uint64_t seed) {
    params.validate();
    require(length >= 1, "generate_fading_trace: length must be at least 1");

    auto engine = make_engine(seed, Stream::kFading);
    if (params.doppler_hz == 0.0) {
        const auto h0 = complex_normal(engine, params.channel_variance);
        return FadingTrace(std::vector<std::complex<double>>(length, h0), params, seed);
    }

    std::size_t m = 1;
    while (m < 2 * length) m <<= 1;

    using Buffer = std::unique_ptr<fftw_complex[], FftwFree>;
    Buffer buf(fftw_alloc_complex(m));
    if (!buf) throw std::bad_alloc();

    // Circulant eigenvalues: DFT of the symmetric autocovariance sequence.
    const double w = 2.0 * std::numbers::pi * params.normalized_doppler();
    for (std::size_t k = 0; k < m; ++k) {
        const double lag = static_cast<double>(std::min(k, m - k));
        buf[k][0] = bessel_j0(w * lag);
        buf[k][1] = 0.0;
    }
    {
        std::unique_ptr<fftw_plan_s, FftwPlanDeleter> plan(fftw_plan_dft_1d(
            static_cast<int>(m), buf.get(), buf.get(), FFTW_FORWARD, FFTW_ESTIMATE));
        fftw_execute(plan.get());
    }

    // Shape unit complex Gaussian spectral samples; negative eigenvalues from
    // truncating J0 are clipped.
    const double inv_m = 1.0 / static_cast<double>(m);
    ComplexGaussian unit(1.0);
    for (std::size_t k = 0; k < m; ++k) {
        const double amplitude = std::sqrt(std::max(buf[k][0], 0.0) * inv_m);
        const auto z = unit(engine);
        buf[k][0] = amplitude * z.real();
        buf[k][1] = amplitude * z.imag();
    }
    {
        std::unique_ptr<fftw_plan_s, FftwPlanDeleter> plan(fftw_plan_dft_1d(
            static_cast<int>(m), buf.get(), buf.get(), FFTW_BACKWARD, FFTW_ESTIMATE));
        fftw_execute(plan.get());
    }

    std::vector<std::complex<double>> samples(length);
    double power = 0.0;
    for (std::size_t t = 0; t < length; ++t) {
        samples[t] = {buf[t][0], buf[t][1]};
        power += std::norm(samples[t]);
    }
    power /= static_cast<double>(length);
    if (power > 0.0) {
        const double scale = std::sqrt(params.channel_variance / power);
        for (auto& s : samples) s *= scale;
    }
    return FadingTrace(std::move(samples), params, seed);
}

std::vector<double> empirical_autocorrelation(std::span<const std::complex<double>> samples,
                                              std::size_t max_lag) {
    require(max_lag >= 1, "empirical_autocorrelation: max_lag must be positive");
    require(samples.size() > 10 * max_lag,
            "empirical_autocorrelation: trace length must exceed 10 * max_lag");
    const std::size_t n = samples.size();
    std::vector<double> out(max_lag + 1);
    for (std::size_t lag = 0; lag <= max_lag; ++lag) {
        double acc = 0.0;
        for (std::size_t t = lag; t < n; ++t) {
            const auto a = samples[t];
            const auto b = samples[t - lag];
            acc += a.real() * b.real() + a.imag() * b.imag();
        }
        out[lag] = acc / static_cast<double>(n);
    }
    return out;
}

}  // namespace aocsi
