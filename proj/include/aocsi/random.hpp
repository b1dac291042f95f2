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

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace aocsi {

/// Independent random streams derived from one run seed. Each consumer gets
/// its own engine so that, for example, fading traces are identical across
/// policies that consume pilot noise differently.
enum class Stream : std::uint32_t {
    kFading = 1,
    kPilotNoise = 2,
    kDecoding = 3,
    kOracle = 4,
};

inline std::mt19937_64 make_engine(std::uint64_t seed, Stream stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), 0x9e3779b9u};
    return std::mt19937_64(seq);
}

/// CN(0, variance) sampler. Keep one per loop: the underlying normal
/// distribution caches every second deviate.
class ComplexGaussian {
public:
    explicit ComplexGaussian(double variance) : scale_(std::sqrt(variance / 2.0)) {}

    template <typename Engine>
    std::complex<double> operator()(Engine& engine) {
        const double re = normal_(engine);
        const double im = normal_(engine);
        return {scale_ * re, scale_ * im};
    }

private:
    std::normal_distribution<double> normal_{0.0, 1.0};
    double scale_;
};

/// Single CN(0, variance) draw.
template <typename Engine>
std::complex<double> complex_normal(Engine& engine, double variance) {
    std::normal_distribution<double> normal(0.0, std::sqrt(variance / 2.0));
    const double re = normal(engine);
    const double im = normal(engine);
    return {re, im};
}

}  // namespace aocsi
