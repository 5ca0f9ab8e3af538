// SPDX-License-Identifier: Apache-2.0
//
// fdxsim: full-duplex MIMO link-level simulator
// Copyright (C) 2026 The fdxsim Authors
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
#include <initializer_list>
#include <random>
#include <vector>

namespace fdxsim {

/**
 * @brief Seeded random stream.
 *
 * Streams for parallel work are derived from a master seed and a tuple of
 * indices (sweep point, run, purpose) through std::seed_seq, so every
 * realization is reproducible no matter which worker computes it.
 */
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : RandomStream({seed}) {}

    RandomStream(std::initializer_list<std::uint64_t> key)
    {
        std::vector<std::uint32_t> words;
        words.reserve(2 * key.size());
        for (auto k : key) {
            words.push_back(static_cast<std::uint32_t>(k & 0xffffffffu));
            words.push_back(static_cast<std::uint32_t>(k >> 32));
        }
        std::seed_seq seq(words.begin(), words.end());
        engine_.seed(seq);
    }

    /// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
    template <typename Real = double>
    std::complex<Real> complex_normal(Real variance)
    {
        const Real s = std::sqrt(variance / Real(2));
        const Real re = static_cast<Real>(normal_(engine_));
        const Real im = static_cast<Real>(normal_(engine_));
        return {s * re, s * im};
    }

    double uniform() { return uniform_(engine_); }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Purpose tags used as the last element of a substream key.
enum class StreamPurpose : std::uint64_t { Channel = 0, Estimation = 1 };

inline RandomStream substream(std::uint64_t seed, std::uint64_t point, std::uint64_t run,
                              StreamPurpose purpose, std::uint64_t salt = 0)
{
    return RandomStream({seed, point, run, static_cast<std::uint64_t>(purpose), salt});
}

} // namespace fdxsim
