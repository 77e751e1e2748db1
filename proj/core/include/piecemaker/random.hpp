// Copyright 2026 The Piecemaker Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace piecemaker {

/// SplitMix64 generator. Satisfies UniformRandomBitGenerator, so it plugs into
/// <random> distributions, but the helpers below avoid those so draws are
/// reproducible across standard-library implementations.
class Rng {
  public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = 0) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound);

    bool bernoulli(double p) { return uniform() < p; }

    /// Number of Bernoulli(p) trials up to and including the first success;
    /// support {1, 2, ...}. Requires 0 < p <= 1.
    std::uint64_t geometric(double p);

  private:
    std::uint64_t state_;
};

/// Mixes a list of words into a single 64-bit key (SplitMix64 finalizer chain).
std::uint64_t mix_key(std::initializer_list<std::uint64_t> words);

/// Independent stream identified by (seed, trial, site) plus an optional salt.
/// Any permutation of trials across workers reproduces the same draws.
inline Rng stream(std::uint64_t seed, std::uint64_t salt, std::uint64_t trial, std::uint64_t site) {
    return Rng(mix_key({seed, salt, trial, site}));
}

}  // namespace piecemaker
