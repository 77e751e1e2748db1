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

#include "piecemaker/random.hpp"

#include <cmath>
#include <stdexcept>

namespace piecemaker {

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below requires a positive bound");
    // Rejection sampling keeps the result exactly uniform.
    const std::uint64_t limit = max() - (max() % bound);
    std::uint64_t value;
    do {
        value = (*this)();
    } while (value >= limit);
    return value % bound;
}

std::uint64_t Rng::geometric(double p) {
    if (!(p > 0.0) || p > 1.0) throw std::invalid_argument("geometric probability must be in (0, 1]");
    if (p == 1.0) {
        return 1;
    }
    // Inverse CDF: P(K > k) = (1 - p)^k.
    const double u = 1.0 - uniform();  // (0, 1]
    const double k = std::floor(std::log(u) / std::log1p(-p));
    if (k >= 9.0e18) return static_cast<std::uint64_t>(9.0e18);
    return static_cast<std::uint64_t>(k) + 1;
}

std::uint64_t mix_key(std::initializer_list<std::uint64_t> words) {
    std::uint64_t h = 0x6A09E667F3BCC909ull;
    for (std::uint64_t w : words) {
        Rng r(h ^ w);
        h = r();
    }
    return h;
}

}  // namespace piecemaker
