// Copyright 2026 The toric-rbm Authors
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

#ifndef TND_RNG_H
#define TND_RNG_H

#include <cstdint>
#include <random>
#include <string_view>

namespace tnd {

using Rng = std::mt19937_64;

/// Returns an independent generator for `(seed, domain, index)`.
///
/// Every random quantity in the project is drawn from a stream obtained here,
/// so results depend only on seeds and never on thread scheduling. `domain`
/// separates namespaces such as "train" and "eval" that share a user seed.
Rng make_stream(std::uint64_t seed, std::string_view domain, std::uint64_t index = 0);

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
inline double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(Rng &rng, double p) {
    return uniform01(rng) < p;
}

}  // namespace tnd

#endif
