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

#include "tnd/rng.h"

namespace tnd {

namespace {

// FNV-1a; only needs to be stable, not strong.
std::uint64_t hash_domain(std::string_view domain) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : domain) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

Rng make_stream(std::uint64_t seed, std::string_view domain, std::uint64_t index) {
    const std::uint64_t tag = hash_domain(domain);
    std::seed_seq seq{
        static_cast<std::uint32_t>(seed),
        static_cast<std::uint32_t>(seed >> 32),
        static_cast<std::uint32_t>(tag),
        static_cast<std::uint32_t>(tag >> 32),
        static_cast<std::uint32_t>(index),
        static_cast<std::uint32_t>(index >> 32),
    };
    return Rng(seq);
}

}  // namespace tnd
