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

#ifndef TND_DECODERS_H
#define TND_DECODERS_H

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "tnd/lattice.h"
#include "tnd/rbm.h"
#include "tnd/rng.h"

namespace tnd {

/// Result of one decode. Unless `timed_out`, the recovery reproduces the
/// input syndrome.
struct DecodeOutcome {
    Chain recovery;
    std::size_t sweeps_used = 0;
    bool timed_out = false;
};

inline constexpr int kDefaultEquilibrationSweeps = 100;
inline constexpr std::size_t kDefaultMaxSweeps = 100000;

/// Samples a recovery chain from the machine with the syndrome layer clamped.
///
/// The error and hidden layers start as fair coins. After `n_eq` unchecked
/// sweeps, every further sweep compares S(e) with `s0` and the first match is
/// returned. `max_sweeps` bounds the checked sweeps; when it is exhausted the
/// last error state comes back with `timed_out` set.
DecodeOutcome neural_decode(const Lattice &lattice, const RbmParams &params, const Syndrome &s0, int n_eq,
                            std::size_t max_sweeps, Rng &rng);

struct MlDecodeResult {
    DecodeOutcome outcome;
    /// Class counts of r_1 + r_i over collected samples, by HomologyClass::index().
    std::array<std::size_t, 4> histogram{};
    /// First collected chain, the reference the histogram is measured against.
    Chain reference;
    std::size_t samples_collected = 0;
};

/// Collects `n_samples` compatible chains from one clamped chain and returns a
/// chain from the most populated homology class (ties to the lower index).
/// Each sample gets its own budget of `max_sweeps` checked sweeps. With
/// n_samples == 1 the outcome equals neural_decode for the same stream.
MlDecodeResult ml_decode(const Lattice &lattice, const RbmParams &params, const Syndrome &s0,
                         std::size_t n_samples, int n_eq, std::size_t max_sweeps, Rng &rng);

struct Vertex {
    int x = 0;
    int y = 0;
    bool operator==(const Vertex &) const = default;
};

/// Vertices with an odd syndrome bit, in vertex-index order.
struct DefectSet {
    std::vector<Vertex> vertices;
};

DefectSet defects_of(const Lattice &lattice, const Syndrome &syndrome);

/// Manhattan distance on the L x L torus.
int torus_distance(Vertex u, Vertex v, int L);

inline constexpr std::size_t kMaxMatchingDefects = 24;

struct Matching {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // indices into DefectSet::vertices
    int weight = 0;
};

/// Exact minimum-weight perfect matching by dynamic programming over subsets.
/// Throws std::invalid_argument for an odd defect count ("invalid syndrome")
/// or more than 24 defects ("instance too large").
Matching min_weight_matching(const DefectSet &defects, int L);

/// Shortest link path from u to v: along x first (in row u.y), then along y
/// (in column v.x). Each leg takes the shorter way around; ties go in the
/// positive direction.
Chain path_chain(const Lattice &lattice, Vertex u, Vertex v);

/// MWPM recovery chain: the sum of path_chain over the optimal pairs.
Chain mwpm_decode(const Lattice &lattice, const Syndrome &s0);

/// Homology class of e0 + r. Throws std::invalid_argument when the two chains
/// have different syndromes.
HomologyClass evaluate_recovery(const Lattice &lattice, const Chain &e0, const Chain &r);

}  // namespace tnd

#endif
