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

#ifndef TND_NOISE_H
#define TND_NOISE_H

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "tnd/lattice.h"
#include "tnd/rng.h"

namespace tnd {

/// Independent phase-flip channel: every link is flipped with probability p_err.
struct ErrorModel {
    double p_err = 0.0;

    explicit ErrorModel(double p);
};

/// Error chains drawn at one error probability. Syndromes are recomputed on
/// demand rather than stored.
struct Dataset {
    int L = 0;
    double p_err = 0.0;
    std::uint64_t seed = 0;
    std::vector<Chain> chains;

    bool operator==(const Dataset &) const = default;
};

/// Error probabilities 0.05, 0.06, ..., 0.15.
std::vector<double> default_error_grid();

Chain sample_chain(const Lattice &lattice, const ErrorModel &model, Rng &rng);

/// Chain k is drawn from stream (seed, "dataset", k), so the result does not
/// depend on the number of threads.
Dataset generate_dataset(const Lattice &lattice, const ErrorModel &model, std::size_t count,
                         std::uint64_t seed);

/// Binary "TNDS" v1 format. Throws FormatError.
void save_dataset(const Dataset &dataset, const std::filesystem::path &path);
Dataset load_dataset(const std::filesystem::path &path, std::optional<int> expected_L = std::nullopt);

}  // namespace tnd

#endif
