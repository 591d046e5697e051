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

#ifndef TND_BENCH_H
#define TND_BENCH_H

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "tnd/decoders.h"
#include "tnd/lattice.h"
#include "tnd/rbm.h"
#include "tnd/rng.h"

namespace tnd {

/// A decoder as seen by the benchmark. `true_error` is handed over only so
/// calibration decoders can be written; real decoders ignore it.
using DecodeFn = std::function<DecodeOutcome(const Syndrome &syndrome, const Chain &true_error, Rng &rng)>;

DecodeFn make_mwpm_decoder(const Lattice &lattice);
DecodeFn make_neural_decoder(const Lattice &lattice, std::shared_ptr<const RbmParams> params, int n_eq,
                             std::size_t max_sweeps);

struct EvalReport {
    std::string decoder;
    int L = 0;
    double p_err = 0.0;
    std::size_t M = 0;
    std::size_t n_fail = 0;
    double p_fail = 0.0;
    /// Decodes by class index (h0, Z1, Z2, Z1Z2). Timed-out decodes have no
    /// class and are only counted in n_timeout, so the bins plus n_timeout
    /// sum to M and n_fail = M - class_counts[0].
    std::array<std::size_t, 4> class_counts{};
    std::size_t n_timeout = 0;
    std::uint64_t seed = 0;
    double wall_time_s = 0.0;

    bool same_outcome(const EvalReport &other) const;
};

/// Draws M test chains from stream (seed, "eval", k), decodes each syndrome
/// and classifies e_k + r_k. Timeouts and decoder exceptions count as failures.
EvalReport estimate_pfail(const Lattice &lattice, const DecodeFn &decoder, const std::string &decoder_name,
                          double p_err, std::size_t M, std::uint64_t seed);

/// estimate_pfail with the neural decoder.
EvalReport homology_histogram(const Lattice &lattice, const RbmParams &params, double p_err, std::size_t M,
                              std::uint64_t seed, int n_eq = kDefaultEquilibrationSweeps,
                              std::size_t max_sweeps = kDefaultMaxSweeps);

const char *report_csv_header();
std::string to_csv_row(const EvalReport &report);
void write_reports_csv(std::ostream &out, std::span<const EvalReport> reports);

struct CompareConfig {
    int L = 4;
    std::vector<double> p_grid;
    std::size_t M = 10000;
    std::uint64_t seed = 1;
    std::vector<std::string> decoders{"mwpm", "neural"};
    /// Model path with "{L}" and "{p}" placeholders, p printed with two decimals.
    std::string model_pattern = "models/L{L}_p{p}.tnrb";
    int n_eq = kDefaultEquilibrationSweeps;
    std::size_t max_sweeps = kDefaultMaxSweeps;
};

std::string model_path_for(const std::string &pattern, int L, double p_err);

/// One row per (decoder, p_err); `error` is set instead of `report` when the
/// row could not be produced.
struct CompareRow {
    std::string decoder;
    int L = 0;
    double p_err = 0.0;
    std::optional<EvalReport> report;
    std::string error;
};

/// Rows sorted by decoder name, then p_err.
std::vector<CompareRow> compare_decoders(const CompareConfig &config);

/// Failed rows keep the decoder, L and p_err columns and leave the rest empty.
void write_compare_csv(std::ostream &out, std::span<const CompareRow> rows);

}  // namespace tnd

#endif
