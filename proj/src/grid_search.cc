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

#include <limits>
#include <stdexcept>

#include "tnd/decoders.h"
#include "tnd/training.h"

namespace tnd {

std::vector<Hyperparams> default_grid(int L) {
    const int sites = L * L;
    std::vector<Hyperparams> grid;
    for (int n_h : {2 * sites, 4 * sites, 8 * sites}) {
        for (double eta : {0.01, 0.05, 0.1}) {
            for (int k : {1, 10}) {
                for (double l2 : {0.0, 1e-4}) {
                    for (std::size_t batch : {std::size_t{50}, std::size_t{100}}) {
                        for (double w : {0.01, 0.1}) {
                            Hyperparams h;
                            h.n_h = n_h;
                            h.eta = eta;
                            h.cd_k = k;
                            h.l2 = l2;
                            h.batch_size = batch;
                            h.init_width = w;
                            h.epochs = 500;
                            h.n_eq = 100;
                            grid.push_back(h);
                        }
                    }
                }
            }
        }
    }
    return grid;
}

GridSearchResult grid_search(const Dataset &dataset, std::span<const Hyperparams> grid,
                             std::span<const Chain> validation, std::uint64_t seed,
                             const GridSearchOptions &options) {
    if (grid.empty()) {
        throw std::invalid_argument("grid_search: empty grid");
    }
    if (validation.empty()) {
        throw std::invalid_argument("grid_search: empty validation set");
    }
    const Lattice lattice(dataset.L);
    const std::vector<VisibleSample> samples = visible_samples(dataset);

    GridSearchResult result;
    double best_score = std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const Hyperparams &hyper = grid[g];
        RbmParams params = train(samples, Eigen::Index(lattice.num_links()), Eigen::Index(lattice.num_vertices()),
                                 hyper, seed);

        std::vector<int> failed(validation.size(), 0);
        std::vector<int> timed_out(validation.size(), 0);
#pragma omp parallel for schedule(dynamic, 16)
        for (std::int64_t k = 0; k < std::int64_t(validation.size()); ++k) {
            const Chain &error = validation[std::size_t(k)];
            Rng rng = make_stream(seed, "validate", std::uint64_t(k));
            const DecodeOutcome outcome =
                neural_decode(lattice, params, syndrome_of(lattice, error), hyper.n_eq, options.max_sweeps, rng);
            if (outcome.timed_out) {
                timed_out[std::size_t(k)] = 1;
                failed[std::size_t(k)] = 1;
            } else {
                failed[std::size_t(k)] = evaluate_recovery(lattice, error, outcome.recovery).trivial() ? 0 : 1;
            }
        }

        GridPointScore score{hyper, 0.0, 0};
        std::size_t n_fail = 0;
        for (std::size_t k = 0; k < validation.size(); ++k) {
            n_fail += std::size_t(failed[k]);
            score.n_timeout += std::size_t(timed_out[k]);
        }
        score.p_fail = double(n_fail) / double(validation.size());
        result.scores.push_back(score);
        if (score.p_fail < best_score) {
            best_score = score.p_fail;
            result.best_index = g;
            result.best = hyper;
            result.params = std::move(params);
        }
    }
    return result;
}

}  // namespace tnd
