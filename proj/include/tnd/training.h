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

#ifndef TND_TRAINING_H
#define TND_TRAINING_H

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <span>
#include <vector>

#include "tnd/lattice.h"
#include "tnd/noise.h"
#include "tnd/rbm.h"
#include "tnd/rng.h"

namespace tnd {

struct Hyperparams {
    double eta = 0.05;           // learning rate
    std::size_t batch_size = 100;
    double init_width = 0.1;     // weights start uniform on [-w/2, w/2]
    int cd_k = 1;
    double l2 = 0.0;             // weight decay on U and W
    int n_h = 32;
    int epochs = 500;
    int n_eq = 100;              // equilibration sweeps when decoding

    /// Throws std::invalid_argument naming the first bad field.
    void validate() const;
    bool operator==(const Hyperparams &) const = default;
};

/// Ascent direction for the mean log-likelihood, shaped like RbmParams.
struct GradientSet {
    Eigen::MatrixXd dU;
    Eigen::MatrixXd dW;
    Eigen::VectorXd db;
    Eigen::VectorXd dc;
    Eigen::VectorXd dd;

    static GradientSet zeros_like(const RbmParams &params);
    GradientSet &operator+=(const GradientSet &other);
    GradientSet &operator*=(double scale);
};

RbmParams init_params(Eigen::Index n_e, Eigen::Index n_s, const Hyperparams &hyper, Rng &rng);
RbmParams init_params(const Lattice &lattice, const Hyperparams &hyper, Rng &rng);

/// CD_k estimate of <.>_data - <.>_model over a minibatch.
///
/// The positive phase uses p(h | e, s) at the data. The negative phase runs k
/// unclamped Gibbs sweeps starting from each data point and uses p(h | e, s)
/// at the final visible sample.
GradientSet cd_k_gradient(const RbmParams &params, std::span<const VisibleSample> minibatch, int k, Rng &rng);

/// Exact gradient of the mean log-likelihood by enumeration of all visible
/// states. Throws std::length_error when n_e + n_s > 20.
GradientSet exact_kl_gradient(const RbmParams &params, std::span<const VisibleSample> data);

/// params + eta * grad, with weight decay eta * l2 applied to U and W only.
RbmParams sgd_step(const RbmParams &params, const GradientSet &grad, const Hyperparams &hyper);

struct EpochLog {
    int epoch = 0;
    double mean_effective_energy = 0.0;
    double grad_norm_U = 0.0;
    double grad_norm_W = 0.0;
    double grad_norm_b = 0.0;
    double grad_norm_c = 0.0;
    double grad_norm_d = 0.0;
    double wall_time_s = 0.0;
};

/// Called after every epoch with the log record and the current parameters.
using EpochCallback = std::function<void(const EpochLog &, const RbmParams &)>;

/// Plain SGD with CD_k gradients. Each epoch visits the samples in an order
/// shuffled from (seed, epoch) and splits them into minibatches, keeping a
/// short final batch. The result is a pure function of the arguments.
RbmParams train(std::span<const VisibleSample> samples, Eigen::Index n_e, Eigen::Index n_s,
                const Hyperparams &hyper, std::uint64_t seed, const EpochCallback &on_epoch = {});
RbmParams train(const Dataset &dataset, const Hyperparams &hyper, std::uint64_t seed,
                const EpochCallback &on_epoch = {});

std::vector<VisibleSample> visible_samples(const Dataset &dataset);

/// Appends epoch records to a CSV file, writing the header when the file is new.
class TrainingLogWriter {
  public:
    explicit TrainingLogWriter(const std::filesystem::path &path);
    void operator()(const EpochLog &log, const RbmParams &params = {});

  private:
    std::ofstream out_;
};

struct GridSearchOptions {
    std::size_t max_sweeps = 100000;
};

struct GridPointScore {
    Hyperparams hyper;
    double p_fail = 0.0;
    std::size_t n_timeout = 0;
};

struct GridSearchResult {
    std::size_t best_index = 0;
    Hyperparams best;
    RbmParams params;
    std::vector<GridPointScore> scores;
};

/// n_h in {2, 4, 8} L^2, eta in {0.01, 0.05, 0.1}, k in {1, 10},
/// l2 in {0, 1e-4}, batch size in {50, 100}, w in {0.01, 0.1}; 500 epochs.
std::vector<Hyperparams> default_grid(int L);

/// Trains one machine per grid point and keeps the one with the lowest
/// neural-decoder failure rate on `validation`. Ties go to the lower index.
GridSearchResult grid_search(const Dataset &dataset, std::span<const Hyperparams> grid,
                             std::span<const Chain> validation, std::uint64_t seed,
                             const GridSearchOptions &options = {});

}  // namespace tnd

#endif
