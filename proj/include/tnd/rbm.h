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

#ifndef TND_RBM_H
#define TND_RBM_H

#include <cstddef>
#include <filesystem>

#include <Eigen/Dense>

#include "tnd/lattice.h"
#include "tnd/rng.h"

namespace tnd {

/// Parameters of the three-layer machine. The hidden layer couples to the
/// syndrome layer through U and to the error layer through W; b, c and d are
/// the error, hidden and syndrome biases.
struct RbmParams {
    Eigen::MatrixXd U;  // n_h x n_s
    Eigen::MatrixXd W;  // n_h x n_e
    Eigen::VectorXd b;  // n_e
    Eigen::VectorXd c;  // n_h
    Eigen::VectorXd d;  // n_s

    static RbmParams zeros(Eigen::Index n_e, Eigen::Index n_s, Eigen::Index n_h);

    Eigen::Index num_error() const { return W.cols(); }
    Eigen::Index num_syndrome() const { return U.cols(); }
    Eigen::Index num_hidden() const { return c.size(); }

    /// Throws std::invalid_argument on inconsistent shapes or non-finite entries.
    void validate() const;

    bool operator==(const RbmParams &other) const;
};

/// Unit values are 0.0 or 1.0.
struct MachineState {
    Eigen::VectorXd e;
    Eigen::VectorXd s;
    Eigen::VectorXd h;
};

struct VisibleSample {
    Eigen::VectorXd e;
    Eigen::VectorXd s;
};

/// (e, S(e)) as machine units.
VisibleSample to_visible(const Lattice &lattice, const Chain &chain);
Eigen::VectorXd to_units(const std::vector<std::uint8_t> &bits);

/// Overflow-safe logistic function and log(1 + exp(x)).
double sigmoid(double x);
double softplus(double x);

/// Elementwise logistic function; saturates to exactly 0 or 1 without NaN.
template <typename Derived>
Eigen::Matrix<double, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime> sigmoid(
    const Eigen::MatrixBase<Derived> &x) {
    return (1.0 + (-x.array()).exp()).inverse().matrix();
}

double energy(const RbmParams &params, const MachineState &state);

/// Free energy of a visible configuration with the hidden layer summed out.
double effective_energy(const RbmParams &params, const Eigen::VectorXd &e, const Eigen::VectorXd &s);

/// c + U s + W e.
Eigen::VectorXd hidden_field(const RbmParams &params, const Eigen::VectorXd &e, const Eigen::VectorXd &s);

Eigen::VectorXd prob_h_given_vis(const RbmParams &params, const Eigen::VectorXd &e, const Eigen::VectorXd &s);
Eigen::VectorXd prob_e_given_h(const RbmParams &params, const Eigen::VectorXd &h);
Eigen::VectorXd prob_s_given_h(const RbmParams &params, const Eigen::VectorXd &h);

/// Independent Bernoulli draw per component.
Eigen::VectorXd sample_units(const Eigen::VectorXd &probs, Rng &rng);

/// One block-Gibbs sweep: h | (e, s), then e | h, then s | h unless clamped.
MachineState gibbs_sweep(const RbmParams &params, const MachineState &state, bool clamp_syndrome, Rng &rng);

// Exact enumeration over visible states, for tiny machines only.

constexpr Eigen::Index kMaxOracleVisible = 20;

/// Visible configuration number `index`: bit j of the index is e_j for
/// j < n_e, the remaining bits are the syndrome units.
VisibleSample enumerate_visible(Eigen::Index n_e, Eigen::Index n_s, std::uint64_t index);

/// log Z. Throws std::length_error ("oracle size exceeded") when n_e + n_s > 20.
double exact_log_partition(const RbmParams &params);

/// log p(e, s) for every visible configuration, indexed as in enumerate_visible.
Eigen::VectorXd exact_visible_log_probs(const RbmParams &params);

/// Machine plus the lattice size and training error rate it was built for.
struct ModelFile {
    int L = 0;
    double p_err = 0.0;
    RbmParams params;
};

/// Binary "TNRB" v1 format. Throws FormatError.
void save_model(const ModelFile &model, const std::filesystem::path &path);
ModelFile load_model(const std::filesystem::path &path);

}  // namespace tnd

#endif
