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

#include "tnd/training.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tnd {

namespace {

constexpr std::size_t kMonitorSamples = 1000;

Eigen::MatrixXd sample_matrix(const Eigen::MatrixXd &probs, Rng &rng) {
    Eigen::MatrixXd out(probs.rows(), probs.cols());
    for (Eigen::Index j = 0; j < probs.cols(); ++j) {
        for (Eigen::Index i = 0; i < probs.rows(); ++i) {
            out(i, j) = bernoulli(rng, probs(i, j)) ? 1.0 : 0.0;
        }
    }
    return out;
}

void require_shapes(const RbmParams &params, const GradientSet &grad) {
    if (grad.dU.rows() != params.U.rows() || grad.dU.cols() != params.U.cols() ||
        grad.dW.rows() != params.W.rows() || grad.dW.cols() != params.W.cols() ||
        grad.db.size() != params.b.size() || grad.dc.size() != params.c.size() ||
        grad.dd.size() != params.d.size()) {
        throw std::invalid_argument("gradient shape does not match parameters");
    }
}

}  // namespace

void Hyperparams::validate() const {
    auto fail = [](const std::string &field) {
        throw std::invalid_argument("invalid hyper-parameter: " + field);
    };
    if (!(eta > 0.0) || !std::isfinite(eta)) fail("eta");
    if (batch_size == 0) fail("batch_size");
    if (!(init_width >= 0.0) || !std::isfinite(init_width)) fail("init_width");
    if (cd_k < 1) fail("cd_k");
    if (!(l2 >= 0.0) || !std::isfinite(l2)) fail("l2");
    if (n_h < 1) fail("n_h");
    if (epochs < 0) fail("epochs");
    if (n_eq < 0) fail("n_eq");
}

GradientSet GradientSet::zeros_like(const RbmParams &params) {
    return GradientSet{
        Eigen::MatrixXd::Zero(params.U.rows(), params.U.cols()),
        Eigen::MatrixXd::Zero(params.W.rows(), params.W.cols()),
        Eigen::VectorXd::Zero(params.b.size()),
        Eigen::VectorXd::Zero(params.c.size()),
        Eigen::VectorXd::Zero(params.d.size()),
    };
}

GradientSet &GradientSet::operator+=(const GradientSet &o) {
    dU += o.dU;
    dW += o.dW;
    db += o.db;
    dc += o.dc;
    dd += o.dd;
    return *this;
}

GradientSet &GradientSet::operator*=(double scale) {
    dU *= scale;
    dW *= scale;
    db *= scale;
    dc *= scale;
    dd *= scale;
    return *this;
}

RbmParams init_params(Eigen::Index n_e, Eigen::Index n_s, const Hyperparams &hyper, Rng &rng) {
    hyper.validate();
    RbmParams p = RbmParams::zeros(n_e, n_s, hyper.n_h);
    const double w = hyper.init_width;
    auto draw = [&](Eigen::MatrixXd &m) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            for (Eigen::Index i = 0; i < m.rows(); ++i) {
                m(i, j) = w * (uniform01(rng) - 0.5);
            }
        }
    };
    draw(p.U);
    draw(p.W);
    return p;
}

RbmParams init_params(const Lattice &lattice, const Hyperparams &hyper, Rng &rng) {
    return init_params(Eigen::Index(lattice.num_links()), Eigen::Index(lattice.num_vertices()), hyper, rng);
}

GradientSet cd_k_gradient(const RbmParams &params, std::span<const VisibleSample> minibatch, int k, Rng &rng) {
    if (minibatch.empty()) {
        throw std::invalid_argument("cd_k_gradient: empty minibatch");
    }
    if (k < 1) {
        throw std::invalid_argument("cd_k_gradient: k must be at least 1");
    }
    const Eigen::Index n_e = params.num_error();
    const Eigen::Index n_s = params.num_syndrome();
    const auto batch = Eigen::Index(minibatch.size());

    Eigen::MatrixXd e0(n_e, batch);
    Eigen::MatrixXd s0(n_s, batch);
    for (Eigen::Index j = 0; j < batch; ++j) {
        const VisibleSample &v = minibatch[std::size_t(j)];
        if (v.e.size() != n_e || v.s.size() != n_s) {
            throw std::invalid_argument("cd_k_gradient: sample dimension mismatch");
        }
        e0.col(j) = v.e;
        s0.col(j) = v.s;
    }

    const Eigen::MatrixXd h0 = sigmoid((params.W * e0 + params.U * s0).colwise() + params.c);
    Eigen::MatrixXd h_sample = sample_matrix(h0, rng);
    Eigen::MatrixXd ek;
    Eigen::MatrixXd sk;
    Eigen::MatrixXd hk;
    for (int step = 1; step <= k; ++step) {
        ek = sample_matrix(sigmoid((params.W.transpose() * h_sample).colwise() + params.b), rng);
        sk = sample_matrix(sigmoid((params.U.transpose() * h_sample).colwise() + params.d), rng);
        hk = sigmoid((params.W * ek + params.U * sk).colwise() + params.c);
        if (step < k) {
            h_sample = sample_matrix(hk, rng);
        }
    }

    const double inv = 1.0 / double(batch);
    GradientSet g;
    g.dU = (h0 * s0.transpose() - hk * sk.transpose()) * inv;
    g.dW = (h0 * e0.transpose() - hk * ek.transpose()) * inv;
    g.db = (e0 - ek).rowwise().sum() * inv;
    g.dc = (h0 - hk).rowwise().sum() * inv;
    g.dd = (s0 - sk).rowwise().sum() * inv;
    return g;
}

GradientSet exact_kl_gradient(const RbmParams &params, std::span<const VisibleSample> data) {
    if (data.empty()) {
        throw std::invalid_argument("exact_kl_gradient: empty dataset");
    }
    const Eigen::VectorXd log_probs = exact_visible_log_probs(params);

    auto accumulate = [&](GradientSet &g, const VisibleSample &v, double weight) {
        const Eigen::VectorXd h = prob_h_given_vis(params, v.e, v.s);
        g.dU.noalias() += weight * h * v.s.transpose();
        g.dW.noalias() += weight * h * v.e.transpose();
        g.db += weight * v.e;
        g.dc += weight * h;
        g.dd += weight * v.s;
    };

    GradientSet data_term = GradientSet::zeros_like(params);
    for (const VisibleSample &v : data) {
        accumulate(data_term, v, 1.0 / double(data.size()));
    }
    GradientSet model_term = GradientSet::zeros_like(params);
    for (Eigen::Index m = 0; m < log_probs.size(); ++m) {
        accumulate(model_term, enumerate_visible(params.num_error(), params.num_syndrome(), std::uint64_t(m)),
                   std::exp(log_probs[m]));
    }
    model_term *= -1.0;
    data_term += model_term;
    return data_term;
}

RbmParams sgd_step(const RbmParams &params, const GradientSet &grad, const Hyperparams &hyper) {
    require_shapes(params, grad);
    const double eta = hyper.eta;
    const double decay = 1.0 - eta * hyper.l2;
    RbmParams next;
    next.U = decay * params.U + eta * grad.dU;
    next.W = decay * params.W + eta * grad.dW;
    next.b = params.b + eta * grad.db;
    next.c = params.c + eta * grad.dc;
    next.d = params.d + eta * grad.dd;
    return next;
}

std::vector<VisibleSample> visible_samples(const Dataset &dataset) {
    const Lattice lattice(dataset.L);
    std::vector<VisibleSample> out;
    out.reserve(dataset.chains.size());
    for (const Chain &c : dataset.chains) {
        out.push_back(to_visible(lattice, c));
    }
    return out;
}

RbmParams train(std::span<const VisibleSample> samples, Eigen::Index n_e, Eigen::Index n_s,
                const Hyperparams &hyper, std::uint64_t seed, const EpochCallback &on_epoch) {
    hyper.validate();
    if (samples.empty()) {
        throw std::invalid_argument("train: empty dataset");
    }
    Rng init_rng = make_stream(seed, "init");
    RbmParams params = init_params(n_e, n_s, hyper, init_rng);

    const auto start = std::chrono::steady_clock::now();
    const std::size_t n_monitor = std::min(samples.size(), kMonitorSamples);
    std::vector<std::size_t> order(samples.size());
    std::vector<VisibleSample> batch;
    batch.reserve(hyper.batch_size);

    for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        Rng shuffle_rng = make_stream(seed, "shuffle", std::uint64_t(epoch));
        std::shuffle(order.begin(), order.end(), shuffle_rng);
        Rng cd_rng = make_stream(seed, "cd", std::uint64_t(epoch));

        GradientSet epoch_grad = GradientSet::zeros_like(params);
        std::size_t n_batches = 0;
        for (std::size_t first = 0; first < order.size(); first += hyper.batch_size) {
            const std::size_t last = std::min(order.size(), first + hyper.batch_size);
            batch.clear();
            for (std::size_t i = first; i < last; ++i) {
                batch.push_back(samples[order[i]]);
            }
            const GradientSet grad = cd_k_gradient(params, batch, hyper.cd_k, cd_rng);
            params = sgd_step(params, grad, hyper);
            epoch_grad += grad;
            ++n_batches;
        }

        if (on_epoch) {
            epoch_grad *= 1.0 / double(n_batches);
            EpochLog log;
            log.epoch = epoch;
            double energy_sum = 0.0;
            for (std::size_t i = 0; i < n_monitor; ++i) {
                energy_sum += effective_energy(params, samples[i].e, samples[i].s);
            }
            log.mean_effective_energy = energy_sum / double(n_monitor);
            log.grad_norm_U = epoch_grad.dU.norm();
            log.grad_norm_W = epoch_grad.dW.norm();
            log.grad_norm_b = epoch_grad.db.norm();
            log.grad_norm_c = epoch_grad.dc.norm();
            log.grad_norm_d = epoch_grad.dd.norm();
            log.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            on_epoch(log, params);
        }
    }
    return params;
}

RbmParams train(const Dataset &dataset, const Hyperparams &hyper, std::uint64_t seed,
                const EpochCallback &on_epoch) {
    const Lattice lattice(dataset.L);
    const std::vector<VisibleSample> samples = visible_samples(dataset);
    return train(samples, Eigen::Index(lattice.num_links()), Eigen::Index(lattice.num_vertices()), hyper, seed,
                 on_epoch);
}

TrainingLogWriter::TrainingLogWriter(const std::filesystem::path &path) {
    const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
    out_.open(path, std::ios::app);
    if (!out_) {
        throw std::runtime_error("cannot open training log " + path.string());
    }
    if (fresh) {
        out_ << "epoch,mean_effective_energy,grad_norm_U,grad_norm_W,grad_norm_b,grad_norm_c,grad_norm_d,"
                "wall_time_s\n";
    }
    out_.precision(10);
}

void TrainingLogWriter::operator()(const EpochLog &log, const RbmParams &) {
    out_ << log.epoch << ',' << log.mean_effective_energy << ',' << log.grad_norm_U << ',' << log.grad_norm_W
         << ',' << log.grad_norm_b << ',' << log.grad_norm_c << ',' << log.grad_norm_d << ',' << log.wall_time_s
         << '\n';
    out_.flush();
}

}  // namespace tnd
