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

#include "tnd/decoders.h"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

namespace tnd {

namespace {

// Block Gibbs chain over (e, h) with the syndrome layer held at s0.
class ClampedChain {
  public:
    ClampedChain(const Lattice &lattice, const RbmParams &params, const Syndrome &s0, Rng &rng)
        : lattice_(lattice), params_(params), s0_(s0), rng_(rng) {
        params.validate();
        if (params.num_error() != Eigen::Index(lattice.num_links()) ||
            params.num_syndrome() != Eigen::Index(lattice.num_vertices()) ||
            s0.size() != lattice.num_vertices()) {
            throw std::invalid_argument("neural decoder: dimension mismatch");
        }
        syndrome_field_ = params.c + params.U * to_units(s0.bits);
        e_ = sample_units(Eigen::VectorXd::Constant(params.num_error(), 0.5), rng_);
        h_ = sample_units(Eigen::VectorXd::Constant(params.num_hidden(), 0.5), rng_);
    }

    void sweep() {
        field_h_ = syndrome_field_;
        field_h_.noalias() += params_.W * e_;
        prob_h_ = sigmoid(field_h_);
        for (Eigen::Index i = 0; i < h_.size(); ++i) {
            h_[i] = bernoulli(rng_, prob_h_[i]) ? 1.0 : 0.0;
        }
        field_e_ = params_.b;
        field_e_.noalias() += params_.W.transpose() * h_;
        prob_e_ = sigmoid(field_e_);
        for (Eigen::Index j = 0; j < e_.size(); ++j) {
            e_[j] = bernoulli(rng_, prob_e_[j]) ? 1.0 : 0.0;
        }
        ++sweeps_;
    }

    bool compatible() const {
        for (std::size_t v = 0; v < lattice_.num_vertices(); ++v) {
            int parity = 0;
            for (std::size_t link : lattice_.incident_links(v)) {
                parity ^= e_[Eigen::Index(link)] != 0.0 ? 1 : 0;
            }
            if (parity != s0_.bits[v]) {
                return false;
            }
        }
        return true;
    }

    /// Runs checked sweeps until S(e) = s0 or the budget runs out.
    bool next_compatible(std::size_t max_sweeps) {
        for (std::size_t t = 0; t < max_sweeps; ++t) {
            sweep();
            if (compatible()) {
                return true;
            }
        }
        return false;
    }

    Chain chain() const {
        Chain c = lattice_.empty_chain();
        for (Eigen::Index j = 0; j < e_.size(); ++j) {
            c.bits[std::size_t(j)] = e_[j] != 0.0 ? 1 : 0;
        }
        return c;
    }

    std::size_t sweeps() const { return sweeps_; }

  private:
    const Lattice &lattice_;
    const RbmParams &params_;
    const Syndrome &s0_;
    Rng &rng_;
    Eigen::VectorXd syndrome_field_;
    Eigen::VectorXd field_h_;
    Eigen::VectorXd prob_h_;
    Eigen::VectorXd field_e_;
    Eigen::VectorXd prob_e_;
    Eigen::VectorXd e_;
    Eigen::VectorXd h_;
    std::size_t sweeps_ = 0;
};

int wrap_distance(int a, int b, int L) {
    const int d = std::abs(a - b) % L;
    return std::min(d, L - d);
}

}  // namespace

DecodeOutcome neural_decode(const Lattice &lattice, const RbmParams &params, const Syndrome &s0, int n_eq,
                            std::size_t max_sweeps, Rng &rng) {
    ClampedChain chain(lattice, params, s0, rng);
    for (int t = 0; t < n_eq; ++t) {
        chain.sweep();
    }
    const bool found = chain.next_compatible(max_sweeps);
    return DecodeOutcome{chain.chain(), chain.sweeps(), !found};
}

MlDecodeResult ml_decode(const Lattice &lattice, const RbmParams &params, const Syndrome &s0,
                         std::size_t n_samples, int n_eq, std::size_t max_sweeps, Rng &rng) {
    if (n_samples == 0) {
        throw std::invalid_argument("ml_decode: n_samples must be at least 1");
    }
    ClampedChain chain(lattice, params, s0, rng);
    for (int t = 0; t < n_eq; ++t) {
        chain.sweep();
    }

    MlDecodeResult result;
    std::array<Chain, 4> first_of_class;
    while (result.samples_collected < n_samples) {
        if (!chain.next_compatible(max_sweeps)) {
            result.outcome = DecodeOutcome{chain.chain(), chain.sweeps(), true};
            return result;
        }
        Chain sample = chain.chain();
        if (result.samples_collected == 0) {
            result.reference = sample;
        }
        const int cls = homology_class(lattice, compose(result.reference, sample)).index();
        if (result.histogram[std::size_t(cls)] == 0) {
            first_of_class[std::size_t(cls)] = std::move(sample);
        }
        ++result.histogram[std::size_t(cls)];
        ++result.samples_collected;
    }

    std::size_t best = 0;
    for (std::size_t k = 1; k < 4; ++k) {
        if (result.histogram[k] > result.histogram[best]) {
            best = k;
        }
    }
    result.outcome = DecodeOutcome{std::move(first_of_class[best]), chain.sweeps(), false};
    return result;
}

DefectSet defects_of(const Lattice &lattice, const Syndrome &syndrome) {
    if (syndrome.size() != lattice.num_vertices()) {
        throw std::invalid_argument("defects_of: dimension mismatch");
    }
    DefectSet defects;
    for (std::size_t v = 0; v < syndrome.size(); ++v) {
        if (syndrome.bits[v]) {
            const auto [x, y] = lattice.vertex_coords(v);
            defects.vertices.push_back(Vertex{x, y});
        }
    }
    return defects;
}

int torus_distance(Vertex u, Vertex v, int L) {
    return wrap_distance(u.x, v.x, L) + wrap_distance(u.y, v.y, L);
}

Matching min_weight_matching(const DefectSet &defects, int L) {
    const std::size_t n = defects.vertices.size();
    if (n % 2 != 0) {
        throw std::invalid_argument("invalid syndrome: odd number of defects");
    }
    if (n > kMaxMatchingDefects) {
        throw std::invalid_argument("instance too large: " + std::to_string(n) + " defects");
    }
    Matching matching;
    if (n == 0) {
        return matching;
    }

    std::vector<std::vector<int>> dist(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            dist[i][j] = torus_distance(defects.vertices[i], defects.vertices[j], L);
        }
    }

    // cost[mask] = minimum weight to match every defect outside `mask`.
    // The lowest unmatched defect is always the one paired next.
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    std::vector<int> cost(std::size_t(full) + 1, -1);
    cost[full] = 0;
    auto lowest_free = [](std::uint32_t mask) { return std::size_t(std::countr_one(mask)); };
    auto solve = [&](auto &self, std::uint32_t mask) -> int {
        if (cost[mask] >= 0) {
            return cost[mask];
        }
        const std::size_t i = lowest_free(mask);
        int best = std::numeric_limits<int>::max();
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!(mask & (std::uint32_t{1} << j))) {
                const std::uint32_t next = mask | (std::uint32_t{1} << i) | (std::uint32_t{1} << j);
                best = std::min(best, dist[i][j] + self(self, next));
            }
        }
        return cost[mask] = best;
    };
    solve(solve, 0);

    std::uint32_t mask = 0;
    while (mask != full) {
        const std::size_t i = lowest_free(mask);
        for (std::size_t j = i + 1; j < n; ++j) {
            if (mask & (std::uint32_t{1} << j)) {
                continue;
            }
            const std::uint32_t next = mask | (std::uint32_t{1} << i) | (std::uint32_t{1} << j);
            if (dist[i][j] + cost[next] == cost[mask]) {
                matching.pairs.emplace_back(i, j);
                mask = next;
                break;
            }
        }
    }
    matching.weight = cost[0];
    return matching;
}

Chain path_chain(const Lattice &lattice, Vertex u, Vertex v) {
    const int L = lattice.size();
    Chain c = lattice.empty_chain();

    const int dx = ((v.x - u.x) % L + L) % L;
    if (dx <= L - dx) {
        for (int s = 0; s < dx; ++s) {
            c.bits[lattice.link_index(u.x + s, u.y, Orientation::horizontal)] ^= 1;
        }
    } else {
        for (int s = 1; s <= L - dx; ++s) {
            c.bits[lattice.link_index(u.x - s, u.y, Orientation::horizontal)] ^= 1;
        }
    }

    const int dy = ((v.y - u.y) % L + L) % L;
    if (dy <= L - dy) {
        for (int s = 0; s < dy; ++s) {
            c.bits[lattice.link_index(v.x, u.y + s, Orientation::vertical)] ^= 1;
        }
    } else {
        for (int s = 1; s <= L - dy; ++s) {
            c.bits[lattice.link_index(v.x, u.y - s, Orientation::vertical)] ^= 1;
        }
    }
    return c;
}

Chain mwpm_decode(const Lattice &lattice, const Syndrome &s0) {
    const DefectSet defects = defects_of(lattice, s0);
    const Matching matching = min_weight_matching(defects, lattice.size());
    Chain recovery = lattice.empty_chain();
    for (const auto &[i, j] : matching.pairs) {
        recovery = compose(recovery, path_chain(lattice, defects.vertices[i], defects.vertices[j]));
    }
    return recovery;
}

HomologyClass evaluate_recovery(const Lattice &lattice, const Chain &e0, const Chain &r) {
    if (syndrome_of(lattice, e0) != syndrome_of(lattice, r)) {
        throw std::invalid_argument("evaluate_recovery: syndrome mismatch");
    }
    return homology_class(lattice, compose(e0, r));
}

}  // namespace tnd
