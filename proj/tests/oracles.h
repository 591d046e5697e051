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

// Brute-force reference implementations used only by tests. Nothing here
// calls the code path it is meant to check.

#ifndef TND_TESTS_ORACLES_H
#define TND_TESTS_ORACLES_H

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <vector>

#include "tnd/decoders.h"
#include "tnd/lattice.h"
#include "tnd/rbm.h"
#include "tnd/rng.h"

namespace tnd::oracle {

inline Eigen::VectorXd bits_of(std::uint64_t mask, Eigen::Index n, Eigen::Index offset = 0) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        v[i] = double((mask >> (offset + i)) & 1U);
    }
    return v;
}

inline double log_sum_exp(const std::vector<double> &x) {
    const double top = *std::max_element(x.begin(), x.end());
    double sum = 0.0;
    for (double v : x) {
        sum += std::exp(v - top);
    }
    return top + std::log(sum);
}

/// log sum_h exp(-E(e, s, h)) by enumerating every hidden state.
inline double log_hidden_sum(const RbmParams &params, const Eigen::VectorXd &e, const Eigen::VectorXd &s) {
    const Eigen::Index n_h = params.num_hidden();
    std::vector<double> terms;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n_h); ++m) {
        terms.push_back(-energy(params, MachineState{e, s, bits_of(m, n_h)}));
    }
    return log_sum_exp(terms);
}

/// log Z over the full joint (e, s, h).
inline double brute_log_partition(const RbmParams &params) {
    const Eigen::Index n_e = params.num_error();
    const Eigen::Index n_s = params.num_syndrome();
    const Eigen::Index n_h = params.num_hidden();
    std::vector<double> terms;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << (n_e + n_s + n_h)); ++m) {
        MachineState st{bits_of(m, n_e), bits_of(m, n_s, n_e), bits_of(m, n_h, n_e + n_s)};
        terms.push_back(-energy(params, st));
    }
    return log_sum_exp(terms);
}

/// p(e, h | s) over joint index e + (h << n_e), from the energy function.
inline std::vector<double> conditional_eh(const RbmParams &params, const Eigen::VectorXd &s) {
    const Eigen::Index n_e = params.num_error();
    const Eigen::Index n_h = params.num_hidden();
    std::vector<double> log_w;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << (n_e + n_h)); ++m) {
        log_w.push_back(-energy(params, MachineState{bits_of(m, n_e), s, bits_of(m, n_h, n_e)}));
    }
    const double log_z = log_sum_exp(log_w);
    std::vector<double> p;
    for (double lw : log_w) {
        p.push_back(std::exp(lw - log_z));
    }
    return p;
}

inline RbmParams random_params(Eigen::Index n_e, Eigen::Index n_s, Eigen::Index n_h, double scale, Rng &rng) {
    RbmParams p = RbmParams::zeros(n_e, n_s, n_h);
    auto fill = [&](auto &m) {
        for (Eigen::Index i = 0; i < m.size(); ++i) {
            m.data()[i] = scale * (2.0 * uniform01(rng) - 1.0);
        }
    };
    fill(p.U);
    fill(p.W);
    fill(p.b);
    fill(p.c);
    fill(p.d);
    return p;
}

/// Shortest path length on the L x L torus graph by breadth-first search.
inline int bfs_distance(Vertex u, Vertex v, int L) {
    std::vector<int> dist(std::size_t(L * L), -1);
    std::deque<Vertex> queue{u};
    dist[std::size_t(u.y * L + u.x)] = 0;
    while (!queue.empty()) {
        const Vertex cur = queue.front();
        queue.pop_front();
        const int here = dist[std::size_t(cur.y * L + cur.x)];
        if (cur == v) {
            return here;
        }
        const Vertex next[4] = {{(cur.x + 1) % L, cur.y},
                                {(cur.x + L - 1) % L, cur.y},
                                {cur.x, (cur.y + 1) % L},
                                {cur.x, (cur.y + L - 1) % L}};
        for (const Vertex &n : next) {
            int &d = dist[std::size_t(n.y * L + n.x)];
            if (d < 0) {
                d = here + 1;
                queue.push_back(n);
            }
        }
    }
    return -1;
}

/// Minimum total weight over every perfect matching, by exhaustive recursion.
inline int brute_force_matching_weight(const std::vector<Vertex> &defects, int L) {
    if (defects.empty()) {
        return 0;
    }
    int best = std::numeric_limits<int>::max();
    for (std::size_t j = 1; j < defects.size(); ++j) {
        std::vector<Vertex> rest;
        for (std::size_t k = 1; k < defects.size(); ++k) {
            if (k != j) {
                rest.push_back(defects[k]);
            }
        }
        best = std::min(best, bfs_distance(defects[0], defects[j], L) + brute_force_matching_weight(rest, L));
    }
    return best;
}

inline std::uint64_t chain_mask(const Chain &c) {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c.bits[i]) {
            m |= std::uint64_t{1} << i;
        }
    }
    return m;
}

inline Chain chain_from_mask(const Lattice &lattice, std::uint64_t mask) {
    Chain c = lattice.empty_chain();
    for (std::size_t i = 0; i < c.size(); ++i) {
        c.bits[i] = std::uint8_t((mask >> i) & 1U);
    }
    return c;
}

/// Class of a cycle found by adding every combination of plaquette
/// boundaries and seeing which canonical representative is reached.
/// Returns the class indices reached (exactly one for a genuine cycle).
inline std::vector<int> classes_by_reduction(const Lattice &lattice, const Chain &cycle) {
    const int L = lattice.size();
    std::vector<std::uint64_t> plaquettes;
    for (int y = 0; y < L; ++y) {
        for (int x = 0; x < L; ++x) {
            plaquettes.push_back(chain_mask(lattice.plaquette_boundary(x, y)));
        }
    }
    std::uint64_t reps[4];
    for (int k = 0; k < 4; ++k) {
        reps[k] = chain_mask(logical_representative(lattice, HomologyClass::from_index(k)));
    }
    const std::uint64_t target = chain_mask(cycle);
    std::vector<int> found;
    for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << plaquettes.size()); ++subset) {
        std::uint64_t m = target;
        for (std::size_t p = 0; p < plaquettes.size(); ++p) {
            if ((subset >> p) & 1U) {
                m ^= plaquettes[p];
            }
        }
        for (int k = 0; k < 4; ++k) {
            if (m == reps[k] && std::find(found.begin(), found.end(), k) == found.end()) {
                found.push_back(k);
            }
        }
    }
    std::sort(found.begin(), found.end());
    return found;
}

/// Every cycle of a small lattice together with its class, obtained from the
/// plaquette group times the four canonical representatives. The last
/// plaquette is dependent and skipped.
struct CycleTable {
    std::vector<std::uint64_t> cycles;
    std::vector<int> classes;
};

inline CycleTable enumerate_cycles(const Lattice &lattice) {
    const int L = lattice.size();
    std::vector<std::uint64_t> plaquettes;
    for (int y = 0; y < L; ++y) {
        for (int x = 0; x < L; ++x) {
            if (x != L - 1 || y != L - 1) {
                plaquettes.push_back(chain_mask(lattice.plaquette_boundary(x, y)));
            }
        }
    }
    CycleTable table;
    for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << plaquettes.size()); ++subset) {
        std::uint64_t m = 0;
        for (std::size_t p = 0; p < plaquettes.size(); ++p) {
            if ((subset >> p) & 1U) {
                m ^= plaquettes[p];
            }
        }
        for (int k = 0; k < 4; ++k) {
            table.cycles.push_back(m ^ chain_mask(logical_representative(lattice, HomologyClass::from_index(k))));
            table.classes.push_back(k);
        }
    }
    return table;
}

/// Posterior weight of each class of e + c given the syndrome of e, under
/// independent flips with probability p: class k collects sum over cycles c in
/// k of P(e + c). Normalized.
inline std::array<double, 4> posterior_classes(const CycleTable &table, const Chain &e, double p) {
    const std::uint64_t em = chain_mask(e);
    const double log_ratio = std::log(p / (1.0 - p));
    std::array<double, 4> w{};
    for (std::size_t i = 0; i < table.cycles.size(); ++i) {
        w[std::size_t(table.classes[i])] += std::exp(log_ratio * std::popcount(em ^ table.cycles[i]));
    }
    const double z = w[0] + w[1] + w[2] + w[3];
    for (double &x : w) {
        x /= z;
    }
    return w;
}

/// Exact maximum-likelihood decoding: true when the most probable class of
/// e + r (relative to the truth e) is non-trivial, i.e. ML decoding fails.
inline bool ml_decoding_fails(const CycleTable &table, const Chain &e, double p) {
    const auto w = posterior_classes(table, e, p);
    int best = 0;
    for (int k = 1; k < 4; ++k) {
        if (w[std::size_t(k)] > w[std::size_t(best)]) {
            best = k;
        }
    }
    return best != 0;
}

}  // namespace tnd::oracle

#endif
