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

#include "tnd/lattice.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tnd {

namespace {

void require_same_size(std::size_t a, std::size_t b, const char *what) {
    if (a != b) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                                    " vs " + std::to_string(b) + ")");
    }
}

template <typename T>
T xor_bits(const T &a, const T &b, const char *what) {
    require_same_size(a.size(), b.size(), what);
    T out{a.bits};
    for (std::size_t i = 0; i < out.bits.size(); ++i) {
        out.bits[i] ^= b.bits[i];
    }
    return out;
}

}  // namespace

std::size_t Chain::weight() const {
    return std::size_t(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

std::size_t Syndrome::weight() const {
    return std::size_t(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

HomologyClass HomologyClass::from_index(int index) {
    if (index < 0 || index > 3) {
        throw std::out_of_range("homology class index must be in [0, 4)");
    }
    return HomologyClass{(index & 1) != 0, (index & 2) != 0};
}

HomologyClass operator^(HomologyClass a, HomologyClass b) {
    return HomologyClass{a.wx != b.wx, a.wy != b.wy};
}

Lattice::Lattice(int size) : size_(size) {
    if (size < 2) {
        throw std::invalid_argument("lattice size must be at least 2");
    }
    incident_.resize(num_vertices());
    for (int y = 0; y < size_; ++y) {
        for (int x = 0; x < size_; ++x) {
            incident_[vertex_index(x, y)] = {
                link_index(x, y, Orientation::horizontal),
                link_index(x - 1, y, Orientation::horizontal),
                link_index(x, y, Orientation::vertical),
                link_index(x, y - 1, Orientation::vertical),
            };
        }
    }
}

std::size_t Lattice::link_index(int x, int y, Orientation o) const {
    return std::size_t(o) * num_vertices() + std::size_t(wrap(y)) * std::size_t(size_) + std::size_t(wrap(x));
}

std::size_t Lattice::vertex_index(int x, int y) const {
    return std::size_t(wrap(y)) * std::size_t(size_) + std::size_t(wrap(x));
}

std::array<int, 2> Lattice::vertex_coords(std::size_t vertex) const {
    return {int(vertex % std::size_t(size_)), int(vertex / std::size_t(size_))};
}

std::array<std::size_t, 2> Lattice::link_endpoints(std::size_t link) const {
    if (link >= num_links()) {
        throw std::out_of_range("link index out of range");
    }
    const bool vertical = link >= num_vertices();
    const auto [x, y] = vertex_coords(link % num_vertices());
    if (vertical) {
        return {vertex_index(x, y), vertex_index(x, y + 1)};
    }
    return {vertex_index(x, y), vertex_index(x + 1, y)};
}

Chain Lattice::empty_chain() const {
    return Chain{std::vector<std::uint8_t>(num_links(), 0)};
}

Syndrome Lattice::empty_syndrome() const {
    return Syndrome{std::vector<std::uint8_t>(num_vertices(), 0)};
}

Chain Lattice::plaquette_boundary(int x, int y) const {
    Chain c = empty_chain();
    c.bits[link_index(x, y, Orientation::horizontal)] ^= 1;
    c.bits[link_index(x, y + 1, Orientation::horizontal)] ^= 1;
    c.bits[link_index(x, y, Orientation::vertical)] ^= 1;
    c.bits[link_index(x + 1, y, Orientation::vertical)] ^= 1;
    return c;
}

Syndrome syndrome_of(const Lattice &lattice, const Chain &chain) {
    require_same_size(chain.size(), lattice.num_links(), "syndrome_of");
    Syndrome s = lattice.empty_syndrome();
    for (std::size_t v = 0; v < lattice.num_vertices(); ++v) {
        std::uint8_t parity = 0;
        for (std::size_t link : lattice.incident_links(v)) {
            parity ^= chain.bits[link];
        }
        s.bits[v] = parity;
    }
    return s;
}

Chain compose(const Chain &a, const Chain &b) {
    return xor_bits(a, b, "compose");
}

Syndrome compose(const Syndrome &a, const Syndrome &b) {
    return xor_bits(a, b, "compose");
}

bool winding_x(const Lattice &lattice, const Chain &cycle, int column) {
    require_same_size(cycle.size(), lattice.num_links(), "winding_x");
    std::uint8_t parity = 0;
    for (int y = 0; y < lattice.size(); ++y) {
        parity ^= cycle.bits[lattice.link_index(column, y, Orientation::horizontal)];
    }
    return parity != 0;
}

bool winding_y(const Lattice &lattice, const Chain &cycle, int row) {
    require_same_size(cycle.size(), lattice.num_links(), "winding_y");
    std::uint8_t parity = 0;
    for (int x = 0; x < lattice.size(); ++x) {
        parity ^= cycle.bits[lattice.link_index(x, row, Orientation::vertical)];
    }
    return parity != 0;
}

HomologyClass homology_class(const Lattice &lattice, const Chain &cycle) {
    if (syndrome_of(lattice, cycle).weight() != 0) {
        throw std::invalid_argument("not a cycle");
    }
    return HomologyClass{winding_x(lattice, cycle, 0), winding_y(lattice, cycle, 0)};
}

Chain logical_representative(const Lattice &lattice, HomologyClass cls) {
    Chain c = lattice.empty_chain();
    for (int i = 0; i < lattice.size(); ++i) {
        if (cls.wx) {
            c.bits[lattice.link_index(i, 0, Orientation::horizontal)] ^= 1;
        }
        if (cls.wy) {
            c.bits[lattice.link_index(0, i, Orientation::vertical)] ^= 1;
        }
    }
    return c;
}

}  // namespace tnd
