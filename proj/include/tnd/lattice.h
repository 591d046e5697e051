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

#ifndef TND_LATTICE_H
#define TND_LATTICE_H

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace tnd {

enum class Orientation : std::uint8_t { horizontal = 0, vertical = 1 };

/// A set of links, one byte (0 or 1) per link in flat-index order.
struct Chain {
    std::vector<std::uint8_t> bits;

    std::size_t size() const { return bits.size(); }
    std::size_t weight() const;
    bool operator==(const Chain &) const = default;
};

/// Vertex parities, one byte (0 or 1) per vertex.
struct Syndrome {
    std::vector<std::uint8_t> bits;

    std::size_t size() const { return bits.size(); }
    std::size_t weight() const;
    bool operator==(const Syndrome &) const = default;
};

/// Winding parities of a cycle. (0,0) is the trivial class h0; (1,0) is the
/// horizontal real-lattice loop Z_L^(1); (0,1) the vertical loop Z_L^(2).
struct HomologyClass {
    bool wx = false;
    bool wy = false;

    /// 0 = h0, 1 = Z1, 2 = Z2, 3 = Z1Z2.
    int index() const { return int(wx) + 2 * int(wy); }
    static HomologyClass from_index(int index);
    bool trivial() const { return !wx && !wy; }
    bool operator==(const HomologyClass &) const = default;
};

HomologyClass operator^(HomologyClass a, HomologyClass b);

/// Periodic L x L square lattice with qubits on links.
///
/// Link flat index is `orientation * L^2 + y * L + x`. Horizontal link (x, y)
/// joins vertex (x, y) to (x + 1, y); vertical link (x, y) joins (x, y) to
/// (x, y + 1), all coordinates mod L. Vertex index is `y * L + x`.
class Lattice {
  public:
    explicit Lattice(int size);

    int size() const { return size_; }
    std::size_t num_links() const { return 2 * num_vertices(); }
    std::size_t num_vertices() const { return std::size_t(size_) * std::size_t(size_); }

    std::size_t link_index(int x, int y, Orientation o) const;
    std::size_t vertex_index(int x, int y) const;
    std::array<int, 2> vertex_coords(std::size_t vertex) const;
    std::array<std::size_t, 2> link_endpoints(std::size_t link) const;
    const std::array<std::size_t, 4> &incident_links(std::size_t vertex) const {
        return incident_[vertex];
    }

    Chain empty_chain() const;
    Syndrome empty_syndrome() const;
    /// The four links surrounding the plaquette whose lower-left vertex is (x, y).
    Chain plaquette_boundary(int x, int y) const;

    bool operator==(const Lattice &other) const { return size_ == other.size_; }

  private:
    int wrap(int v) const { return ((v % size_) + size_) % size_; }

    int size_;
    std::vector<std::array<std::size_t, 4>> incident_;
};

/// Boundary of `chain`: parity of chain links at every vertex.
Syndrome syndrome_of(const Lattice &lattice, const Chain &chain);

Chain compose(const Chain &a, const Chain &b);
Syndrome compose(const Syndrome &a, const Syndrome &b);

/// Parity of horizontal cycle links crossing the cut between columns
/// `column` and `column + 1`.
bool winding_x(const Lattice &lattice, const Chain &cycle, int column);
/// Parity of vertical cycle links crossing the cut between rows `row` and `row + 1`.
bool winding_y(const Lattice &lattice, const Chain &cycle, int row);

/// Wilson-loop classification of a cycle. Throws std::invalid_argument
/// ("not a cycle") when the chain has a boundary.
HomologyClass homology_class(const Lattice &lattice, const Chain &cycle);

/// Canonical cycle of a class: row-0 horizontal loop for (1,0), column-0
/// vertical loop for (0,1), their sum for (1,1), empty for (0,0).
Chain logical_representative(const Lattice &lattice, HomologyClass cls);

}  // namespace tnd

#endif
