#pragma once

// Relay clustering maps as 4x4x4 arrays.
//
// Cell (a, b, c) holds the cluster label of the transmit triple whose 4-PSK
// indices are a (node A, "file"), b (node B, "row") and c (node C, "column").
// A map obeys the exclusive law iff it is a Latin cube of second order: every
// axis-aligned 4x4 slice holds 16 distinct labels.

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cubenc/constellation.hpp"
#include "cubenc/fadespace.hpp"

namespace cubenc {

enum class Node { A = 0, B = 1, C = 2 };

inline constexpr std::array<Node, 3> kNodes{Node::A, Node::B, Node::C};

inline const char* node_name(Node n) {
    switch (n) {
    case Node::A: return "A";
    case Node::B: return "B";
    default: return "C";
    }
}

struct Cell {
    int a = 0;
    int b = 0;
    int c = 0;

    constexpr int index() const { return 16 * a + 4 * b + c; }
    static constexpr Cell from_index(int i) { return {i / 16, (i / 4) % 4, i % 4}; }

    constexpr int coord(Node n) const { return n == Node::A ? a : (n == Node::B ? b : c); }

    friend constexpr bool operator==(Cell, Cell) = default;
    friend constexpr auto operator<=>(Cell, Cell) = default;
};

inline constexpr int kCells = 64;

/// Thrown when a singular fade subspace has a zero difference component, so
/// co-clustering its collisions would merge cells inside one slice.
class NonRemovableError : public std::invalid_argument {
public:
    explicit NonRemovableError(int class_id)
        : std::invalid_argument("singular fade subspace " + std::to_string(class_id) +
                                " is non-removable: its difference vectors have a zero component, so the "
                                "colliding triples share a slice and cannot be co-clustered under the "
                                "exclusive law"),
          class_id_(class_id) {}

    int class_id() const { return class_id_; }

private:
    int class_id_;
};

/// Thrown by invert() when the label does not occur in the decoder's slice.
class DecodeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class RelayMap {
public:
    using Cells = std::array<int, kCells>;

    RelayMap() { std::iota(cells_.begin(), cells_.end(), 0); t_ = kCells; }

    explicit RelayMap(const Cells& cells) : cells_(cells) {
        int max_label = -1;
        for (int v : cells_) {
            if (v < 0) throw std::invalid_argument("relay map labels must be non-negative");
            max_label = std::max(max_label, v);
        }
        t_ = max_label + 1;
    }

    int label(Cell x) const { return cells_[static_cast<std::size_t>(x.index())]; }
    int label(int a, int b, int c) const { return label(Cell{a, b, c}); }
    int label(PskSymbol a, PskSymbol b, PskSymbol c) const { return label(a.index(), b.index(), c.index()); }

    /// Label alphabet size t (largest label + 1).
    int label_count() const { return t_; }

    const Cells& cells() const { return cells_; }

    /// Every label in 0..t-1 is used at least once.
    bool labels_contiguous() const {
        std::vector<bool> seen(static_cast<std::size_t>(t_), false);
        for (int v : cells_) seen[static_cast<std::size_t>(v)] = true;
        return std::all_of(seen.begin(), seen.end(), [](bool s) { return s; });
    }

    friend bool operator==(const RelayMap&, const RelayMap&) = default;

private:
    Cells cells_{};
    int t_ = 0;
};

/// The 16 cells of the slice where node n's own index is fixed.
inline std::array<Cell, 16> slice_cells(Node n, int own) {
    std::array<Cell, 16> out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            auto& x = out[static_cast<std::size_t>(4 * i + j)];
            switch (n) {
            case Node::A: x = {own, i, j}; break;
            case Node::B: x = {i, own, j}; break;
            case Node::C: x = {i, j, own}; break;
            }
        }
    return out;
}

inline bool exclusive_law_ok(const RelayMap& m) {
    for (Node n : kNodes)
        for (int own = 0; own < 4; ++own) {
            std::array<bool, kCells> seen{};
            for (Cell x : slice_cells(n, own)) {
                const int v = m.label(x);
                if (v >= kCells) return false;  // more labels than cells cannot occur in a dense map
                if (seen[static_cast<std::size_t>(v)]) return false;
                seen[static_cast<std::size_t>(v)] = true;
            }
        }
    return true;
}

/// Disjoint-set forest over the 64 cells.
class CellPartition {
public:
    CellPartition() { std::iota(parent_.begin(), parent_.end(), 0); }

    int find(int i) const {
        while (parent_[static_cast<std::size_t>(i)] != i) i = parent_[static_cast<std::size_t>(i)];
        return i;
    }

    void merge(Cell x, Cell y) {
        int rx = find(x.index());
        int ry = find(y.index());
        if (rx == ry) return;
        // smaller root wins so the result does not depend on merge order
        if (ry < rx) std::swap(rx, ry);
        parent_[static_cast<std::size_t>(ry)] = rx;
    }

    bool same(Cell x, Cell y) const { return find(x.index()) == find(y.index()); }

    /// Groups with at least two cells, each sorted, ordered by first cell.
    std::vector<std::vector<Cell>> groups() const {
        std::array<std::vector<Cell>, kCells> by_root;
        for (int i = 0; i < kCells; ++i) by_root[static_cast<std::size_t>(find(i))].push_back(Cell::from_index(i));
        std::vector<std::vector<Cell>> out;
        for (auto& g : by_root)
            if (g.size() > 1) out.push_back(std::move(g));
        std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.front() < y.front(); });
        return out;
    }

private:
    std::array<int, kCells> parent_{};
};

using CellPair = std::pair<Cell, Cell>;

/// Every ordered pair (x, x') of transmit triples with x - x' equal to a member
/// of k. A D1 component has two realizations, a D2 component one.
inline std::vector<CellPair> collision_pairs(const SubspaceClass& k) {
    std::vector<CellPair> out;
    for (const auto& delta : k.members)
        for (int i = 0; i < kCells; ++i) {
            const Cell x = Cell::from_index(i);
            PskSymbol pa, pb, pc;
            if (psk_from_value(PskSymbol{x.a}.value() - delta[0], pa) &&
                psk_from_value(PskSymbol{x.b}.value() - delta[1], pb) &&
                psk_from_value(PskSymbol{x.c}.value() - delta[2], pc))
                out.emplace_back(x, Cell{pa.index(), pb.index(), pc.index()});
        }
    return out;
}

/// Cells that must share a label for a map to remove subspace k.
inline CellPartition constraints_for(const SubspaceClass& k) {
    if (!is_removable(k)) throw NonRemovableError(k.id);
    CellPartition p;
    for (const auto& [x, y] : collision_pairs(k)) p.merge(x, y);
    return p;
}

/// Sentinel for an unfilled cell in a partial array.
inline constexpr int kEmpty = -1;

/// Fills the empty cells of a partially labelled array, visiting cells in
/// file, row, column order and giving each the smallest label absent from its
/// file, row slice and column slice. Pre-filled cells are kept as they are.
inline RelayMap complete_array(RelayMap::Cells partial) {
    for (int i = 0; i < kCells; ++i) {
        if (partial[static_cast<std::size_t>(i)] != kEmpty) continue;
        const Cell x = Cell::from_index(i);
        std::vector<bool> used(2 * kCells + 1, false);
        for (Node n : kNodes)
            for (Cell y : slice_cells(n, x.coord(n))) {
                const int v = partial[static_cast<std::size_t>(y.index())];
                if (v != kEmpty && v < int(used.size())) used[static_cast<std::size_t>(v)] = true;
            }
        int label = 0;
        while (used[static_cast<std::size_t>(label)]) ++label;
        partial[static_cast<std::size_t>(i)] = label;
    }
    return RelayMap{partial};
}

/// Partial array with one label per constrained group, numbered by first
/// appearance in file/row/column scan order.
inline RelayMap::Cells label_groups(const CellPartition& constraints) {
    RelayMap::Cells cells;
    cells.fill(kEmpty);
    int next_label = 0;
    for (const auto& g : constraints.groups()) {
        for (Cell x : g) cells[static_cast<std::size_t>(x.index())] = next_label;
        ++next_label;
    }
    return cells;
}

/// Completes a constrained array into a Latin cube of second order.
inline RelayMap complete(const CellPartition& constraints) { return complete_array(label_groups(constraints)); }

/// True iff every colliding pair of k shares a label in m. For a map obeying
/// the exclusive law this can only hold when k is removable.
inline bool removes(const RelayMap& m, const SubspaceClass& k) {
    const auto pairs = collision_pairs(k);
    return std::all_of(pairs.begin(), pairs.end(),
                       [&](const CellPair& p) { return m.label(p.first) == m.label(p.second); });
}

/// Recovers the other two nodes' symbols (in A, B, C order) from a relay
/// label, given node n's own symbol.
inline std::pair<PskSymbol, PskSymbol> invert(const RelayMap& m, Node n, PskSymbol own, int label) {
    for (Cell x : slice_cells(n, own.index())) {
        if (m.label(x) != label) continue;
        switch (n) {
        case Node::A: return {PskSymbol{x.b}, PskSymbol{x.c}};
        case Node::B: return {PskSymbol{x.a}, PskSymbol{x.c}};
        case Node::C: return {PskSymbol{x.a}, PskSymbol{x.b}};
        }
    }
    throw DecodeError("label " + std::to_string(label) + " does not occur in node " + node_name(n) +
                      "'s slice for own symbol " + std::to_string(own.index()));
}

/// Fixed 16-label map used for every channel realization by the non-adaptive
/// scheme: label(a, b, c) = (4b + c) xor {0, 5, 10, 15}[a].
inline const RelayMap& xor_map() {
    static const RelayMap m{RelayMap::Cells{
        0,  1,  2,  3,  4,  5,  6,  7,  8,  9,  10, 11, 12, 13, 14, 15,  // x_A = 0
        5,  4,  7,  6,  1,  0,  3,  2,  13, 12, 15, 14, 9,  8,  11, 10,  // x_A = 1
        10, 11, 8,  9,  14, 15, 12, 13, 2,  3,  0,  1,  6,  7,  4,  5,   // x_A = 2
        15, 14, 13, 12, 11, 10, 9,  8,  7,  6,  5,  4,  3,  2,  1,  0,   // x_A = 3
    }};
    return m;
}

}  // namespace cubenc
