#pragma once

// Test-only oracles and reference data. Nothing here calls the optimized
// paths it is used to check.

#include <algorithm>
#include <array>
#include <complex>
#include <random>
#include <set>
#include <vector>

#include "cubenc/constellation.hpp"
#include "cubenc/fadespace.hpp"
#include "cubenc/latincube.hpp"

namespace cubenc::testing {

inline GaussianInt g(int re, int im) { return {re, im}; }

inline DiffVector dv(GaussianInt a, GaussianInt b, GaussianInt c) { return {{a, b, c}}; }

/// 4x4x4 array given as 16 rows (file-major), each of 4 columns.
inline RelayMap::Cells from_rows(const std::array<std::array<int, 4>, 16>& rows) {
    RelayMap::Cells cells{};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                cells[std::size_t(16 * a + 4 * b + c)] = rows[std::size_t(4 * a + b)][std::size_t(c)];
    return cells;
}

// Constrained array of the first worked example (-1 = empty, labels 0-based).
inline RelayMap::Cells example1_constrained() {
    return from_rows({{{-1, -1, 2, -1}, {-1, -1, -1, 1}, {-1, -1, -1, -1}, {-1, -1, -1, -1},
                       {-1, -1, -1, -1}, {-1, -1, -1, 0}, {2, -1, -1, -1}, {-1, -1, -1, -1},
                       {-1, -1, -1, -1}, {-1, -1, -1, -1}, {3, -1, -1, -1}, {-1, 0, -1, -1},
                       {-1, -1, 3, -1}, {-1, -1, -1, -1}, {-1, -1, -1, -1}, {-1, 1, -1, -1}}});
}

inline RelayMap::Cells example1_completed() {
    return from_rows({{{0, 4, 2, 5}, {6, 3, 7, 1}, {8, 9, 10, 11}, {12, 13, 14, 15},
                       {1, 6, 8, 7}, {4, 5, 9, 0}, {2, 12, 13, 14}, {10, 11, 16, 3},
                       {9, 10, 11, 12}, {13, 2, 15, 8}, {3, 7, 1, 4}, {5, 0, 6, 17},
                       {14, 15, 3, 13}, {11, 16, 12, 10}, {17, 18, 0, 6}, {7, 1, 4, 2}}});
}

inline RelayMap::Cells example2_constrained() {
    return from_rows({{{-1, 4, 0, 1}, {-1, -1, 2, 3}, {-1, -1, -1, -1}, {-1, 5, 6, -1},
                       {-1, -1, 3, 2}, {4, -1, 1, 0}, {5, -1, -1, 6}, {-1, -1, -1, -1},
                       {-1, -1, -1, -1}, {6, -1, -1, 5}, {0, 1, -1, 4}, {2, 3, -1, -1},
                       {-1, 6, 5, -1}, {-1, -1, -1, -1}, {3, 2, -1, -1}, {1, 0, 4, -1}}});
}

inline RelayMap::Cells example2_completed() {
    return from_rows({{{7, 4, 0, 1}, {8, 9, 2, 3}, {10, 11, 12, 13}, {14, 5, 6, 15},
                       {9, 8, 3, 2}, {4, 7, 1, 0}, {5, 14, 15, 6}, {11, 10, 13, 12},
                       {12, 13, 10, 11}, {6, 15, 14, 5}, {0, 1, 7, 4}, {2, 3, 8, 9},
                       {15, 6, 5, 14}, {13, 12, 11, 10}, {3, 2, 9, 8}, {1, 0, 4, 7}}});
}

/// The twelve d_c = 0 subspace listings of the Case 2 figure, as [re, im]
/// pairs per component.
inline std::vector<std::vector<DiffVector>> case2_dc0_listing() {
    using P = std::array<int, 2>;
    const std::vector<std::vector<std::array<P, 3>>> raw = {
        {{P{1, 1}, P{1, 1}, P{0, 0}}, {P{-1, -1}, P{-1, -1}, P{0, 0}}, {P{1, -1}, P{1, -1}, P{0, 0}},
         {P{-1, 1}, P{-1, 1}, P{0, 0}}, {P{0, 2}, P{0, 2}, P{0, 0}}, {P{0, -2}, P{0, -2}, P{0, 0}},
         {P{2, 0}, P{2, 0}, P{0, 0}}, {P{-2, 0}, P{-2, 0}, P{0, 0}}},
        {{P{1, 1}, P{-1, -1}, P{0, 0}}, {P{-1, -1}, P{1, 1}, P{0, 0}}, {P{-1, 1}, P{1, -1}, P{0, 0}},
         {P{1, -1}, P{-1, 1}, P{0, 0}}, {P{0, 2}, P{0, -2}, P{0, 0}}, {P{0, -2}, P{0, 2}, P{0, 0}},
         {P{2, 0}, P{-2, 0}, P{0, 0}}, {P{-2, 0}, P{2, 0}, P{0, 0}}},
        {{P{1, 1}, P{1, -1}, P{0, 0}}, {P{-1, -1}, P{-1, 1}, P{0, 0}}, {P{-1, 1}, P{1, 1}, P{0, 0}},
         {P{1, -1}, P{-1, -1}, P{0, 0}}, {P{0, 2}, P{2, 0}, P{0, 0}}, {P{0, -2}, P{-2, 0}, P{0, 0}},
         {P{-2, 0}, P{0, 2}, P{0, 0}}, {P{2, 0}, P{0, -2}, P{0, 0}}},
        {{P{1, 1}, P{-1, 1}, P{0, 0}}, {P{-1, -1}, P{1, -1}, P{0, 0}}, {P{-1, 1}, P{-1, -1}, P{0, 0}},
         {P{1, -1}, P{1, 1}, P{0, 0}}, {P{0, 2}, P{-2, 0}, P{0, 0}}, {P{0, -2}, P{2, 0}, P{0, 0}},
         {P{2, 0}, P{0, 2}, P{0, 0}}, {P{-2, 0}, P{0, -2}, P{0, 0}}},
        {{P{1, 1}, P{0, 2}, P{0, 0}}, {P{-1, -1}, P{0, -2}, P{0, 0}}, {P{-1, 1}, P{2, 0}, P{0, 0}},
         {P{1, -1}, P{-2, 0}, P{0, 0}}},
        {{P{1, 1}, P{0, -2}, P{0, 0}}, {P{-1, -1}, P{0, 2}, P{0, 0}}, {P{-1, 1}, P{-2, 0}, P{0, 0}},
         {P{1, -1}, P{2, 0}, P{0, 0}}},
        {{P{1, 1}, P{2, 0}, P{0, 0}}, {P{-1, -1}, P{-2, 0}, P{0, 0}}, {P{-1, 1}, P{0, 2}, P{0, 0}},
         {P{1, -1}, P{0, -2}, P{0, 0}}},
        {{P{1, 1}, P{-2, 0}, P{0, 0}}, {P{-1, -1}, P{2, 0}, P{0, 0}}, {P{-1, 1}, P{0, -2}, P{0, 0}},
         {P{1, -1}, P{0, 2}, P{0, 0}}},
        {{P{0, 2}, P{1, 1}, P{0, 0}}, {P{0, -2}, P{-1, -1}, P{0, 0}}, {P{2, 0}, P{-1, 1}, P{0, 0}},
         {P{-2, 0}, P{1, -1}, P{0, 0}}},
        {{P{0, -2}, P{1, 1}, P{0, 0}}, {P{0, 2}, P{-1, -1}, P{0, 0}}, {P{-2, 0}, P{-1, 1}, P{0, 0}},
         {P{2, 0}, P{1, -1}, P{0, 0}}},
        {{P{2, 0}, P{1, 1}, P{0, 0}}, {P{-2, 0}, P{-1, -1}, P{0, 0}}, {P{0, 2}, P{-1, 1}, P{0, 0}},
         {P{0, -2}, P{1, -1}, P{0, 0}}},
        {{P{-2, 0}, P{1, 1}, P{0, 0}}, {P{2, 0}, P{-1, -1}, P{0, 0}}, {P{0, -2}, P{-1, 1}, P{0, 0}},
         {P{0, 2}, P{1, -1}, P{0, 0}}},
    };
    std::vector<std::vector<DiffVector>> out;
    for (const auto& item : raw) {
        std::vector<DiffVector> vs;
        for (const auto& v : item) vs.push_back(dv(g(v[0][0], v[0][1]), g(v[1][0], v[1][1]), g(v[2][0], v[2][1])));
        out.push_back(vs);
    }
    return out;
}

/// Proportionality over C with a floating-point rank test; independent of the
/// Gaussian-integer cross products used by the library.
inline bool proportional_float(const DiffVector& v, const DiffVector& w) {
    using C = std::complex<double>;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            const C det = v[std::size_t(i)].to_complex() * w[std::size_t(j)].to_complex() -
                          v[std::size_t(j)].to_complex() * w[std::size_t(i)].to_complex();
            if (std::abs(det) > 1e-9) return false;
        }
    return true;
}

/// Brute-force O(n^2) grouping of all nonzero D^3 vectors by pairwise
/// proportionality. Each group is sorted; groups are sorted by first element.
inline std::vector<std::vector<DiffVector>> brute_force_classes() {
    std::vector<DiffVector> all;
    for (auto a : diff_set())
        for (auto b : diff_set())
            for (auto c : diff_set()) {
                DiffVector v{{a, b, c}};
                if (!v.is_zero()) all.push_back(v);
            }
    std::vector<int> group(all.size(), -1);
    std::vector<std::vector<DiffVector>> out;
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (group[i] >= 0) continue;
        group[i] = int(out.size());
        out.push_back({all[i]});
        for (std::size_t j = i + 1; j < all.size(); ++j)
            if (group[j] < 0 && proportional_float(all[i], all[j])) {
                group[j] = group[i];
                out.back().push_back(all[j]);
            }
    }
    for (auto& grp : out) std::sort(grp.begin(), grp.end());
    std::sort(out.begin(), out.end());
    return out;
}

/// Random map obeying the exclusive law: cells are visited in random order and
/// each takes a random label not yet present in its three slices (allowing one
/// fresh label); labels are then renumbered densely.
template <class Rng>
RelayMap random_valid_map(Rng& rng) {
    std::array<int, kCells> order{};
    for (int i = 0; i < kCells; ++i) order[std::size_t(i)] = i;
    std::shuffle(order.begin(), order.end(), rng);
    RelayMap::Cells cells;
    cells.fill(-1);
    int fresh = 0;
    for (int i : order) {
        const Cell x = Cell::from_index(i);
        std::set<int> used;
        for (Node n : kNodes)
            for (Cell y : slice_cells(n, x.coord(n)))
                if (cells[std::size_t(y.index())] >= 0) used.insert(cells[std::size_t(y.index())]);
        std::vector<int> allowed;
        for (int l = 0; l <= fresh; ++l)
            if (!used.count(l)) allowed.push_back(l);
        const int pick = allowed[std::uniform_int_distribution<std::size_t>(0, allowed.size() - 1)(rng)];
        cells[std::size_t(i)] = pick;
        if (pick == fresh) ++fresh;
    }
    std::vector<int> rename(std::size_t(fresh), -1);
    int next = 0;
    for (auto& v : cells) {
        if (rename[std::size_t(v)] < 0) rename[std::size_t(v)] = next++;
        v = rename[std::size_t(v)];
    }
    return RelayMap{cells};
}

/// Exclusive law restated pairwise: equal labels only on cells that differ in
/// every coordinate (any shared coordinate puts both cells in one slice).
inline bool exclusive_law_pairwise(const RelayMap& m) {
    for (int i = 0; i < kCells; ++i)
        for (int j = i + 1; j < kCells; ++j) {
            const Cell x = Cell::from_index(i), y = Cell::from_index(j);
            if (m.label(x) != m.label(y)) continue;
            if (x.a == y.a || x.b == y.b || x.c == y.c) return false;
        }
    return true;
}

}  // namespace cubenc::testing
