#pragma once

// Singular fade subspaces of the three-user 4-PSK multiple access channel.
//
// A fade state h = (h_a, h_b, h_c) is singular when two transmit triples x, x'
// collide at the relay, i.e. h_a*d_a + h_b*d_b + h_c*d_c = 0 for the difference
// vector d = x - x'. Each such locus is the orthogonal complement of d, so a
// subspace is identified by the proportionality class of its difference
// vectors. Classes are found with an exact cross-product test on Gaussian
// integers; no trigonometry is involved.

#include <algorithm>
#include <array>
#include <compare>
#include <map>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "cubenc/constellation.hpp"

namespace cubenc {

/// Difference vector (d_a, d_b, d_c) over the difference constellation.
struct DiffVector {
    std::array<GaussianInt, 3> d{};

    constexpr GaussianInt operator[](std::size_t i) const { return d[i]; }

    constexpr bool is_zero() const { return d[0].is_zero() && d[1].is_zero() && d[2].is_zero(); }

    /// Components in D and not all zero.
    constexpr bool is_valid() const {
        return in_diff_set(d[0]) && in_diff_set(d[1]) && in_diff_set(d[2]) && !is_zero();
    }

    constexpr int nonzero_count() const {
        return int(!d[0].is_zero()) + int(!d[1].is_zero()) + int(!d[2].is_zero());
    }

    constexpr int d1_count() const {
        return int(d[0].norm() == 2) + int(d[1].norm() == 2) + int(d[2].norm() == 2);
    }

    constexpr DiffVector scaled(GaussianInt s) const { return {{d[0] * s, d[1] * s, d[2] * s}}; }

    friend constexpr bool operator==(const DiffVector&, const DiffVector&) = default;
    friend constexpr auto operator<=>(const DiffVector&, const DiffVector&) = default;

    friend std::ostream& operator<<(std::ostream& os, const DiffVector& v) {
        return os << "[" << v.d[0] << ", " << v.d[1] << ", " << v.d[2] << "]";
    }
};

/// Number of nonzero components: one (Case1), two (Case2) or three (Case3).
enum class FadeCase { Case1 = 1, Case2 = 2, Case3 = 3 };

struct SubspaceClass {
    int id = -1;
    DiffVector canonical;
    std::vector<DiffVector> members;  // sorted
    FadeCase fade_case = FadeCase::Case1;
    std::array<bool, 3> support{};    // which components are nonzero
    int d1_components = 0;            // max number of D1 entries over members
    bool removable = false;

    bool contains(const DiffVector& v) const { return std::binary_search(members.begin(), members.end(), v); }
};

/// True iff v and w span the same line of C^3. Both must be nonzero.
constexpr bool proportional(const DiffVector& v, const DiffVector& w) {
    return v[0] * w[1] == v[1] * w[0] && v[0] * w[2] == v[2] * w[0] && v[1] * w[2] == v[2] * w[1];
}

/// The 728 nonzero vectors of D^3 in lexicographic order.
inline const std::vector<DiffVector>& all_diff_vectors() {
    static const std::vector<DiffVector> vectors = [] {
        std::vector<DiffVector> out;
        out.reserve(728);
        for (auto a : diff_set())
            for (auto b : diff_set())
                for (auto c : diff_set()) {
                    DiffVector v{{a, b, c}};
                    if (!v.is_zero()) out.push_back(v);
                }
        return out;
    }();
    return vectors;
}

/// Lexicographically smallest member of v's proportionality class in D^3.
inline DiffVector canonical(const DiffVector& v) {
    if (!v.is_valid()) throw std::domain_error("canonical: not a nonzero vector over D^3");
    // all_diff_vectors() is sorted, so the first proportional vector is the minimum
    for (const auto& w : all_diff_vectors())
        if (proportional(v, w)) return w;
    return v;  // unreachable: v is proportional to itself
}

/// Partitions D^3 \ {0} into proportionality classes. Ids follow the order of
/// canonical representatives.
inline std::vector<SubspaceClass> enumerate_classes() {
    std::map<DiffVector, std::vector<DiffVector>> groups;
    for (const auto& v : all_diff_vectors()) groups[canonical(v)].push_back(v);

    std::vector<SubspaceClass> classes;
    classes.reserve(groups.size());
    int next_id = 0;
    for (auto& [rep, members] : groups) {
        SubspaceClass k;
        k.id = next_id++;
        k.canonical = rep;
        k.members = std::move(members);
        std::sort(k.members.begin(), k.members.end());
        k.fade_case = static_cast<FadeCase>(rep.nonzero_count());
        for (std::size_t i = 0; i < 3; ++i) k.support[i] = !rep[i].is_zero();
        for (const auto& m : k.members) k.d1_components = std::max(k.d1_components, m.d1_count());
        k.removable = k.fade_case == FadeCase::Case3;
        classes.push_back(std::move(k));
    }
    return classes;
}

/// Cached result of enumerate_classes().
inline const std::vector<SubspaceClass>& singular_classes() {
    static const std::vector<SubspaceClass> classes = enumerate_classes();
    return classes;
}

/// Class containing v.
inline const SubspaceClass& class_of(const DiffVector& v) {
    const DiffVector rep = canonical(v);
    const auto& classes = singular_classes();
    auto it = std::lower_bound(classes.begin(), classes.end(), rep,
                               [](const SubspaceClass& k, const DiffVector& r) { return k.canonical < r; });
    return *it;
}

inline const SubspaceClass& class_by_id(int id) {
    const auto& classes = singular_classes();
    if (id < 0 || id >= int(classes.size())) throw std::out_of_range("no singular fade subspace with id " + std::to_string(id));
    return classes[static_cast<std::size_t>(id)];
}

inline int orbit_size(const SubspaceClass& k) { return int(k.members.size()); }

/// Only classes with every component nonzero can be co-clustered without
/// breaking the exclusive law.
inline bool is_removable(const SubspaceClass& k) {
    return !k.canonical[0].is_zero() && !k.canonical[1].is_zero() && !k.canonical[2].is_zero();
}

}  // namespace cubenc
