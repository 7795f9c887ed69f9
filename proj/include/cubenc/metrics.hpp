#pragma once

// Distances in the effective relay constellation and adaptive map selection.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "cubenc/constellation.hpp"
#include "cubenc/fadespace.hpp"
#include "cubenc/latincube.hpp"

namespace cubenc {

using cplx = std::complex<double>;

/// MA-phase channel gains of the A-R, B-R and C-R links.
struct FadeState {
    cplx h_a{};
    cplx h_b{};
    cplx h_c{};

    bool is_finite() const {
        for (cplx z : {h_a, h_b, h_c})
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    }

    double norm() const { return std::sqrt(std::norm(h_a) + std::norm(h_b) + std::norm(h_c)); }

    FadeState scaled(cplx s) const { return {h_a * s, h_b * s, h_c * s}; }
};

/// h_a*d_a + h_b*d_b + h_c*d_c.
inline cplx apply(const FadeState& h, const DiffVector& d) {
    return h.h_a * d[0].to_complex() + h.h_b * d[1].to_complex() + h.h_c * d[2].to_complex();
}

/// Received point for transmit triple x at the relay without noise.
inline cplx superpose(const FadeState& h, Cell x) {
    return h.h_a * PskSymbol{x.a}.complex_value() + h.h_b * PskSymbol{x.b}.complex_value() +
           h.h_c * PskSymbol{x.c}.complex_value();
}

/// All 64 superposed points, indexed by Cell::index().
inline std::array<cplx, kCells> effective_constellation(const FadeState& h) {
    std::array<cplx, kCells> pts{};
    for (int i = 0; i < kCells; ++i) pts[static_cast<std::size_t>(i)] = superpose(h, Cell::from_index(i));
    return pts;
}

/// Minimum distance of the effective constellation. Every nonzero vector in
/// D^3 is the difference of some pair of triples, so scanning D^3 suffices.
inline double dmin_fade(const FadeState& h) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& d : all_diff_vectors()) best = std::min(best, std::abs(apply(h, d)));
    return best;
}

/// Minimum distance between points with different labels in m.
inline double dmin_cluster(const RelayMap& m, const FadeState& h) {
    const auto pts = effective_constellation(h);
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kCells; ++i)
        for (int j = i + 1; j < kCells; ++j) {
            if (m.label(Cell::from_index(i)) == m.label(Cell::from_index(j))) continue;
            best = std::min(best, std::abs(pts[static_cast<std::size_t>(i)] - pts[static_cast<std::size_t>(j)]));
        }
    return best;
}

/// Id of the first singular fade subspace containing h under the normalized
/// test |h . v| <= tol * |h| * |v|, if any.
inline std::optional<int> is_singular(const FadeState& h, double tol) {
    const double hn = h.norm();
    for (const auto& k : singular_classes()) {
        const DiffVector& v = k.canonical;
        const double vn = std::sqrt(double(v[0].norm() + v[1].norm() + v[2].norm()));
        if (std::abs(apply(h, v)) <= tol * hn * vn) return k.id;
    }
    return std::nullopt;
}

namespace detail {

// Position of a value in the sorted diff_set(), or -1.
constexpr int diff_position(GaussianInt z) {
    const auto ds = diff_set();
    for (int i = 0; i < 9; ++i)
        if (ds[static_cast<std::size_t>(i)] == z) return i;
    return -1;
}

// Flat index of a D^3 triple in 0..728; the zero triple is 364.
constexpr int triple_index(const DiffVector& d) {
    return 81 * diff_position(d[0]) + 9 * diff_position(d[1]) + diff_position(d[2]);
}

inline DiffVector difference(Cell x, Cell y) {
    return {{PskSymbol{x.a}.value() - PskSymbol{y.a}.value(), PskSymbol{x.b}.value() - PskSymbol{y.b}.value(),
             PskSymbol{x.c}.value() - PskSymbol{y.c}.value()}};
}

}  // namespace detail

/// |h . d| for every triple of D^3, by flat triple index.
class DiffMagnitudes {
public:
    explicit DiffMagnitudes(const FadeState& h) {
        const auto ds = diff_set();
        std::array<cplx, 9> ta{}, tb{}, tc{};
        for (std::size_t i = 0; i < 9; ++i) {
            ta[i] = h.h_a * ds[i].to_complex();
            tb[i] = h.h_b * ds[i].to_complex();
            tc[i] = h.h_c * ds[i].to_complex();
        }
        for (std::size_t i = 0; i < 9; ++i)
            for (std::size_t j = 0; j < 9; ++j)
                for (std::size_t k = 0; k < 9; ++k) mag_[81 * i + 9 * j + k] = std::abs(ta[i] + tb[j] + tc[k]);
    }

    double operator[](int idx) const { return mag_[static_cast<std::size_t>(idx)]; }

private:
    std::array<double, 729> mag_{};
};

/// A map together with the set of difference triples realized by at least one
/// pair of cells carrying different labels. The minimum cluster distance at
/// any h is the minimum of |h . d| over that set.
class MapProfile {
public:
    MapProfile(RelayMap map, std::optional<int> class_id) : map_(std::move(map)), class_id_(class_id) {
        std::array<bool, 729> split{};
        for (int i = 0; i < kCells; ++i)
            for (int j = 0; j < kCells; ++j) {
                const Cell x = Cell::from_index(i);
                const Cell y = Cell::from_index(j);
                if (map_.label(x) != map_.label(y))
                    split[static_cast<std::size_t>(detail::triple_index(detail::difference(x, y)))] = true;
            }
        for (int d = 0; d < 729; ++d)
            if (split[static_cast<std::size_t>(d)]) split_.push_back(static_cast<std::uint16_t>(d));
    }

    const RelayMap& map() const { return map_; }
    std::optional<int> class_id() const { return class_id_; }

    double dmin_cluster(const DiffMagnitudes& mags) const {
        double best = std::numeric_limits<double>::infinity();
        for (auto d : split_) best = std::min(best, mags[d]);
        return best;
    }

    double dmin_cluster(const FadeState& h) const { return dmin_cluster(DiffMagnitudes{h}); }

private:
    RelayMap map_;
    std::optional<int> class_id_;
    std::vector<std::uint16_t> split_;
};

/// One completed map per removable subspace plus, optionally, the
/// non-adaptive map.
class MapCatalog {
public:
    MapCatalog(std::vector<MapProfile> adaptive, std::optional<MapProfile> non_adaptive)
        : adaptive_(std::move(adaptive)), non_adaptive_(std::move(non_adaptive)) {
        std::stable_sort(adaptive_.begin(), adaptive_.end(),
                         [](const MapProfile& x, const MapProfile& y) { return x.class_id() < y.class_id(); });
    }

    /// Completes constraints_for(k) for every removable class k.
    static MapCatalog build() {
        std::vector<MapProfile> entries;
        for (const auto& k : singular_classes())
            if (is_removable(k)) entries.emplace_back(complete(constraints_for(k)), k.id);
        return MapCatalog{std::move(entries), MapProfile{xor_map(), std::nullopt}};
    }

    const std::vector<MapProfile>& adaptive() const { return adaptive_; }
    const std::optional<MapProfile>& non_adaptive() const { return non_adaptive_; }
    std::size_t size() const { return adaptive_.size() + (non_adaptive_ ? 1 : 0); }

    const MapProfile* find(int class_id) const {
        for (const auto& e : adaptive_)
            if (e.class_id() == class_id) return &e;
        return nullptr;
    }

private:
    std::vector<MapProfile> adaptive_;
    std::optional<MapProfile> non_adaptive_;
};

struct Selection {
    const MapProfile* entry = nullptr;
    double dmin = 0.0;

    const RelayMap& map() const { return entry->map(); }
};

/// Catalog entry maximizing the minimum cluster distance at h. Ties go to the
/// smallest class id; the non-adaptive map wins only when strictly better.
inline Selection select_map(const MapCatalog& catalog, const FadeState& h) {
    const DiffMagnitudes mags{h};
    Selection best;
    best.dmin = -1.0;
    for (const auto& e : catalog.adaptive()) {
        const double d = e.dmin_cluster(mags);
        if (d > best.dmin) best = {&e, d};
    }
    if (const auto& na = catalog.non_adaptive()) {
        const double d = na->dmin_cluster(mags);
        if (d > best.dmin) best = {&*na, d};
    }
    return best;
}

}  // namespace cubenc
