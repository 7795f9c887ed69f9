#include <gtest/gtest.h>

#include <random>

#include "cubenc/metrics.hpp"
#include "support.hpp"

namespace cubenc {
namespace {

using testing::dv;
using testing::g;

cplx random_gain(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    const double re = n(rng);
    const double im = n(rng);
    return {re, im};
}

FadeState random_fade(std::mt19937_64& rng) {
    const cplx a = random_gain(rng);
    const cplx b = random_gain(rng);
    const cplx c = random_gain(rng);
    return {a, b, c};
}

// Random point with h . v = 0: free components drawn at random, one nonzero
// component of v solved for.
FadeState random_point_in(const DiffVector& v, std::mt19937_64& rng) {
    std::array<cplx, 3> h{random_gain(rng), random_gain(rng), random_gain(rng)};
    std::size_t pivot = 0;
    while (v[pivot].is_zero()) ++pivot;
    cplx rest = 0;
    for (std::size_t i = 0; i < 3; ++i)
        if (i != pivot) rest += h[i] * v[i].to_complex();
    h[pivot] = -rest / v[pivot].to_complex();
    return {h[0], h[1], h[2]};
}

double brute_dmin(const FadeState& h) {
    double best = 1e300;
    for (int i = 0; i < kCells; ++i)
        for (int j = 0; j < kCells; ++j)
            if (i != j) best = std::min(best, std::abs(superpose(h, Cell::from_index(i)) - superpose(h, Cell::from_index(j))));
    return best;
}

const MapCatalog& catalog() {
    static const MapCatalog c = MapCatalog::build();
    return c;
}

TEST(EffectiveConstellation, KnownPoints) {
    const FadeState h{{1, 0}, {0, 1}, {2, 0}};
    const auto pts = effective_constellation(h);
    EXPECT_EQ(pts[0], cplx(3, 1));                           // 1 + j + 2
    EXPECT_EQ(pts[(Cell{2, 1, 3}.index())], cplx(-2, -2));    // -1 + j*j + 2*(-j)
    EXPECT_EQ(pts[(Cell{1, 0, 0}.index())], cplx(2, 2));      // j + j + 2
}

TEST(DminFade, SingularAndGenericPoints) {
    EXPECT_NEAR(dmin_fade({{1, 0}, {1, 0}, {1, 0}}), 0.0, 1e-15);
    EXPECT_NEAR(brute_dmin({{1, 0}, {1, 0}, {1, 0}}), 0.0, 1e-15);
    EXPECT_EQ(dmin_fade({{1, 0}, {0, 0}, {0, 0}}), 0.0);

    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i) {
        const FadeState h = random_fade(rng);
        const double d = dmin_fade(h);
        EXPECT_GT(d, 0.0);
        if (i < 50) {
            EXPECT_NEAR(d, brute_dmin(h), 1e-12 * h.norm());
        }
    }
}

TEST(DminCluster, FastPathMatchesBruteForce) {
    std::mt19937_64 rng(11);
    std::vector<const MapProfile*> entries;
    for (const auto& e : catalog().adaptive()) entries.push_back(&e);
    entries.push_back(&*catalog().non_adaptive());
    for (int trial = 0; trial < 200; ++trial) {
        const FadeState h = random_fade(rng);
        const MapProfile& e = *entries[std::size_t(trial) % entries.size()];
        const double slow = dmin_cluster(e.map(), h);
        EXPECT_NEAR(e.dmin_cluster(h), slow, 1e-12 * std::max(1.0, slow));
        EXPECT_GE(slow + 1e-12, dmin_fade(h));
    }
}

TEST(DminCluster, HomogeneousAndZeroAtOrigin) {
    std::mt19937_64 rng(13);
    const RelayMap& m = catalog().adaptive().front().map();
    for (int trial = 0; trial < 100; ++trial) {
        const FadeState h = random_fade(rng);
        const cplx s = random_gain(rng);
        EXPECT_NEAR(dmin_cluster(m, h.scaled(s)), std::abs(s) * dmin_cluster(m, h), 1e-12 * std::abs(s) * h.norm());
    }
    EXPECT_EQ(dmin_cluster(m, FadeState{}), 0.0);
    EXPECT_EQ(dmin_fade(FadeState{}), 0.0);
}

TEST(DminCluster, RemovingMapStaysPositiveOnItsSubspace) {
    std::mt19937_64 rng(19);
    for (const auto& e : catalog().adaptive()) {
        const auto& k = class_by_id(*e.class_id());
        const FadeState h = random_point_in(k.canonical, rng);
        EXPECT_LT(dmin_fade(h), 1e-12 * h.norm());
        EXPECT_GT(e.dmin_cluster(h), 1e-6 * h.norm()) << k.id;
    }
}

TEST(DminCluster, NonRemovingMapCollapses) {
    std::mt19937_64 rng(23);
    const auto& k = class_of(dv(g(1, 1), g(0, 2), g(0, -2)));
    ASSERT_FALSE(removes(xor_map(), k));
    const FadeState h = random_point_in(k.canonical, rng);
    EXPECT_LT(dmin_cluster(xor_map(), h), 1e-12 * h.norm());
}

TEST(IsSingular, FindsConstructedSubspace) {
    std::mt19937_64 rng(29);
    for (const auto& k : singular_classes()) {
        const FadeState h = random_point_in(k.canonical, rng);
        const auto found = is_singular(h, 1e-9);
        ASSERT_TRUE(found.has_value()) << k.id;
        // a random point on one subspace is off every other one
        EXPECT_EQ(*found, k.id);
        EXPECT_EQ(is_singular(h.scaled({0.5, -3.0}), 1e-9), found);
    }
    EXPECT_FALSE(is_singular({{1, 0}, {10, 0}, {100, 0}}, 1e-9).has_value());
}

TEST(SelectMap, PicksRemovingMapOnSubspace) {
    std::mt19937_64 rng(31);
    for (const auto& e : catalog().adaptive()) {
        const auto& k = class_by_id(*e.class_id());
        const FadeState h = random_point_in(k.canonical, rng);
        const Selection s = select_map(catalog(), h);
        EXPECT_TRUE(removes(s.map(), k)) << k.id;
        EXPECT_GT(s.dmin, 0.0);
        EXPECT_NEAR(s.dmin, dmin_cluster(s.map(), h), 1e-12 * std::max(1.0, s.dmin));
    }
}

TEST(SelectMap, MaximizesOverCatalog) {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 50; ++trial) {
        const FadeState h = random_fade(rng);
        const Selection s = select_map(catalog(), h);
        for (const auto& e : catalog().adaptive()) EXPECT_LE(e.dmin_cluster(h), s.dmin);
        EXPECT_LE(catalog().non_adaptive()->dmin_cluster(h), s.dmin);
    }
}

TEST(SelectMap, InvariantUnderPositiveScaling) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        const FadeState h = random_fade(rng);
        EXPECT_EQ(select_map(catalog(), h).entry, select_map(catalog(), h.scaled(7.25)).entry);
    }
}

TEST(SelectMap, SingleEntryCatalog) {
    const MapCatalog one{{MapProfile{xor_map(), std::nullopt}}, std::nullopt};
    std::mt19937_64 rng(43);
    const Selection s = select_map(one, random_fade(rng));
    EXPECT_EQ(s.map(), xor_map());
}

TEST(SelectMap, TiesFavourSmallestClassId) {
    // at h = 0 every entry scores 0
    const Selection s = select_map(catalog(), FadeState{});
    ASSERT_NE(s.entry, nullptr);
    EXPECT_EQ(s.entry->class_id(), catalog().adaptive().front().class_id());
}

TEST(MapCatalog, OneEntryPerRemovableClass) {
    EXPECT_EQ(catalog().adaptive().size(), 112u);
    EXPECT_EQ(catalog().size(), 113u);
    for (const auto& e : catalog().adaptive()) {
        ASSERT_TRUE(e.class_id().has_value());
        EXPECT_EQ(catalog().find(*e.class_id()), &e);
    }
    for (const auto& k : singular_classes())
        if (!k.removable) {
            EXPECT_EQ(catalog().find(k.id), nullptr);
        }
}

}  // namespace
}  // namespace cubenc
