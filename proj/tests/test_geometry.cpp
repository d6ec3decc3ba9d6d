#include "offscreen/geometry.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

namespace offscreen {
namespace {

using testing::reference_scene;

TEST(WorldToScreen, IdentityScene) {
    const Scened s = reference_scene();
    EXPECT_EQ(world_to_screen(s, Vec2d(500, 500)), Vec2d(500, 500));
    EXPECT_EQ(world_to_screen(s, Vec2d(1500, 500)), Vec2d(1500, 500));
}

TEST(WorldToScreen, HalfScale) {
    Scened s = reference_scene();
    s.screen_w = s.screen_h = 500;
    EXPECT_EQ(world_to_screen(s, Vec2d(1000, 0)), Vec2d(500, 0));
}

TEST(WorldToScreen, ViewportCornersHitScreenCorners) {
    Rng rng(7, "geometry/corners");
    for (int i = 0; i < 200; ++i) {
        const Scened s = testing::random_scene(rng);
        EXPECT_LT((world_to_screen(s, s.viewport.min) - Vec2d::Zero()).norm(), 1e-9);
        EXPECT_LT((world_to_screen(s, s.viewport.max) - s.screen_size()).norm(), 1e-9);
    }
}

TEST(WorldToScreen, InverseRoundTrip) {
    Rng rng(7, "geometry/inverse");
    for (int i = 0; i < 1000; ++i) {
        const Scened s = testing::random_scene(rng);
        const Vec2d p(rng.uniform(s.data_space.min.x(), s.data_space.max.x()),
                      rng.uniform(s.data_space.min.y(), s.data_space.max.y()));
        EXPECT_LT((screen_to_world(s, world_to_screen(s, p)) - p).norm(), 1e-9);
    }
}

TEST(ClassifyRegion, Examples) {
    const Scened s = reference_scene();
    EXPECT_EQ(classify_region(s, Vec2d(1500, 500)), RegionTag::right);
    EXPECT_EQ(classify_region(s, Vec2d(1500, 1500)), RegionTag::bottom_right);
    EXPECT_EQ(classify_region(s, Vec2d(1000, 500)), RegionTag::right);
}

TEST(ClassifyRegion, AllNineCellsAndBoundaries) {
    const Scened s = reference_scene();
    // Coordinates below, on the min edge, interior, on the max edge, beyond.
    const std::array<double, 5> xs{-10, 0, 500, 1000, 1010};
    // Expected offsets per coordinate: -1, inside, inside, max edge, +1.
    const auto off = [](int i) { return i == 0 ? -1 : i == 4 ? 1 : 0; };
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            const Vec2d p(xs[static_cast<std::size_t>(i)], xs[static_cast<std::size_t>(j)]);
            const RegionTag r = classify_region(s, p);
            const int ox = off(i), oy = off(j);
            RegionTag expected;
            if (ox != 0 || oy != 0) expected = region_from_offset(ox, oy);
            else if (i == 3) expected = RegionTag::right;
            else if (j == 3) expected = RegionTag::bottom;
            else expected = RegionTag::inside;
            EXPECT_EQ(r, expected) << "p=(" << p.x() << "," << p.y() << ")";
        }
    }
}

TEST(ClassifyRegion, EdgeExtensionsAreSides) {
    const Scened s = reference_scene();
    EXPECT_EQ(classify_region(s, Vec2d(1500, 0)), RegionTag::right);
    EXPECT_EQ(classify_region(s, Vec2d(1500, 1000)), RegionTag::right);
    EXPECT_EQ(classify_region(s, Vec2d(-500, 0)), RegionTag::left);
    EXPECT_EQ(classify_region(s, Vec2d(0, -500)), RegionTag::top);
    EXPECT_EQ(classify_region(s, Vec2d(1000, -500)), RegionTag::top);
    EXPECT_EQ(classify_region(s, Vec2d(1000, 1500)), RegionTag::bottom);
}

TEST(ClassifyRegion, PartitionMatchesIndependentPredicates) {
    Rng rng(11, "geometry/partition");
    const Scened s = reference_scene();
    for (int i = 0; i < 20000; ++i) {
        const Vec2d p(rng.uniform(-1000, 2000), rng.uniform(-1000, 2000));
        const RegionTag r = classify_region(s, p);
        int hits = 0;
        for (RegionTag t : kAllRegions) {
            const auto o = region_offset(t);
            bool member;
            if (t == RegionTag::inside) {
                member = p.x() >= 0 && p.x() < 1000 && p.y() >= 0 && p.y() < 1000;
            } else if (is_corner(t)) {
                member = (o.x() < 0 ? p.x() < 0 : p.x() > 1000) && (o.y() < 0 ? p.y() < 0 : p.y() > 1000);
            } else if (o.x() != 0) {
                member = (o.x() < 0 ? p.x() < 0 : p.x() > 1000) && p.y() >= 0 && p.y() <= 1000;
            } else {
                member = (o.y() < 0 ? p.y() < 0 : p.y() > 1000) && p.x() >= 0 && p.x() <= 1000;
            }
            if (member) {
                ++hits;
                EXPECT_EQ(r, t);
            }
        }
        EXPECT_EQ(hits, 1);
    }
}

TEST(ClassifyRegion, DihedralSymmetry) {
    const Scened s = reference_scene();
    Rng rng(13, "geometry/dihedral");
    // Integer grid keeps mirrored coordinates exact.
    for (int i = 0; i < 5000; ++i) {
        const double x = static_cast<double>(rng.below(3001)) - 1000 + 0.5;
        const double y = static_cast<double>(rng.below(3001)) - 1000 + 0.5;
        const auto o = region_offset(classify_region(s, Vec2d(x, y)));
        // Mirror in x, mirror in y, transpose.
        EXPECT_EQ(region_offset(classify_region(s, Vec2d(1000 - x, y))), Eigen::Vector2i(-o.x(), o.y()));
        EXPECT_EQ(region_offset(classify_region(s, Vec2d(x, 1000 - y))), Eigen::Vector2i(o.x(), -o.y()));
        EXPECT_EQ(region_offset(classify_region(s, Vec2d(y, x))), Eigen::Vector2i(o.y(), o.x()));
    }
}

TEST(RegionNames, RoundTrip) {
    for (RegionTag r : kAllRegions) EXPECT_EQ(region_from_string(to_string(r)), r);
    EXPECT_EQ(to_string(RegionTag::top_left), "top-left");
    EXPECT_THROW(region_from_string("north"), Error);
}

TEST(Scene, RequireValidRejectsBadInput) {
    Scened s = reference_scene();
    s.viewport.max.x() = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(require_valid(s), Error);
    s = reference_scene();
    s.screen_w = 0;
    EXPECT_THROW(require_valid(s), Error);
    s = reference_scene();
    s.data_space = Rectd(0, 0, 0, 10);
    EXPECT_THROW(require_valid(s), Error);
}

TEST(Scene, FloatInstantiation) {
    const Scene<float> s{Rect<float>(-1000, -1000, 2000, 2000), Rect<float>(0, 0, 1000, 1000), 500, 500};
    EXPECT_EQ(world_to_screen(s, Vec2<float>(1000, 0)), Vec2<float>(500, 0));
}

}  // namespace
}  // namespace offscreen
