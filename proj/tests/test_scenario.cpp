#include "offscreen/scenario.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>

namespace offscreen {
namespace {

TEST(Extents, ReferenceSideFullOthersInRange) {
    Rng rng(1, "extents");
    const ExperimentLayout layout;
    for (int i = 0; i < 1000; ++i) {
        const auto d = gen_extents(rng, layout.full_extent);
        ASSERT_TRUE(d.reference_side.has_value());
        const std::array<std::pair<RegionTag, std::pair<double, double>>, 4> sides{{
            {RegionTag::top, {d.extent.top, layout.full_extent.top}},
            {RegionTag::left, {d.extent.left, layout.full_extent.left}},
            {RegionTag::bottom, {d.extent.bottom, layout.full_extent.bottom}},
            {RegionTag::right, {d.extent.right, layout.full_extent.right}},
        }};
        for (const auto& [side, v] : sides) {
            if (side == *d.reference_side) {
                EXPECT_EQ(v.first, v.second);
            } else {
                EXPECT_GE(v.first, 0.25 * v.second);
                EXPECT_LT(v.first, 0.75 * v.second);
            }
        }
    }
}

TEST(Cases, Task2HasSixOrbits) {
    EXPECT_EQ(task2_cases().size(), 6u);
    std::map<int, int> sizes;
    for (int a = 0; a < kAxisCount; ++a)
        for (int b = a + 1; b < kAxisCount; ++b) ++sizes[axis_pair_class({a, b})];
    int total = 0;
    for (const auto& [cls, n] : sizes) total += n;
    EXPECT_EQ(total, 28);
    EXPECT_EQ(sizes.size(), 6u);
    EXPECT_THROW(axis_pair_class({3, 3}), Error);
}

TEST(Cases, Task3OrbitCountsAreDocumented) {
    const auto c = task3_orbit_counts();
    EXPECT_EQ(c.distinct_axes_colors_ordered, 60);
    EXPECT_EQ(c.distinct_axes_colors_unordered, 38);
    EXPECT_EQ(c.shared_within_color_ordered, 109);
    EXPECT_EQ(c.shared_within_color_unordered, 65);
}

TEST(Cases, EveryTask3CaseIsPlaceable) {
    for (int id = 0; id < kTask3CaseCount; ++id) {
        const auto placements = task3_placements(id);
        EXPECT_FALSE(placements.empty()) << id;
        const auto c = task3_case(id);
        for (const auto& [red, blue] : placements) {
            EXPECT_EQ(axis_pair_class(red), c.red_class);
            EXPECT_EQ(axis_pair_class(blue), c.blue_class);
        }
    }
    EXPECT_THROW(task3_case(36), Error);
}

TEST(Plan, CoversEachCaseThreeTimes) {
    const auto plan = make_task3_plan(99, 18);
    std::map<int, int> cover;
    for (const auto& row : plan) {
        EXPECT_EQ(std::set<int>(row.begin(), row.end()).size(), row.size());
        for (int id : row) ++cover[id];
    }
    EXPECT_EQ(cover.size(), 36u);
    for (const auto& [id, n] : cover) EXPECT_EQ(n, 3);
    EXPECT_THROW(make_task3_plan(99, 17), Error);
}

TEST(Generate, TrialCounts) {
    EXPECT_EQ(gen_trials(Task::t1, 7, 18).size(), 576u);
    EXPECT_EQ(gen_trials(Task::t2, 7, 18).size(), 432u);
    EXPECT_EQ(gen_trials(Task::t3, 7, 18).size(), 432u);
    EXPECT_EQ(gen_task1(7, 0).size(), 32u);
    EXPECT_EQ(gen_task2(7, 0).size(), 24u);
}

TEST(Generate, Deterministic) {
    const auto a = gen_trials(Task::t2, 5, 2);
    const auto b = gen_trials(Task::t2, 5, 2);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].id, b[i].id);
        ASSERT_EQ(a[i].points.size(), b[i].points.size());
        for (std::size_t k = 0; k < a[i].points.size(); ++k) EXPECT_EQ(a[i].points[k].pos, b[i].points[k].pos);
    }
    const auto c = gen_trials(Task::t2, 6, 2);
    EXPECT_NE(a[0].points[0].pos, c[0].points[0].pos);
}

TEST(Generate, Task1Structure) {
    const ExperimentLayout layout;
    const auto trials = gen_task1(3, 4, layout);
    std::map<std::tuple<BorderMode, HubMode, int>, int> cells;
    for (const auto& t : trials) {
        ASSERT_TRUE(t.hub_mode.has_value());
        ASSERT_EQ(t.points.size(), 1u);
        ++cells[{t.border_mode, *t.hub_mode, t.points[0].axis}];
        EXPECT_TRUE(is_side(classify_region(t.scene, t.points[0].pos)));
        EXPECT_TRUE(t.scene.data_space.contains(t.points[0].pos));
        if (t.border_mode == BorderMode::fixed && *t.hub_mode == HubMode::fixed) {
            EXPECT_EQ(t.scene.data_space, layout.full_data_space());
            EXPECT_FALSE(t.reference_side.has_value());
        }
        EXPECT_EQ(t.id.substr(0, 6), "T1-P04");
    }
    EXPECT_EQ(cells.size(), 32u);
}

TEST(Generate, Task1SeparationContract) {
    const ExperimentLayout layout;
    for (const auto& t : gen_trials(Task::t1, 11, 18, layout)) {
        const auto band = trial_intrusion(t, layout);
        const Vec2d o = project(t.scene, band, Strategy::orthographic, t.points[0].pos).screen_pos;
        const Vec2d r = project(t.scene, band, Strategy::radial, t.points[0].pos).screen_pos;
        EXPECT_GT((o - r).norm(), 1.0);
        const auto rt = retrace_task1(t, layout);
        EXPECT_GE((rt.ortho - rt.radial).norm(), 1.0);
    }
}

TEST(Generate, GroundTruthMargin) {
    const ExperimentLayout layout;
    const double margin = 0.02 * 1080;
    for (Task task : {Task::t2, Task::t3}) {
        for (const auto& t : gen_trials(task, 13, 6, layout)) {
            const auto& p = t.points;
            const double gap = task == Task::t2
                                   ? std::abs(distance_to_rect(t.scene.viewport, p[0].pos) -
                                              distance_to_rect(t.scene.viewport, p[1].pos))
                                   : std::abs((p[0].pos - p[1].pos).norm() - (p[2].pos - p[3].pos).norm());
            EXPECT_GE(gap, margin);
            EXPECT_NO_THROW(ground_truth(t));
        }
    }
}

TEST(ClosedLoop, SyntheticRespondents) {
    const ExperimentLayout layout;
    for (const auto& t : gen_trials(Task::t1, 17, 2, layout)) {
        const auto rt = retrace_task1(t, layout);
        Response ro{t.id, t.participant, rt.ortho, std::nullopt, 1000};
        Response rr{t.id, t.participant, rt.radial, std::nullopt, 1000};
        EXPECT_EQ(classify_t1(t, ro, layout).chosen, Strategy::orthographic);
        EXPECT_EQ(classify_t1(t, rr, layout).chosen, Strategy::radial);
        EXPECT_FALSE(classify_t1(t, ro, layout).tie);
    }
}

TEST(ClosedLoop, ClickOutsideHubRejected) {
    const auto t = gen_task1(1, 0).front();
    Response r{t.id, 0, Vec2d(960, 540), std::nullopt, 0};
    EXPECT_THROW(classify_t1(t, r), Error);
    r.click = Vec2d(1e7, 0);
    EXPECT_THROW(classify_t1(t, r), Error);
}

TEST(Correctness, Task2Choice) {
    const auto t = gen_task2(1, 0).front();
    const Color truth = ground_truth(t);
    EXPECT_TRUE(is_correct(t, Response{t.id, 0, std::nullopt, truth, 0}));
    EXPECT_FALSE(is_correct(t, Response{t.id, 0, std::nullopt, truth == Color::red ? Color::blue : Color::red, 0}));
}

}  // namespace
}  // namespace offscreen
