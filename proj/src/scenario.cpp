#include "offscreen/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

namespace offscreen {

std::string_view to_string(HubMode m) { return m == HubMode::fixed ? "fixed" : "adaptive"; }

HubMode hub_mode_from_string(std::string_view name) {
    if (name == "fixed") return HubMode::fixed;
    if (name == "adaptive") return HubMode::adaptive;
    throw Error("unknown hub mode '" + std::string(name) + "' (expected fixed|adaptive)");
}

std::string_view to_string(Color c) { return c == Color::red ? "red" : "blue"; }

Color color_from_string(std::string_view name) {
    if (name == "red") return Color::red;
    if (name == "blue") return Color::blue;
    throw Error("unknown color '" + std::string(name) + "' (expected red|blue)");
}

Task task_from_int(int task) {
    if (task < 1 || task > 3) throw Error("unknown task " + std::to_string(task) + " (expected 1, 2 or 3)");
    return static_cast<Task>(task);
}

Rectd ExperimentLayout::full_data_space() const { return data_space_for(full_extent); }

Rectd ExperimentLayout::data_space_for(const BorderIntrusiond& e) const {
    return Rectd(viewport.min.x() - e.left, viewport.min.y() - e.top, viewport.max.x() + e.right,
                 viewport.max.y() + e.bottom);
}

Scened ExperimentLayout::scene_for(const Rectd& data_space) const {
    return Scened{data_space, viewport, screen_w, screen_h};
}

BorderConfigd ExperimentLayout::border(BorderMode mode) const {
    BorderConfigd cfg;
    cfg.max_intrusion_px = max_intrusion_px;
    cfg.mode = mode;
    return cfg;
}

ExtentDraw gen_extents(Rng& rng, const BorderIntrusiond& full) {
    static constexpr std::array<RegionTag, 4> kSides{RegionTag::top, RegionTag::left, RegionTag::bottom,
                                                     RegionTag::right};
    ExtentDraw out;
    const auto ref = rng.below(4);
    out.reference_side = kSides[ref];
    std::array<double, 4> full_by_side{full.top, full.left, full.bottom, full.right};
    std::array<double, 4> drawn{};
    for (std::size_t i = 0; i < 4; ++i)
        drawn[i] = i == ref ? full_by_side[i] : full_by_side[i] * rng.uniform(0.25, 0.75);
    out.extent = {drawn[0], drawn[1], drawn[2], drawn[3]};
    return out;
}

// ---------------------------------------------------------------------------
// Axis-pair orbits

namespace {

AxisPair sorted_pair(int a, int b) { return a < b ? AxisPair{a, b} : AxisPair{b, a}; }

AxisPair apply(const AxisPermutation& g, AxisPair p) {
    return sorted_pair(g[static_cast<std::size_t>(p.first)], g[static_cast<std::size_t>(p.second)]);
}

std::vector<AxisPair> all_pairs() {
    std::vector<AxisPair> out;
    for (int a = 0; a < kAxisCount; ++a)
        for (int b = a + 1; b < kAxisCount; ++b) out.emplace_back(a, b);
    return out;
}

struct PairClasses {
    std::map<AxisPair, int> class_of;
    std::vector<AxisPair> representatives;
};

const PairClasses& pair_classes() {
    static const PairClasses classes = [] {
        PairClasses c;
        for (const AxisPair& p : all_pairs()) {
            if (c.class_of.count(p)) continue;
            const int id = static_cast<int>(c.representatives.size());
            c.representatives.push_back(p);
            for (const auto& g : dihedral_group()) c.class_of.emplace(apply(g, p), id);
        }
        return c;
    }();
    return classes;
}

bool disjoint(AxisPair a, AxisPair b) {
    return a.first != b.first && a.first != b.second && a.second != b.first && a.second != b.second;
}

// Orbit count of items under the group by canonicalisation: the smallest image.
template <typename Item, typename Act, typename Canon>
int count_orbits(const std::vector<Item>& items, Act act, Canon canon) {
    std::set<Item> reps;
    for (const Item& it : items) {
        Item best = canon(it);
        for (const auto& g : dihedral_group()) best = std::min(best, canon(act(g, it)));
        reps.insert(best);
    }
    return static_cast<int>(reps.size());
}

}  // namespace

int axis_pair_class(AxisPair pair) {
    const auto& c = pair_classes().class_of;
    const auto it = c.find(sorted_pair(pair.first, pair.second));
    if (it == c.end()) throw Error("axis pair must name two distinct axes in [0, 8)");
    return it->second;
}

const std::vector<AxisPair>& task2_cases() { return pair_classes().representatives; }

Task3OrbitCounts task3_orbit_counts() {
    using Config = std::pair<AxisPair, AxisPair>;  // (red, blue)
    const auto act = [](const AxisPermutation& g, const Config& c) {
        return Config{apply(g, c.first), apply(g, c.second)};
    };
    const auto ordered = [](const Config& c) { return c; };
    const auto unordered = [](const Config& c) { return std::min(c, Config{c.second, c.first}); };
    const auto shares_axis = [](AxisPair a, AxisPair b) { return !disjoint(a, b); };

    std::vector<Config> distinct, shared;
    std::vector<AxisPair> multi;  // pairs that may repeat an axis
    for (int a = 0; a < kAxisCount; ++a)
        for (int b = a; b < kAxisCount; ++b) multi.emplace_back(a, b);
    for (const auto& r : multi)
        for (const auto& b : multi) {
            if (shares_axis(r, b)) continue;
            shared.emplace_back(r, b);
            if (r.first != r.second && b.first != b.second) distinct.emplace_back(r, b);
        }
    return {count_orbits(distinct, act, ordered), count_orbits(distinct, act, unordered),
            count_orbits(shared, act, ordered), count_orbits(shared, act, unordered)};
}

Task3Case task3_case(int case_id) {
    if (case_id < 0 || case_id >= kTask3CaseCount) throw Error("task-3 case id out of range");
    const int n = static_cast<int>(task2_cases().size());
    return {case_id / n, case_id % n};
}

std::vector<std::pair<AxisPair, AxisPair>> task3_placements(int case_id) {
    const Task3Case c = task3_case(case_id);
    std::vector<std::pair<AxisPair, AxisPair>> out;
    const auto pairs = all_pairs();
    for (const auto& r : pairs) {
        if (axis_pair_class(r) != c.red_class) continue;
        for (const auto& b : pairs)
            if (axis_pair_class(b) == c.blue_class && disjoint(r, b)) out.emplace_back(r, b);
    }
    return out;
}

Task3Plan make_task3_plan(std::uint64_t seed, int participants) {
    constexpr int per_block = kTask3CaseCount / kTask3CasesPerParticipant;
    if (participants <= 0 || participants % per_block != 0) {
        throw Error("task-3 plan infeasible: " + std::to_string(participants) + " participants x " +
                    std::to_string(kTask3CasesPerParticipant) + " cases cannot cover " +
                    std::to_string(kTask3CaseCount) + " cases evenly; use a multiple of " +
                    std::to_string(per_block) + " participants");
    }
    Task3Plan plan(static_cast<std::size_t>(participants));
    for (int block = 0; block < participants / per_block; ++block) {
        std::vector<int> order(kTask3CaseCount);
        for (int i = 0; i < kTask3CaseCount; ++i) order[static_cast<std::size_t>(i)] = i;
        Rng rng(seed, "task3/plan/block" + std::to_string(block));
        rng.shuffle(order);
        for (int k = 0; k < per_block; ++k) {
            auto& row = plan[static_cast<std::size_t>(block * per_block + k)];
            for (int j = 0; j < kTask3CasesPerParticipant; ++j)
                row[static_cast<std::size_t>(j)] = order[static_cast<std::size_t>(k * kTask3CasesPerParticipant + j)];
        }
    }
    return plan;
}

// ---------------------------------------------------------------------------
// Trial generation

namespace {

std::string participant_path(Task task, int participant) {
    return "task" + std::to_string(static_cast<int>(task)) + "/participant" + std::to_string(participant);
}

std::string trial_id(Task task, int participant, int index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "T%d-P%02d-%02d", static_cast<int>(task), participant, index);
    return buf;
}

void finalize(std::vector<Trial>& trials, Task task, int participant, std::uint64_t seed) {
    Rng order(seed, participant_path(task, participant) + "/order");
    order.shuffle(trials);
    for (std::size_t i = 0; i < trials.size(); ++i) {
        trials[i].index = static_cast<int>(i);
        trials[i].id = trial_id(task, participant, static_cast<int>(i));
    }
}

Vec2d point_on_axis(const Scened& scene, int axis, double frac) {
    const auto a = extreme_axes(scene)[static_cast<std::size_t>(axis)];
    return a.origin + frac * axis_length(scene, a) * a.direction;
}

double draw_axis_fraction(Rng& rng, const ExperimentLayout& layout) {
    return rng.uniform(layout.axis_margin, 1.0 - layout.axis_margin);
}

Trial base_trial(Task task, int participant, BorderMode border, Rng& rng, const ExperimentLayout& layout,
                 bool full_extent) {
    Trial t;
    t.task = task;
    t.participant = participant;
    t.border_mode = border;
    t.seed_path = rng.path();
    ExtentDraw draw;
    if (full_extent) draw.extent = layout.full_extent;
    else draw = gen_extents(rng, layout.full_extent);
    t.reference_side = draw.reference_side;
    t.scene = layout.scene_for(layout.data_space_for(draw.extent));
    return t;
}

bool task1_separated(const Trial& t, const ExperimentLayout& layout) {
    const auto band = trial_intrusion(t, layout);
    const Vec2d& p = t.points.front().pos;
    const auto cue_o = project(t.scene, band, Strategy::orthographic, p);
    const auto cue_r = project(t.scene, band, Strategy::radial, p);
    if (!((cue_o.screen_pos - cue_r.screen_pos).norm() > layout.min_separation_px)) return false;
    const Retrace r = retrace_task1(t, layout);
    return (r.ortho - r.radial).norm() >= layout.min_separation_px;
}

double ground_truth_gap(const Trial& t) {
    const auto& vp = t.scene.viewport;
    if (t.task == Task::t2) {
        return std::abs(distance_to_rect(vp, t.points[0].pos) - distance_to_rect(vp, t.points[1].pos));
    }
    return std::abs((t.points[0].pos - t.points[1].pos).norm() - (t.points[2].pos - t.points[3].pos).norm());
}

[[noreturn]] void give_up(const Trial& t) {
    throw Error("trial generation exhausted its attempts for " + t.seed_path);
}

}  // namespace

std::vector<Trial> gen_task1(std::uint64_t seed, int participant, const ExperimentLayout& layout) {
    std::vector<Trial> trials;
    for (BorderMode border : {BorderMode::fixed, BorderMode::adaptive}) {
        for (HubMode hub : {HubMode::fixed, HubMode::adaptive}) {
            for (int axis = 0; axis < kAxisCount; ++axis) {
                Rng rng(seed, participant_path(Task::t1, participant) + "/border-" + std::string(to_string(border)) +
                                  "/hub-" + std::string(to_string(hub)) + "/axis" + std::to_string(axis));
                const bool full = border == BorderMode::fixed && hub == HubMode::fixed;
                Trial t = base_trial(Task::t1, participant, border, rng, layout, full);
                t.hub_mode = hub;
                t.case_id = axis;
                t.points.push_back({Vec2d::Zero(), Color::red, axis});
                int attempt = 0;
                do {
                    if (attempt++ == layout.max_attempts) give_up(t);
                    t.points[0].pos = point_on_axis(t.scene, axis, draw_axis_fraction(rng, layout));
                } while (!task1_separated(t, layout));
                trials.push_back(std::move(t));
            }
        }
    }
    finalize(trials, Task::t1, participant, seed);
    return trials;
}

std::vector<Trial> gen_task2(std::uint64_t seed, int participant, const ExperimentLayout& layout) {
    std::vector<Trial> trials;
    const auto& cases = task2_cases();
    const double margin = layout.ground_truth_margin * std::min(layout.viewport.width(), layout.viewport.height());
    for (BorderMode border : {BorderMode::fixed, BorderMode::adaptive}) {
        for (std::size_t c = 0; c < cases.size(); ++c) {
            for (int rep = 0; rep < 2; ++rep) {
                Rng rng(seed, participant_path(Task::t2, participant) + "/border-" + std::string(to_string(border)) +
                                  "/case" + std::to_string(c) + "/rep" + std::to_string(rep));
                Trial t = base_trial(Task::t2, participant, border, rng, layout, false);
                t.case_id = static_cast<int>(c);
                const auto& g = dihedral_group()[rng.below(8)];
                AxisPair axes = apply(g, cases[c]);
                if (rng.coin()) std::swap(axes.first, axes.second);
                t.points = {{Vec2d::Zero(), Color::red, axes.first}, {Vec2d::Zero(), Color::blue, axes.second}};
                int attempt = 0;
                do {
                    if (attempt++ == layout.max_attempts) give_up(t);
                    for (auto& pt : t.points) pt.pos = point_on_axis(t.scene, pt.axis, draw_axis_fraction(rng, layout));
                } while (!(ground_truth_gap(t) >= margin));
                trials.push_back(std::move(t));
            }
        }
    }
    finalize(trials, Task::t2, participant, seed);
    return trials;
}

std::vector<Trial> gen_task3(std::uint64_t seed, int participant, const Task3Plan& plan,
                             const ExperimentLayout& layout) {
    if (participant < 0 || static_cast<std::size_t>(participant) >= plan.size())
        throw Error("participant " + std::to_string(participant) + " is not covered by the task-3 plan");
    std::vector<Trial> trials;
    const double margin = layout.ground_truth_margin * std::min(layout.viewport.width(), layout.viewport.height());
    for (BorderMode border : {BorderMode::fixed, BorderMode::adaptive}) {
        for (int case_id : plan[static_cast<std::size_t>(participant)]) {
            const auto placements = task3_placements(case_id);
            for (int rep = 0; rep < 2; ++rep) {
                Rng rng(seed, participant_path(Task::t3, participant) + "/border-" + std::string(to_string(border)) +
                                  "/case" + std::to_string(case_id) + "/rep" + std::to_string(rep));
                Trial t = base_trial(Task::t3, participant, border, rng, layout, false);
                t.case_id = case_id;
                const auto& [red, blue] = placements[rng.below(static_cast<std::uint32_t>(placements.size()))];
                t.points = {{Vec2d::Zero(), Color::red, red.first},
                            {Vec2d::Zero(), Color::red, red.second},
                            {Vec2d::Zero(), Color::blue, blue.first},
                            {Vec2d::Zero(), Color::blue, blue.second}};
                int attempt = 0;
                do {
                    if (attempt++ == layout.max_attempts) give_up(t);
                    for (auto& pt : t.points) pt.pos = point_on_axis(t.scene, pt.axis, draw_axis_fraction(rng, layout));
                } while (!(ground_truth_gap(t) >= margin));
                trials.push_back(std::move(t));
            }
        }
    }
    finalize(trials, Task::t3, participant, seed);
    return trials;
}

std::vector<Trial> gen_trials(Task task, std::uint64_t seed, int participants, const ExperimentLayout& layout) {
    if (participants <= 0) throw Error("participants must be positive");
    std::vector<Trial> all;
    std::optional<Task3Plan> plan;
    if (task == Task::t3) plan = make_task3_plan(seed, participants);
    for (int p = 0; p < participants; ++p) {
        auto trials = task == Task::t1   ? gen_task1(seed, p, layout)
                      : task == Task::t2 ? gen_task2(seed, p, layout)
                                         : gen_task3(seed, p, *plan, layout);
        all.insert(all.end(), std::make_move_iterator(trials.begin()), std::make_move_iterator(trials.end()));
    }
    return all;
}

// ---------------------------------------------------------------------------
// Ground truth and classification

double distance_to_rect(const Rectd& rect, const Vec2d& p) {
    const Vec2d nearest = p.cwiseMax(rect.min).cwiseMin(rect.max);
    return (p - nearest).norm();
}

Color ground_truth(const Trial& t) {
    const auto& vp = t.scene.viewport;
    if (t.task == Task::t2) {
        if (t.points.size() != 2) throw Error("task-2 trial must carry two points");
        const double d0 = distance_to_rect(vp, t.points[0].pos);
        const double d1 = distance_to_rect(vp, t.points[1].pos);
        if (d0 == d1) throw Error("task-2 trial has tied distances");
        return d0 > d1 ? t.points[0].color : t.points[1].color;
    }
    if (t.task == Task::t3) {
        if (t.points.size() != 4) throw Error("task-3 trial must carry four points");
        const double red = (t.points[0].pos - t.points[1].pos).norm();
        const double blue = (t.points[2].pos - t.points[3].pos).norm();
        if (red == blue) throw Error("task-3 trial has tied pair distances");
        return red < blue ? t.points[0].color : t.points[2].color;
    }
    throw Error("ground truth is defined for tasks 2 and 3 only");
}

BorderIntrusiond trial_intrusion(const Trial& t, const ExperimentLayout& layout) {
    return compute_intrusion(t.scene, layout.border(t.border_mode));
}

Retrace retrace_task1(const Trial& t, const ExperimentLayout& layout) {
    if (t.task != Task::t1 || t.points.size() != 1) throw Error("retrace needs a task-1 trial");
    const auto band = trial_intrusion(t, layout);
    Retrace r;
    r.shown = project(t.scene, band, layout.display_strategy, t.points.front().pos);
    const std::optional<RegionTag> hint =
        layout.display_strategy == Strategy::orthographic ? std::optional<RegionTag>(r.shown.region) : std::nullopt;
    r.ortho = world_to_screen(t.scene, unproject(t.scene, band, Strategy::orthographic, r.shown.screen_pos, hint));
    r.radial = world_to_screen(t.scene, unproject(t.scene, band, Strategy::radial, r.shown.screen_pos));
    return r;
}

Rectd pointing_hub(const Trial& t, const ExperimentLayout& layout) {
    if (t.task != Task::t1 || !t.hub_mode) throw Error("pointing hub is defined for task-1 trials only");
    const Rectd world = *t.hub_mode == HubMode::fixed ? layout.full_data_space() : t.scene.data_space;
    return Rectd(world_to_screen(t.scene, world.min), world_to_screen(t.scene, world.max));
}

Classification classify_t1(const Trial& t, const Response& response, const ExperimentLayout& layout) {
    if (!response.click) throw Error("task-1 response " + response.trial_id + " has no click");
    const Vec2d& click = *response.click;
    // Retraces reaching the data bound may overshoot it by a rounding error.
    constexpr double kHubSlackPx = 1e-6;
    const Rectd hub = pointing_hub(t, layout);
    const Rectd padded(hub.min.array() - kHubSlackPx, hub.max.array() + kHubSlackPx);
    if (!click.allFinite() || !padded.contains(click) ||
        classify_region(t.scene, screen_to_world(t.scene, click)) == RegionTag::inside)
        throw Error("click of response " + response.trial_id + " lies outside the pointing hub");

    const Retrace r = retrace_task1(t, layout);
    Classification c;
    c.dist_ortho_px = (click - r.ortho).norm();
    c.dist_radial_px = (click - r.radial).norm();
    const double scale = std::max({1.0, c.dist_ortho_px, c.dist_radial_px});
    c.tie = std::abs(c.dist_ortho_px - c.dist_radial_px) <= 1e-9 * scale;
    c.chosen = c.tie || c.dist_ortho_px < c.dist_radial_px ? Strategy::orthographic : Strategy::radial;
    return c;
}

bool is_correct(const Trial& t, const Response& response) {
    if (!response.choice) throw Error("response " + response.trial_id + " has no colour choice");
    return *response.choice == ground_truth(t);
}

}  // namespace offscreen
