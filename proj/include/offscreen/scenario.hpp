#ifndef OFFSCREEN_SCENARIO_HPP
#define OFFSCREEN_SCENARIO_HPP

#include "offscreen/border.hpp"
#include "offscreen/extreme_cases.hpp"
#include "offscreen/geometry.hpp"
#include "offscreen/projection.hpp"
#include "offscreen/rng.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace offscreen {

enum class Task { t1 = 1, t2 = 2, t3 = 3 };
enum class HubMode { fixed, adaptive };
enum class Color { red, blue };

std::string_view to_string(HubMode m);
HubMode hub_mode_from_string(std::string_view name);
std::string_view to_string(Color c);
Color color_from_string(std::string_view name);
Task task_from_int(int task);

/// Fixed apparatus shared by every trial: the viewport, its pixel size, and
/// the largest off-screen extent each side can take.
struct ExperimentLayout {
    Rectd viewport{0, 0, 1920, 1080};
    double screen_w{1920};
    double screen_h{1080};
    /// World extent of a fully extended side (top, left, bottom, right).
    BorderIntrusiond full_extent{1080, 1920, 1080, 1920};
    double max_intrusion_px{kDefaultMaxIntrusionPx};
    /// Fraction of each axis segment excluded at both ends.
    double axis_margin{0.05};
    /// Minimum ground-truth separation as a fraction of the smaller viewport side.
    double ground_truth_margin{0.02};
    /// Minimum pixel distance between the two strategies' cues and retraces.
    double min_separation_px{1.0};
    /// Strategy used to draw the Task-1 stimulus cue.
    Strategy display_strategy{Strategy::orthographic};
    int max_attempts{1000};

    Rectd full_data_space() const;
    Rectd data_space_for(const BorderIntrusiond& extent) const;
    Scened scene_for(const Rectd& data_space) const;
    BorderConfigd border(BorderMode mode) const;
};

/// Off-screen extent per side for one trial.
struct ExtentDraw {
    BorderIntrusiond extent;
    /// The fully extended reference side; empty when every side is full.
    std::optional<RegionTag> reference_side;
};

struct TrialPoint {
    Vec2d pos{Vec2d::Zero()};
    Color color{Color::red};
    int axis{0};
};

struct Trial {
    std::string id;
    Task task{Task::t1};
    int participant{0};
    int index{0};
    BorderMode border_mode{BorderMode::fixed};
    std::optional<HubMode> hub_mode;  // Task 1 only
    Scened scene;
    std::optional<RegionTag> reference_side;
    std::vector<TrialPoint> points;
    int case_id{0};
    std::string seed_path;
};

struct Response {
    std::string trial_id;
    int participant{0};
    std::optional<Vec2d> click;    // Task 1, screen pixels of the trial scene
    std::optional<Color> choice;   // Tasks 2 and 3
    double elapsed_ms{0};
};

struct Classification {
    double dist_ortho_px{0};
    double dist_radial_px{0};
    Strategy chosen{Strategy::orthographic};
    bool tie{false};
};

/// The cue a Task-1 participant sees and where each strategy retraces it to,
/// all in screen pixels of the trial scene.
struct Retrace {
    ProjectedCued shown;
    Vec2d ortho{Vec2d::Zero()};
    Vec2d radial{Vec2d::Zero()};
};

/// One side drawn uniformly as the fully extended reference; the other three
/// uniform in [25%, 75%] of their full extent.
ExtentDraw gen_extents(Rng& rng, const BorderIntrusiond& full_extent);

/// Unordered pair of distinct axes.
using AxisPair = std::pair<int, int>;

/// The 28 unordered axis pairs grouped into orbits of the square's dihedral
/// group. Returns the orbit id of every pair, ids assigned in order of each
/// orbit's lexicographically smallest member.
int axis_pair_class(AxisPair pair);
/// Smallest member of each axis-pair orbit; these are the Task-2 cases.
const std::vector<AxisPair>& task2_cases();

/// Orbit count of colour-labelled axis configurations under the dihedral
/// group, by brute force. Used to document the Task-3 case derivation.
struct Task3OrbitCounts {
    int distinct_axes_colors_ordered;
    int distinct_axes_colors_unordered;
    int shared_within_color_ordered;
    int shared_within_color_unordered;
};
Task3OrbitCounts task3_orbit_counts();

inline constexpr int kTask3CaseCount = 36;
inline constexpr int kTask3CasesPerParticipant = 6;

/// Task-3 case: red pair class x blue pair class.
struct Task3Case {
    int red_class;
    int blue_class;
};
Task3Case task3_case(int case_id);
/// Every concrete (red pair, blue pair) placement of a case with no shared axis.
std::vector<std::pair<AxisPair, AxisPair>> task3_placements(int case_id);

/// Per-participant list of Task-3 cases. Every case appears equally often.
using Task3Plan = std::vector<std::array<int, kTask3CasesPerParticipant>>;
Task3Plan make_task3_plan(std::uint64_t seed, int participants);

std::vector<Trial> gen_task1(std::uint64_t seed, int participant, const ExperimentLayout& layout = {});
std::vector<Trial> gen_task2(std::uint64_t seed, int participant, const ExperimentLayout& layout = {});
std::vector<Trial> gen_task3(std::uint64_t seed, int participant, const Task3Plan& plan,
                             const ExperimentLayout& layout = {});

/// All trials of one task for participants [0, participants).
std::vector<Trial> gen_trials(Task task, std::uint64_t seed, int participants, const ExperimentLayout& layout = {});

/// Minimum world distance from `p` to the viewport rectangle.
double distance_to_rect(const Rectd& rect, const Vec2d& p);

/// Task 2: colour of the point farther from the viewport. Task 3: colour of the
/// closer pair.
Color ground_truth(const Trial& trial);

BorderIntrusiond trial_intrusion(const Trial& trial, const ExperimentLayout& layout = {});
Retrace retrace_task1(const Trial& trial, const ExperimentLayout& layout = {});

/// Hub rectangle of a Task-1 trial in screen pixels of its scene.
Rectd pointing_hub(const Trial& trial, const ExperimentLayout& layout = {});

Classification classify_t1(const Trial& trial, const Response& response, const ExperimentLayout& layout = {});
bool is_correct(const Trial& trial, const Response& response);

}  // namespace offscreen

#endif  // OFFSCREEN_SCENARIO_HPP
