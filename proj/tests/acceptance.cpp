// Acceptance gate: one PASS/FAIL line per top-level criterion. Exit status is
// the number of failed criteria (capped at 1).

#include "offscreen/analyze.hpp"
#include "offscreen/extreme_cases.hpp"
#include "offscreen/io.hpp"
#include "offscreen/scagnostics.hpp"
#include "offscreen/scenario.hpp"
#include "offscreen/service.hpp"
#include "test_support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace {

using namespace offscreen;

struct Outcome {
    bool ok;
    std::string detail;
};

int failures = 0;

void criterion(const char* name, const std::function<Outcome()>& check) {
    Outcome o;
    try {
        o = check();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.ok) ++failures;
    std::printf("%s  %-28s %s\n", o.ok ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

Outcome deviation_property() {
    const auto start = std::chrono::steady_clock::now();
    const auto rows = deviation_table(gen_archetypes(1));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    int ortho_cells = 0;
    double worst = 0;
    std::set<int> moved;
    for (const auto& r : rows) {
        if (r.strategy == Strategy::orthographic) {
            worst = std::max(worst, r.deviation);
            ++ortho_cells;
        } else if (r.deviation > 0.01) {
            moved.insert(r.dataset_id);
        }
    }
    // Every orthographic row is checked, one per (dataset, region, measure).
    const bool ok = rows.size() == 648 && ortho_cells == 324 && worst < 1e-9 &&
                    moved.size() >= 4 && secs < 30;
    return {ok, fmt("rows=648, 324 orthographic, max_ortho=%.3g radial_moved=%.0f/12 time=%.2fs", worst, static_cast<double>(moved.size()), secs)};
}

Outcome border_suite() {
    const auto wide = [](const Rectd& ds) { return Scened{ds, Rectd(0, 0, 1920, 1080), 1920, 1080}; };
    double err = 0;
    const auto half = compute_intrusion(wide(Rectd(-960, 0, 2880, 1080)), BorderConfigd{});
    err = std::max({err, std::abs(half.right - 17.5), std::abs(half.left - 17.5), std::abs(half.top), std::abs(half.bottom)});
    const auto clamped = compute_intrusion(wide(Rectd(-5000, -5000, 9000, 9000)), BorderConfigd{});
    err = std::max({err, std::abs(clamped.right - 35), std::abs(clamped.top - 35)});
    const auto contact = compute_intrusion(wide(Rectd(0, 0, 1920, 1080)), BorderConfigd{});
    err = std::max({err, std::abs(contact.right), std::abs(contact.left)});
    for (double z : {0.1, 0.25, 0.5, 0.75, 1.0}) {
        BorderConfigd cfg;
        cfg.zoom = z;
        const auto b = compute_intrusion(wide(Rectd(-1920, -1080, 3840, 2160)), cfg);
        err = std::max(err, std::abs(b.right - 35 * z));
        cfg.mode = BorderMode::fixed;
        err = std::max(err, std::abs(compute_intrusion(wide(Rectd(-1, -1, 1921, 1081)), cfg).top - 35 * z));
    }
    return {err < 1e-9, fmt("max |error| = %.3g px", err)};
}

Outcome midpoint_invariance() {
    Rng rng(29, "acceptance/midpoint");
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        const Scened s = testing::random_scene(rng);
        const auto& vp = s.viewport;
        const auto& ds = s.data_space;
        const std::array<Vec2d, 4> mids{Vec2d((vp.max.x() + ds.max.x()) / 2, vp.center().y()),
                                        Vec2d((vp.min.x() + ds.min.x()) / 2, vp.center().y()),
                                        Vec2d(vp.center().x(), (vp.max.y() + ds.max.y()) / 2),
                                        Vec2d(vp.center().x(), (vp.min.y() + ds.min.y()) / 2)};
        for (BorderMode m : {BorderMode::fixed, BorderMode::adaptive}) {
            const auto b = compute_intrusion(s, BorderConfigd{35, 1, 1, m});
            for (const Vec2d& p : mids)
                for (Strategy st : {Strategy::orthographic, Strategy::radial})
                    worst = std::max(worst, std::abs(project(s, b, st, p).t_depth - 0.5));
        }
    }
    return {worst < 1e-9, fmt("1000 scenes, max |t - 0.5| = %.3g", worst)};
}

Outcome round_trip() {
    Rng rng(23, "acceptance/roundtrip");
    double worst = 0;
    std::map<RegionTag, int> seen;
    for (int i = 0; i < 100000; ++i) {
        const Scened s = testing::random_scene(rng);
        const auto b = compute_intrusion(s, BorderConfigd{35, 1, 1, rng.coin() ? BorderMode::fixed : BorderMode::adaptive});
        const RegionTag r = kOffscreenRegions[static_cast<std::size_t>(i % 8)];
        const Vec2d p = testing::sample_in_region(rng, s, r);
        const Strategy st = rng.coin() ? Strategy::orthographic : Strategy::radial;
        const Vec2d back = unproject(s, b, st, project(s, b, st, p));
        worst = std::max(worst, (back - p).norm());
        ++seen[classify_region(s, p)];
    }
    return {worst < 1e-9 && seen.size() == 8, fmt("1e5 samples, %.0f regions, max error = %.3g", static_cast<double>(seen.size()), worst)};
}

Outcome identity_loci() {
    Rng rng(43, "acceptance/loci");
    double on_locus = 0;
    for (int i = 0; i < 1000; ++i) {
        const double size = rng.uniform(100, 3000);
        const double x0 = rng.uniform(-1000, 1000), y0 = rng.uniform(-1000, 1000);
        const double margin = rng.uniform(10, 3000);
        const Scened s{Rectd(x0 - margin, y0 - margin, x0 + size + margin, y0 + size + margin),
                       Rectd(x0, y0, x0 + size, y0 + size), 1000, 1000};
        const auto b = compute_intrusion(s, BorderConfigd{});
        const double d = rng.uniform(1e-3, 1) * margin;
        const Vec2d c = s.viewport.center();
        const double h = size / 2;
        for (int sx : {-1, 0, 1})
            for (int sy : {-1, 0, 1}) {
                if (sx == 0 && sy == 0) continue;
                const Vec2d p(c.x() + sx * (h + d), c.y() + sy * (h + d));
                const Vec2d o = project(s, b, Strategy::orthographic, p).screen_pos;
                const Vec2d r = project(s, b, Strategy::radial, p).screen_pos;
                on_locus = std::max(on_locus, (o - r).norm());
            }
    }
    const ExperimentLayout layout;
    double min_sep = std::numeric_limits<double>::infinity();
    std::size_t stimuli = 0;
    for (const auto& t : gen_trials(Task::t1, 1, 18, layout)) {
        const auto band = trial_intrusion(t, layout);
        const Vec2d o = project(t.scene, band, Strategy::orthographic, t.points[0].pos).screen_pos;
        const Vec2d r = project(t.scene, band, Strategy::radial, t.points[0].pos).screen_pos;
        min_sep = std::min(min_sep, (o - r).norm());
        ++stimuli;
    }
    return {on_locus < 1e-9 && min_sep > 1.0,
            fmt("max on-locus gap = %.3g px; min stimulus gap = %.3g px over %.0f stimuli", on_locus, min_sep,
                static_cast<double>(stimuli))};
}

Outcome alpha_suite() {
    const Scened s = testing::reference_scene();
    double zero = 0;
    for (double d : {1.0, 250.0, 999.0})
        for (const Vec2d& p : {Vec2d(1000 + d, 500), Vec2d(-d, 500), Vec2d(500, 1000 + d), Vec2d(500, -d),
                               Vec2d(1000 + d, 1000 + d), Vec2d(-d, -d), Vec2d(1000 + d, -d), Vec2d(-d, 1000 + d)})
            zero = std::max(zero, projection_angle(s, p).alpha);
    const double hand = std::abs(projection_angle(s, Vec2d(1500, 1000)).alpha - std::atan(0.5));
    Rng rng(59, "acceptance/alpha");
    int violations = 0;
    for (int i = 0; i < 10000; ++i) {
        const RegionTag r = std::array{RegionTag::left, RegionTag::right, RegionTag::top, RegionTag::bottom}[rng.below(4)];
        const Vec2d p = testing::sample_in_region(rng, s, r);
        const int along = region_offset(r).x() != 0 ? 1 : 0;
        Vec2d lo = p, hi = p;
        lo[along] = 0;
        hi[along] = 1000;
        const double edge = std::max(projection_angle(s, lo).alpha, projection_angle(s, hi).alpha);
        if (projection_angle(s, p).alpha > edge + 1e-12) ++violations;
    }
    return {zero < 1e-12 && hand < 1e-9 && violations == 0,
            fmt("max alpha on loci = %.3g; |alpha(1500,1000) - atan(0.5)| = %.3g; %.0f of 1e4 above transition", zero,
                hand, violations)};
}

Outcome trial_counts() {
    std::string detail;
    bool ok = true;
    const std::array<std::size_t, 3> per{32, 24, 24};
    for (Task task : {Task::t1, Task::t2, Task::t3}) {
        const auto trials = gen_trials(task, 1, 18);
        std::map<int, std::size_t> by_p;
        for (const auto& t : trials) ++by_p[t.participant];
        const std::size_t want = per[static_cast<std::size_t>(task) - 1];
        for (const auto& [p, n] : by_p) ok = ok && n == want;
        ok = ok && by_p.size() == 18 && trials.size() == 18 * want;
        std::ostringstream a, b;
        write_trials_jsonl(a, trials);
        write_trials_jsonl(b, gen_trials(task, 1, 18));
        ok = ok && fnv1a64(a.str()) == fnv1a64(b.str());
        detail += std::to_string(trials.size()) + "/";
    }
    detail.pop_back();
    ok = ok && task2_cases().size() == 6;
    std::map<int, int> cover;
    for (const auto& row : make_task3_plan(1, 18))
        for (int id : row) ++cover[id];
    bool three = cover.size() == 36;
    for (const auto& [id, n] : cover) three = three && n == 3;
    ok = ok && three;
    return {ok, "totals " + detail + ", task-2 orbits " + std::to_string(task2_cases().size()) +
                    ", task-3 coverage " + (three ? "3 per case" : "uneven") + ", checksums stable"};
}

Outcome closed_loop() {
    const ExperimentLayout layout;
    int n = 0, ortho = 0, radial = 0;
    for (const auto& t : gen_trials(Task::t1, 1, 18, layout)) {
        const auto rt = retrace_task1(t, layout);
        ortho += classify_t1(t, Response{t.id, t.participant, rt.ortho, std::nullopt, 1000}, layout).chosen == Strategy::orthographic;
        radial += classify_t1(t, Response{t.id, t.participant, rt.radial, std::nullopt, 1000}, layout).chosen == Strategy::radial;
        ++n;
    }
    return {ortho == n && radial == n,
            fmt("orthographic %.1f%%, radial %.1f%% of %.0f trials", 100.0 * ortho / n, 100.0 * radial / n, n)};
}

Outcome scagnostics_oracle() {
    std::ifstream in(std::string(OFFSCREEN_TEST_DATA_DIR) + "/scagnostics_reference.json");
    if (!in) return {false, "reference file missing"};
    const Json ref = Json::parse(in);
    const auto ds = gen_archetypes(1);
    if (ref["datasets"].size() != ds.size()) return {false, "dataset count differs"};
    double worst = 0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const auto& pts = ref["datasets"][i]["points"];
        if (pts.size() != static_cast<std::size_t>(ds[i].points.cols())) return {false, "point sets differ"};
        for (std::size_t k = 0; k < pts.size(); ++k)
            if (pts[k][0].get<double>() != ds[i].points(0, static_cast<Eigen::Index>(k)) ||
                pts[k][1].get<double>() != ds[i].points(1, static_cast<Eigen::Index>(k)))
                return {false, "point sets differ"};
        const auto m = compute_measures(ds[i].points);
        for (int k = 0; k < kMeasureCount; ++k)
            worst = std::max(worst, std::abs(m[k] - ref["datasets"][i]["expected"][static_cast<std::size_t>(k)].get<double>()));
    }
    return {worst <= 0.05, fmt("12 datasets x 9 measures, max |difference| = %.3g", worst)};
}

Outcome service_endpoints() {
    const auto log = std::filesystem::temp_directory_path() / "offscreen_acceptance_responses.csv";
    std::filesystem::remove(log);
    ServiceConfig cfg;
    cfg.response_log = log.string();
    Service svc(cfg);
    Json req = Json::parse(R"({"scene":{"data_space":[-960,0,2880,1080],"viewport":[0,0,1920,1080],"screen":[1920,1080]},
                               "points":[{"x":2400,"y":300},{"x":-300,"y":900}]})");
    const Reply a = svc.frame(req.dump());
    const Reply b = svc.frame(req.dump());
    req["strategy"] = "radial";
    const Reply c = svc.frame(req.dump());
    const Json ja = Json::parse(a.body), jc = Json::parse(c.body);
    bool ok = a.status == 200 && a.body == b.body && ja["intrusion"]["right"].get<double>() == 17.5 &&
              ja["intrusion"] == jc["intrusion"] && ja["cues"] != jc["cues"];

    const Json trials_json = Json::parse(svc.trials(1, 0).body);
    std::vector<Trial> trials;
    for (const auto& j : trials_json) trials.push_back(trial_from_json(j));
    std::vector<Strategy> online;
    for (std::size_t i = 0; i < trials.size(); ++i) {
        const auto rt = retrace_task1(trials[i]);
        const Vec2d click = i % 3 == 0 ? rt.radial : rt.ortho;
        const Json body{{"trial_id", trials[i].id}, {"participant", 0}, {"click_x", click.x()}, {"click_y", click.y()}, {"elapsed_ms", 900}};
        ok = ok && svc.post_response(body.dump()).status == 201;
        online.push_back(classify_t1(trials[i], response_from_json(body)).chosen);
    }
    std::ifstream in(log);
    const auto scored = score_responses(trials, read_responses_csv(in));
    ok = ok && scored.size() == trials.size();
    for (std::size_t i = 0; ok && i < scored.size(); ++i) ok = scored[i].classification->chosen == online[i];
    const Json d = Json::parse(svc.dataset(1).body);
    ok = ok && d["points"].size() == static_cast<std::size_t>(gen_archetypes(1)[0].points.cols());
    std::filesystem::remove(log);
    return {ok, "/frame 17.5 px and byte-stable, /trials " + std::to_string(trials.size()) + ", /responses -> analyze " +
                    std::to_string(scored.size()) + " matched, /datasets ok"};
}

}  // namespace

int main() {
    criterion("deviation-table", deviation_property);
    criterion("border-equation", border_suite);
    criterion("midpoint-invariance", midpoint_invariance);
    criterion("round-trip", round_trip);
    criterion("identity-loci", identity_loci);
    criterion("alpha-suite", alpha_suite);
    criterion("trial-counts", trial_counts);
    criterion("closed-loop", closed_loop);
    criterion("scagnostics-oracle", scagnostics_oracle);
    criterion("service-endpoints", service_endpoints);
    std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
