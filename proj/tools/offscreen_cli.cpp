// Command-line front end: trial generation, scagnostics evaluation, analysis
// and the local JSON service.

#include "offscreen/analyze.hpp"
#include "offscreen/extreme_cases.hpp"
#include "offscreen/io.hpp"
#include "offscreen/scagnostics.hpp"
#include "offscreen/scenario.hpp"
#include "offscreen/service.hpp"

#include <CLI11.hpp>
#include <httplib.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace offscreen;

constexpr int kOk = 0;
constexpr int kAssertionFailed = 1;
constexpr int kUsageOrIo = 2;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    out.close();
    if (!out) throw IoError("write to '" + path + "' failed");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

struct GenTrialsArgs {
    int task{1};
    int participants{18};
    std::uint64_t seed{1};
    std::string out;
};

int gen_trials_cmd(const GenTrialsArgs& a) {
    const Task task = task_from_int(a.task);
    const auto trials = gen_trials(task, a.seed, a.participants);
    std::ostringstream ss;
    write_trials_jsonl(ss, trials);
    const std::string content = ss.str();
    write_file(a.out, content);
    std::cout << trials.size() << " trials for task " << a.task << " (" << trials.size() / static_cast<std::size_t>(a.participants)
              << " per participant, " << a.participants << " participants) -> " << a.out << "\n"
              << "fnv1a64 " << hex64(fnv1a64(content)) << "\n";
    return kOk;
}

struct EvalArgs {
    std::uint64_t seed{1};
    std::string out;
    std::string strategy{"both"};
    std::string border{"adaptive"};
    double max_intrusion_px{kDefaultMaxIntrusionPx};
};

int eval_scagnostics_cmd(const EvalArgs& a) {
    DeviationConfig cfg;
    cfg.border.mode = border_mode_from_string(a.border);
    cfg.border.max_intrusion_px = a.max_intrusion_px;
    auto rows = deviation_table(gen_archetypes(a.seed), cfg);
    if (a.strategy != "both") {
        const Strategy keep = strategy_from_string(a.strategy);
        std::erase_if(rows, [&](const DeviationRow& r) { return r.strategy != keep; });
    }
    std::ostringstream ss;
    ss << "dataset,strategy,region,measure,deviation\n";
    double worst_ortho = 0;
    std::map<int, bool> radial_moved;
    for (const auto& r : rows) {
        ss << r.dataset << ',' << to_string(r.strategy) << ',' << to_string(r.region) << ',' << measure_name(r.measure)
           << ',' << format_double(r.deviation) << '\n';
        if (r.strategy == Strategy::orthographic) worst_ortho = std::max(worst_ortho, r.deviation);
        else radial_moved[r.dataset_id] = radial_moved[r.dataset_id] || r.deviation > 0.01;
    }
    write_file(a.out, ss.str());
    int moved = 0;
    for (const auto& [id, m] : radial_moved) moved += m;
    std::cout << rows.size() << " rows -> " << a.out << "\n"
              << "max orthographic deviation " << worst_ortho << "\n"
              << "datasets with a radial deviation > 0.01: " << moved << " of " << radial_moved.size() << "\n";
    if (!(worst_ortho < 1e-9)) {
        std::cerr << "error: orthographic deviation " << worst_ortho << " is not below 1e-9\n";
        return kAssertionFailed;
    }
    return kOk;
}

struct AnalyzeArgs {
    std::vector<std::string> trials;
    std::string responses;
    std::string out;
    std::string details;
};

int analyze_cmd(const AnalyzeArgs& a) {
    std::vector<Trial> trials;
    for (const auto& path : a.trials) {
        std::istringstream in(read_file(path));
        auto t = read_trials_jsonl(in);
        trials.insert(trials.end(), t.begin(), t.end());
    }
    std::istringstream log(read_file(a.responses));
    const auto responses = read_responses_csv(log);
    const auto scored = score_responses(trials, responses);
    const auto rows = summarize(scored);
    std::ostringstream ss;
    write_summary_csv(ss, rows);
    if (a.out.empty()) std::cout << ss.str();
    else write_file(a.out, ss.str());
    if (!a.details.empty()) {
        std::ostringstream ds;
        write_scored_csv(ds, scored);
        write_file(a.details, ds.str());
    }
    std::cerr << responses.size() << " responses, " << rows.size() << " conditions\n";
    return kOk;
}

struct AlphaMapArgs {
    std::string out;
    double step{25};
};

int alpha_map_cmd(const AlphaMapArgs& a) {
    if (!(a.step > 0)) throw Error("--step must be positive");
    const Scened s{Rectd(-1000, -1000, 2000, 2000), Rectd(0, 0, 1000, 1000), 1000, 1000};
    std::ostringstream ss;
    ss << "x,y,region,alpha\n";
    std::size_t n = 0;
    for (double y = s.data_space.min.y(); y <= s.data_space.max.y(); y += a.step) {
        for (double x = s.data_space.min.x(); x <= s.data_space.max.x(); x += a.step) {
            const Vec2d p(x, y);
            if (classify_region(s, p) == RegionTag::inside) continue;
            const auto r = projection_angle(s, p);
            ss << format_double(x) << ',' << format_double(y) << ',' << to_string(r.region) << ','
               << format_double(r.alpha) << '\n';
            ++n;
        }
    }
    write_file(a.out, ss.str());
    std::cout << n << " samples -> " << a.out << "\n";
    return kOk;
}

int datasets_cmd(std::uint64_t seed, const std::string& out) {
    Json arr = Json::array();
    for (const auto& d : gen_archetypes(seed)) {
        Json pts = Json::array();
        for (Eigen::Index i = 0; i < d.points.cols(); ++i) pts.push_back({d.points(0, i), d.points(1, i)});
        arr.push_back({{"id", d.id}, {"name", d.name}, {"points", pts}});
    }
    write_file(out, arr.dump() + "\n");
    std::cout << arr.size() << " datasets -> " << out << "\n";
    return kOk;
}

struct ServeArgs {
    std::string host{"127.0.0.1"};
    int port{8080};
    std::uint64_t seed{1};
    int participants{18};
    std::string log{"responses.csv"};
};

int serve_cmd(const ServeArgs& a) {
    ServiceConfig cfg;
    cfg.seed = a.seed;
    cfg.participants = a.participants;
    cfg.response_log = a.log;
    Service service(cfg);
    httplib::Server server;
    service.mount(server);
    std::cerr << "listening on http://" << a.host << ":" << a.port << "\n";
    if (!server.listen(a.host, a.port)) {
        std::cerr << "error: cannot listen on " << a.host << ":" << a.port << "\n";
        return kUsageOrIo;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Off-screen projection toolkit"};
    app.require_subcommand(1);

    GenTrialsArgs gen;
    auto* gen_cmd = app.add_subcommand("gen-trials", "Generate the trials of one task as JSON lines");
    gen_cmd->add_option("--task", gen.task, "Task number")->required()->check(CLI::Range(1, 3));
    gen_cmd->add_option("--participants", gen.participants, "Participant count")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--seed", gen.seed, "Master seed");
    gen_cmd->add_option("--out", gen.out, "Output file")->required();

    EvalArgs eval;
    auto* eval_cmd = app.add_subcommand("eval-scagnostics", "Deviation of the nine measures under projection");
    eval_cmd->add_option("--seed", eval.seed, "Archetype seed");
    eval_cmd->add_option("--out", eval.out, "Output CSV")->required();
    eval_cmd->add_option("--strategy", eval.strategy, "orthographic, radial or both")
        ->check(CLI::IsMember({"orthographic", "radial", "both"}));
    eval_cmd->add_option("--border", eval.border, "Border mode")->check(CLI::IsMember({"fixed", "adaptive"}));
    eval_cmd->add_option("--max-intrusion", eval.max_intrusion_px, "Border size in pixels")->check(CLI::PositiveNumber);

    AnalyzeArgs an;
    auto* an_cmd = app.add_subcommand("analyze", "Summarize a response log per condition");
    an_cmd->add_option("--trials", an.trials, "Trial files (JSON lines)")->required();
    an_cmd->add_option("--responses", an.responses, "Response log CSV")->required();
    an_cmd->add_option("--out", an.out, "Summary CSV (stdout if omitted)");
    an_cmd->add_option("--details", an.details, "Per-response CSV");

    AlphaMapArgs am;
    auto* am_cmd = app.add_subcommand("alpha-map", "Sample the projection angle over the reference scene");
    am_cmd->add_option("--out", am.out, "Output CSV")->required();
    am_cmd->add_option("--step", am.step, "Grid spacing in world units");

    std::uint64_t ds_seed = 1;
    std::string ds_out;
    auto* ds_cmd = app.add_subcommand("datasets", "Export the archetype point sets as JSON");
    ds_cmd->add_option("--seed", ds_seed, "Archetype seed");
    ds_cmd->add_option("--out", ds_out, "Output file")->required();

    ServeArgs sv;
    auto* sv_cmd = app.add_subcommand("serve", "Run the local JSON service");
    sv_cmd->add_option("--host", sv.host, "Bind address");
    sv_cmd->add_option("--port", sv.port, "Port")->check(CLI::Range(0, 65535));
    sv_cmd->add_option("--seed", sv.seed, "Master seed for trials and datasets");
    sv_cmd->add_option("--participants", sv.participants, "Participant count")->check(CLI::PositiveNumber);
    sv_cmd->add_option("--log", sv.log, "Response log CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageOrIo;
    }

    try {
        if (*gen_cmd) return gen_trials_cmd(gen);
        if (*eval_cmd) return eval_scagnostics_cmd(eval);
        if (*an_cmd) return analyze_cmd(an);
        if (*am_cmd) return alpha_map_cmd(am);
        if (*ds_cmd) return datasets_cmd(ds_seed, ds_out);
        if (*sv_cmd) return serve_cmd(sv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageOrIo;
    }
    return kUsageOrIo;
}
