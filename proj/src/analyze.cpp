#include "offscreen/analyze.hpp"

#include "offscreen/io.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <tuple>
#include <unordered_map>

namespace offscreen {

namespace {

double mean(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); }

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 == 1 ? v[h] : (v[h - 1] + v[h]) / 2;
}

std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

}  // namespace

std::vector<ScoredResponse> score_responses(const std::vector<Trial>& trials, const std::vector<Response>& responses,
                                            const ExperimentLayout& layout) {
    std::unordered_map<std::string, const Trial*> by_id;
    for (const auto& t : trials) by_id.emplace(t.id, &t);

    std::vector<std::string> orphans;
    for (const auto& r : responses) {
        const auto it = by_id.find(r.trial_id);
        if (it == by_id.end() || it->second->participant != r.participant) orphans.push_back(r.trial_id);
    }
    if (!orphans.empty()) {
        std::string msg = std::to_string(orphans.size()) + " response(s) match no trial:";
        for (const auto& id : orphans) msg += " " + id;
        throw Error(msg);
    }

    std::vector<ScoredResponse> out;
    out.reserve(responses.size());
    for (const auto& r : responses) {
        const Trial& t = *by_id.at(r.trial_id);
        ScoredResponse s;
        s.response = r;
        s.task = t.task;
        s.border = t.border_mode;
        s.hub = t.hub_mode;
        try {
            if (t.task == Task::t1) s.classification = classify_t1(t, r, layout);
            else s.correct = is_correct(t, r);
        } catch (const Error& e) {
            throw Error("response for " + r.trial_id + ": " + e.what());
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<ConditionSummary> summarize(const std::vector<ScoredResponse>& scored) {
    using Key = std::tuple<int, int, int>;
    std::map<Key, std::vector<const ScoredResponse*>> groups;
    for (const auto& s : scored)
        groups[{static_cast<int>(s.task), static_cast<int>(s.border), s.hub ? static_cast<int>(*s.hub) : -1}].push_back(&s);

    std::vector<ConditionSummary> rows;
    for (const auto& [key, members] : groups) {
        ConditionSummary row;
        row.task = members.front()->task;
        row.border = members.front()->border;
        row.hub = members.front()->hub;
        row.n = static_cast<int>(members.size());
        std::vector<double> elapsed, d_o, d_r;
        int ortho = 0, correct = 0;
        for (const auto* s : members) {
            elapsed.push_back(s->response.elapsed_ms);
            if (s->classification) {
                d_o.push_back(s->classification->dist_ortho_px);
                d_r.push_back(s->classification->dist_radial_px);
                ortho += s->classification->chosen == Strategy::orthographic;
                row.ties += s->classification->tie;
            }
            if (s->correct) correct += *s->correct;
        }
        if (row.task == Task::t1) {
            row.pct_orthographic = 100.0 * ortho / row.n;
            row.mean_dist_ortho_px = mean(d_o);
            row.median_dist_ortho_px = median(d_o);
            row.mean_dist_radial_px = mean(d_r);
            row.median_dist_radial_px = median(d_r);
        } else {
            row.accuracy = static_cast<double>(correct) / row.n;
        }
        row.mean_elapsed_ms = mean(elapsed);
        row.median_elapsed_ms = median(elapsed);
        rows.push_back(row);
    }
    return rows;
}

void write_summary_csv(std::ostream& out, const std::vector<ConditionSummary>& rows) {
    out << "task,border,hub,n,ties,pct_orthographic,mean_dist_ortho_px,median_dist_ortho_px,"
           "mean_dist_radial_px,median_dist_radial_px,accuracy,mean_elapsed_ms,median_elapsed_ms\n";
    for (const auto& r : rows) {
        out << static_cast<int>(r.task) << ',' << to_string(r.border) << ',' << (r.hub ? to_string(*r.hub) : "") << ','
            << r.n << ',' << r.ties << ',' << cell(r.pct_orthographic) << ',' << cell(r.mean_dist_ortho_px) << ','
            << cell(r.median_dist_ortho_px) << ',' << cell(r.mean_dist_radial_px) << ','
            << cell(r.median_dist_radial_px) << ',' << cell(r.accuracy) << ',' << format_double(r.mean_elapsed_ms)
            << ',' << format_double(r.median_elapsed_ms) << '\n';
    }
}

void write_scored_csv(std::ostream& out, const std::vector<ScoredResponse>& scored) {
    out << "trial_id,participant,task,border,hub,dist_ortho_px,dist_radial_px,chosen,tie,correct,elapsed_ms\n";
    for (const auto& s : scored) {
        out << s.response.trial_id << ',' << s.response.participant << ',' << static_cast<int>(s.task) << ','
            << to_string(s.border) << ',' << (s.hub ? to_string(*s.hub) : "") << ',';
        if (s.classification) {
            out << format_double(s.classification->dist_ortho_px) << ',' << format_double(s.classification->dist_radial_px)
                << ',' << to_string(s.classification->chosen) << ',' << (s.classification->tie ? 1 : 0) << ',';
        } else {
            out << ",,,,";
        }
        out << (s.correct ? (*s.correct ? "1" : "0") : "") << ',' << format_double(s.response.elapsed_ms) << '\n';
    }
}

}  // namespace offscreen
