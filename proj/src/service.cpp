#include "offscreen/service.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <httplib.h>

namespace offscreen {

namespace {

Reply json_reply(int status, const Json& j) { return {status, j.dump()}; }

Reply error_reply(int status, const std::string& message, const std::string& field = {}) {
    Json j{{"error", message}};
    if (!field.empty()) j["field"] = field;
    return json_reply(status, j);
}

// Maps parse and validation failures onto 400 replies with the offending field.
template <typename F>
Reply guarded(F handler) {
    try {
        return handler();
    } catch (const Json::parse_error& e) {
        return error_reply(400, std::string("malformed JSON: ") + e.what(), "(body)");
    } catch (const FieldError& e) {
        return error_reply(400, e.what(), e.field());
    } catch (const Error& e) {
        return error_reply(400, e.what());
    }
}

// Route captures are digit strings; anything out of int range is simply unknown.
int route_int(const std::string& s) {
    try {
        return std::stoi(s);
    } catch (const std::out_of_range&) {
        return -1;
    }
}

}  // namespace

Service::Service(ServiceConfig cfg) : cfg_(std::move(cfg)), datasets_(gen_archetypes(cfg_.seed)) {}

Reply Service::frame(const std::string& body) const {
    return guarded([&] {
        const FrameRequest req = frame_request_from_json(Json::parse(body));
        if (!req.dataset_id) return json_reply(200, frame_response(req));
        const int id = *req.dataset_id;
        if (id < 1 || id > static_cast<int>(datasets_.size()))
            return error_reply(404, "unknown dataset " + std::to_string(id), "dataset_id");
        const PointSet& pts = datasets_[static_cast<std::size_t>(id - 1)].points;
        std::vector<Vec2d> points;
        for (Eigen::Index i = 0; i < pts.cols(); ++i) points.emplace_back(pts.col(i));
        return json_reply(200, frame_response(req, &points));
    });
}

const std::vector<Trial>& Service::trials_for(Task task) {
    std::lock_guard lock(trials_mutex_);
    auto it = trials_.find(task);
    if (it == trials_.end()) {
        it = trials_.emplace(task, gen_trials(task, cfg_.seed, cfg_.participants, cfg_.layout)).first;
        for (const auto& t : it->second) by_id_.emplace(t.id, &t);
    }
    return it->second;
}

const Trial* Service::find_trial(const std::string& id) {
    // Ids start with "T<task>-"; generate that task's trials on demand.
    if (id.size() < 3 || id[0] != 'T' || id[2] != '-' || id[1] < '1' || id[1] > '3') return nullptr;
    trials_for(task_from_int(id[1] - '0'));
    std::lock_guard lock(trials_mutex_);
    const auto it = by_id_.find(id);
    return it == by_id_.end() ? nullptr : it->second;
}

Reply Service::trials(int task, int participant) {
    return guarded([&] {
        if (task < 1 || task > 3) return error_reply(404, "unknown task " + std::to_string(task), "task");
        if (participant < 0 || participant >= cfg_.participants)
            return error_reply(404, "unknown participant " + std::to_string(participant), "participant");
        Json arr = Json::array();
        for (const auto& t : trials_for(task_from_int(task)))
            if (t.participant == participant) arr.push_back(to_json(t));
        return json_reply(200, arr);
    });
}

Reply Service::post_response(const std::string& body) {
    return guarded([&] {
        const Response r = response_from_json(Json::parse(body));
        const Trial* t = find_trial(r.trial_id);
        if (!t || t->participant != r.participant)
            return error_reply(400, "unknown trial '" + r.trial_id + "' for this participant", "trial_id");
        if (t->task == Task::t1 && !r.click) return error_reply(400, "task-1 responses need a click", "click_x");
        if (t->task != Task::t1 && !r.choice) return error_reply(400, "this task needs a colour choice", "choice");
        if (t->task == Task::t1) classify_t1(*t, r, cfg_.layout);  // rejects clicks outside the hub

        std::lock_guard lock(log_mutex_);
        const bool fresh = !std::filesystem::exists(cfg_.response_log) || std::filesystem::file_size(cfg_.response_log) == 0;
        std::ofstream out(cfg_.response_log, std::ios::app);
        if (!out) return error_reply(500, "cannot open response log " + cfg_.response_log);
        if (fresh) out << kResponseCsvHeader << '\n';
        out << response_csv_line(r) << '\n';
        out.flush();
        if (!out) return error_reply(500, "write to response log failed");
        return json_reply(201, Json{{"appended", r.trial_id}});
    });
}

Reply Service::dataset(int id) const {
    if (id < 1 || id > static_cast<int>(datasets_.size())) return error_reply(404, "unknown dataset " + std::to_string(id));
    const Archetype& d = datasets_[static_cast<std::size_t>(id - 1)];
    Json pts = Json::array();
    for (Eigen::Index i = 0; i < d.points.cols(); ++i) pts.push_back({d.points(0, i), d.points(1, i)});
    return json_reply(200, Json{{"id", d.id}, {"name", d.name}, {"points", pts}});
}

void Service::mount(httplib::Server& server) {
    const auto send = [](httplib::Response& res, const Reply& reply) {
        res.status = reply.status;
        res.set_content(reply.body, "application/json");
    };
    server.Post("/frame", [this, send](const httplib::Request& req, httplib::Response& res) { send(res, frame(req.body)); });
    server.Get(R"(/trials/(-?\d+)/(-?\d+))", [this, send](const httplib::Request& req, httplib::Response& res) {
        send(res, trials(route_int(req.matches[1]), route_int(req.matches[2])));
    });
    server.Post("/responses",
                [this, send](const httplib::Request& req, httplib::Response& res) { send(res, post_response(req.body)); });
    server.Get(R"(/datasets/(-?\d+))", [this, send](const httplib::Request& req, httplib::Response& res) {
        send(res, dataset(route_int(req.matches[1])));
    });
}

}  // namespace offscreen
