#include "offscreen/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace offscreen {

namespace {

std::string at(const std::string& field, const std::string& key) { return field.empty() ? key : field + "." + key; }
std::string at(const std::string& field, std::size_t i) { return field + "[" + std::to_string(i) + "]"; }

const Json& member(const Json& j, const std::string& field, const std::string& key) {
    if (!j.is_object()) throw FieldError(field.empty() ? "(root)" : field, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) throw FieldError(at(field, key), "missing");
    return *it;
}

double number(const Json& j, const std::string& field) {
    if (!j.is_number()) throw FieldError(field, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw FieldError(field, "must be finite");
    return v;
}

int integer(const Json& j, const std::string& field) {
    if (!j.is_number_integer()) throw FieldError(field, "expected an integer");
    return j.get<int>();
}

std::string text(const Json& j, const std::string& field) {
    if (!j.is_string()) throw FieldError(field, "expected a string");
    return j.get<std::string>();
}

template <typename F>
auto parse_enum(const Json& j, const std::string& field, F from_string) {
    const std::string s = text(j, field);
    try {
        return from_string(s);
    } catch (const Error& e) {
        throw FieldError(field, e.what());
    }
}

double parse_double(const std::string& s, const std::string& field) {
    double v = 0;
    const char* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) throw FieldError(field, "expected a number, got '" + s + "'");
    return v;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out(1);
    for (char c : line) {
        if (c == ',') out.emplace_back();
        else if (c != '\r') out.back() += c;
    }
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

Json to_json(const Rectd& r) { return Json::array({r.min.x(), r.min.y(), r.max.x(), r.max.y()}); }

Json to_json(const Scened& s) {
    return {{"data_space", to_json(s.data_space)},
            {"viewport", to_json(s.viewport)},
            {"screen", Json::array({s.screen_w, s.screen_h})}};
}

Json to_json(const BorderIntrusiond& b) {
    return {{"top", b.top}, {"left", b.left}, {"bottom", b.bottom}, {"right", b.right}};
}

Rectd rect_from_json(const Json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 4) throw FieldError(field, "expected [x0, y0, x1, y1]");
    Rectd r(number(j[0], at(field, 0)), number(j[1], at(field, 1)), number(j[2], at(field, 2)),
            number(j[3], at(field, 3)));
    if (!r.valid()) throw FieldError(field, "need x1 > x0 and y1 > y0");
    return r;
}

Scened scene_from_json(const Json& j, const std::string& field) {
    Scened s;
    s.data_space = rect_from_json(member(j, field, "data_space"), at(field, "data_space"));
    s.viewport = rect_from_json(member(j, field, "viewport"), at(field, "viewport"));
    const Json& screen = member(j, field, "screen");
    const std::string sf = at(field, "screen");
    if (!screen.is_array() || screen.size() != 2) throw FieldError(sf, "expected [w, h]");
    s.screen_w = number(screen[0], at(sf, 0));
    s.screen_h = number(screen[1], at(sf, 1));
    if (!(s.screen_w > 0 && s.screen_h > 0)) throw FieldError(sf, "dimensions must be positive");
    return s;
}

BorderConfigd border_config_from_json(const Json& j, const std::string& field) {
    if (!j.is_object()) throw FieldError(field, "expected an object");
    BorderConfigd cfg;
    if (j.contains("mode")) cfg.mode = parse_enum(j["mode"], at(field, "mode"), border_mode_from_string);
    if (j.contains("max_intrusion_px")) cfg.max_intrusion_px = number(j["max_intrusion_px"], at(field, "max_intrusion_px"));
    if (j.contains("zoom")) cfg.zoom = number(j["zoom"], at(field, "zoom"));
    if (j.contains("max_zoom")) cfg.max_zoom = number(j["max_zoom"], at(field, "max_zoom"));
    if (!(cfg.max_intrusion_px > 0)) throw FieldError(at(field, "max_intrusion_px"), "must be positive");
    if (!(cfg.zoom > 0 && cfg.zoom <= cfg.max_zoom)) throw FieldError(at(field, "zoom"), "need 0 < zoom <= max_zoom");
    return cfg;
}

Json to_json(const Trial& t) {
    Json points = Json::array();
    for (const auto& p : t.points)
        points.push_back({{"x", p.pos.x()}, {"y", p.pos.y()}, {"color", to_string(p.color)}, {"axis", p.axis}});
    Json j{{"id", t.id},
           {"task", static_cast<int>(t.task)},
           {"participant", t.participant},
           {"index", t.index},
           {"border_mode", to_string(t.border_mode)},
           {"hub_mode", t.hub_mode ? Json(to_string(*t.hub_mode)) : Json()},
           {"scene", to_json(t.scene)},
           {"data_space", to_json(t.scene.data_space)},
           {"reference_side", t.reference_side ? Json(to_string(*t.reference_side)) : Json()},
           {"points", points},
           {"case_id", t.case_id},
           {"seed_path", t.seed_path}};
    return j;
}

Trial trial_from_json(const Json& j) {
    Trial t;
    t.id = text(member(j, "", "id"), "id");
    try {
        t.task = task_from_int(integer(member(j, "", "task"), "task"));
    } catch (const FieldError&) {
        throw;
    } catch (const Error& e) {
        throw FieldError("task", e.what());
    }
    t.participant = integer(member(j, "", "participant"), "participant");
    t.index = integer(member(j, "", "index"), "index");
    t.border_mode = parse_enum(member(j, "", "border_mode"), "border_mode", border_mode_from_string);
    if (j.contains("hub_mode") && !j["hub_mode"].is_null())
        t.hub_mode = parse_enum(j["hub_mode"], "hub_mode", hub_mode_from_string);
    t.scene = scene_from_json(member(j, "", "scene"), "scene");
    if (j.contains("reference_side") && !j["reference_side"].is_null())
        t.reference_side = parse_enum(j["reference_side"], "reference_side", region_from_string);
    const Json& points = member(j, "", "points");
    if (!points.is_array()) throw FieldError("points", "expected an array");
    for (std::size_t i = 0; i < points.size(); ++i) {
        const std::string f = at("points", i);
        TrialPoint p;
        p.pos = Vec2d(number(member(points[i], f, "x"), at(f, "x")), number(member(points[i], f, "y"), at(f, "y")));
        p.color = parse_enum(member(points[i], f, "color"), at(f, "color"), color_from_string);
        p.axis = integer(member(points[i], f, "axis"), at(f, "axis"));
        t.points.push_back(p);
    }
    t.case_id = integer(member(j, "", "case_id"), "case_id");
    t.seed_path = text(member(j, "", "seed_path"), "seed_path");
    return t;
}

void write_trials_jsonl(std::ostream& out, const std::vector<Trial>& trials) {
    for (const auto& t : trials) out << to_json(t).dump() << '\n';
}

std::vector<Trial> read_trials_jsonl(std::istream& in) {
    std::vector<Trial> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            out.push_back(trial_from_json(Json::parse(line)));
        } catch (const std::exception& e) {
            throw Error("trial file line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

void validate_response(const Response& r) {
    if (r.trial_id.empty()) throw FieldError("trial_id", "must not be empty");
    if (r.trial_id.find_first_of(",\r\n\"") != std::string::npos)
        throw FieldError("trial_id", "must not contain commas, quotes or line breaks");
    if (!(std::isfinite(r.elapsed_ms) && r.elapsed_ms > 0)) throw FieldError("elapsed_ms", "must be positive");
    if (r.click.has_value() == r.choice.has_value())
        throw FieldError("click_x", "exactly one of click or choice must be given");
    if (r.click && !r.click->allFinite()) throw FieldError("click_x", "must be finite");
}

std::string response_csv_line(const Response& r) {
    std::string line = r.trial_id + "," + std::to_string(r.participant) + ",";
    if (r.click) line += format_double(r.click->x()) + "," + format_double(r.click->y());
    else line += ",";
    line += ",";
    if (r.choice) line += to_string(*r.choice);
    line += "," + format_double(r.elapsed_ms);
    return line;
}

Json to_json(const Response& r) {
    Json j{{"trial_id", r.trial_id}, {"participant", r.participant}, {"elapsed_ms", r.elapsed_ms}};
    j["click_x"] = r.click ? Json(r.click->x()) : Json();
    j["click_y"] = r.click ? Json(r.click->y()) : Json();
    j["choice"] = r.choice ? Json(to_string(*r.choice)) : Json();
    return j;
}

Response response_from_json(const Json& j) {
    Response r;
    r.trial_id = text(member(j, "", "trial_id"), "trial_id");
    r.participant = integer(member(j, "", "participant"), "participant");
    r.elapsed_ms = number(member(j, "", "elapsed_ms"), "elapsed_ms");
    const bool has_x = j.contains("click_x") && !j["click_x"].is_null();
    const bool has_y = j.contains("click_y") && !j["click_y"].is_null();
    if (has_x != has_y) throw FieldError(has_x ? "click_y" : "click_x", "click needs both coordinates");
    if (has_x) r.click = Vec2d(number(j["click_x"], "click_x"), number(j["click_y"], "click_y"));
    if (j.contains("choice") && !j["choice"].is_null()) r.choice = parse_enum(j["choice"], "choice", color_from_string);
    validate_response(r);
    return r;
}

std::vector<Response> read_responses_csv(std::istream& in) {
    std::vector<Response> out;
    std::string line;
    if (!std::getline(in, line)) return out;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kResponseCsvHeader) throw Error("response log: unexpected header '" + line + "'");
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto cells = split_csv(line);
        const std::string where = "response log line " + std::to_string(lineno);
        if (cells.size() != 6) throw Error(where + ": expected 6 fields, got " + std::to_string(cells.size()));
        try {
            Response r;
            r.trial_id = cells[0];
            r.participant = static_cast<int>(parse_double(cells[1], "participant"));
            if (!cells[2].empty() || !cells[3].empty())
                r.click = Vec2d(parse_double(cells[2], "click_x"), parse_double(cells[3], "click_y"));
            if (!cells[4].empty()) r.choice = color_from_string(cells[4]);
            r.elapsed_ms = parse_double(cells[5], "elapsed_ms");
            validate_response(r);
            out.push_back(std::move(r));
        } catch (const std::exception& e) {
            throw Error(where + ": " + e.what());
        }
    }
    return out;
}

FrameRequest frame_request_from_json(const Json& j) {
    if (!j.is_object()) throw FieldError("(root)", "expected an object");
    FrameRequest req;
    req.scene = scene_from_json(member(j, "", "scene"), "scene");
    if (j.contains("border")) req.border = border_config_from_json(j["border"], "border");
    if (j.contains("strategy")) req.strategy = parse_enum(j["strategy"], "strategy", strategy_from_string);
    const bool has_points = j.contains("points");
    const bool has_dataset = j.contains("dataset_id") && !j["dataset_id"].is_null();
    if (has_points == has_dataset) throw FieldError("points", "give exactly one of points or dataset_id");
    if (has_dataset) {
        req.dataset_id = integer(j["dataset_id"], "dataset_id");
        return req;
    }
    const Json& points = j["points"];
    if (!points.is_array()) throw FieldError("points", "expected an array");
    for (std::size_t i = 0; i < points.size(); ++i) {
        const std::string f = at("points", i);
        const Json& p = points[i];
        FramePoint fp;
        fp.pos = Vec2d(number(member(p, f, "x"), at(f, "x")), number(member(p, f, "y"), at(f, "y")));
        fp.id = p.contains("id") ? p["id"] : Json(i);
        if (p.contains("color")) fp.color = p["color"];
        req.points.push_back(std::move(fp));
    }
    return req;
}

Json frame_response(const FrameRequest& req, const std::vector<Vec2d>* dataset_points) {
    std::vector<FramePoint> points = req.points;
    if (req.dataset_id) {
        if (!dataset_points) throw Error("dataset points missing for dataset_id");
        points.clear();
        for (std::size_t i = 0; i < dataset_points->size(); ++i) points.push_back({(*dataset_points)[i], Json(i), Json()});
    }
    const BorderIntrusiond band = compute_intrusion(req.scene, req.border);
    std::vector<Vec2d> pos;
    pos.reserve(points.size());
    for (const auto& p : points) pos.push_back(p.pos);
    const auto results = project_batch<double>(req.scene, band, req.strategy, pos);

    Json cues = Json::array(), inside = Json::array(), errors = Json::array();
    for (const auto& r : results) {
        const FramePoint& p = points[r.index];
        if (!r.ok()) {
            errors.push_back({{"index", r.index}, {"id", p.id}, {"error", r.error}});
            continue;
        }
        const auto& c = *r.cue;
        Json item{{"x", c.screen_pos.x()}, {"y", c.screen_pos.y()}, {"color", p.color}, {"id", p.id}};
        if (c.region == RegionTag::inside) {
            inside.push_back(std::move(item));
            continue;
        }
        item["region"] = to_string(c.region);
        item["t"] = c.t_depth;
        if (c.t_depth_y) item["t_y"] = *c.t_depth_y;
        cues.push_back(std::move(item));
    }
    Json out{{"scene", to_json(req.scene)},
             {"strategy", to_string(req.strategy)},
             {"border_mode", to_string(req.border.mode)},
             {"intrusion", to_json(band)},
             {"cues", cues},
             {"inside", inside},
             {"errors", errors}};
    if (req.dataset_id) out["dataset_id"] = *req.dataset_id;
    return out;
}

}  // namespace offscreen
