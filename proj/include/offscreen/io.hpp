#ifndef OFFSCREEN_IO_HPP
#define OFFSCREEN_IO_HPP

#include "offscreen/border.hpp"
#include "offscreen/geometry.hpp"
#include "offscreen/projection.hpp"
#include "offscreen/scenario.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace offscreen {

using Json = nlohmann::json;

/// Malformed input. `field` is a dotted path into the request, e.g.
/// "scene.viewport[2]".
class FieldError : public Error {
public:
    FieldError(std::string field, const std::string& problem)
        : Error(field + ": " + problem), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);

Json to_json(const Rectd& r);
Json to_json(const Scened& s);
Json to_json(const BorderIntrusiond& b);
Json to_json(const Trial& t);

Rectd rect_from_json(const Json& j, const std::string& field);
Scened scene_from_json(const Json& j, const std::string& field = "scene");
BorderConfigd border_config_from_json(const Json& j, const std::string& field = "border");
Trial trial_from_json(const Json& j);

/// One trial per line.
void write_trials_jsonl(std::ostream& out, const std::vector<Trial>& trials);
std::vector<Trial> read_trials_jsonl(std::istream& in);

inline constexpr const char* kResponseCsvHeader = "trial_id,participant,click_x,click_y,choice,elapsed_ms";

/// Checks the invariants of a single response: a non-empty id without
/// separators, positive elapsed time, exactly one of click or choice.
void validate_response(const Response& r);
std::string response_csv_line(const Response& r);
Response response_from_json(const Json& j);
Json to_json(const Response& r);
/// Parses a response log; the header line is required unless the input is empty.
std::vector<Response> read_responses_csv(std::istream& in);

/// A point submitted to /frame. The id and colour are echoed back untouched.
struct FramePoint {
    Vec2d pos{Vec2d::Zero()};
    Json id;
    Json color;
};

struct FrameRequest {
    Scened scene;
    BorderConfigd border;
    Strategy strategy{Strategy::orthographic};
    std::optional<int> dataset_id;
    std::vector<FramePoint> points;
};

FrameRequest frame_request_from_json(const Json& j);

/// Projects the request's points and assembles the response document. When
/// `dataset_id` is set, `dataset_points` supplies its points.
Json frame_response(const FrameRequest& req, const std::vector<Vec2d>* dataset_points = nullptr);

}  // namespace offscreen

#endif  // OFFSCREEN_IO_HPP
