#include "offscreen/border.hpp"
#include "offscreen/geometry.hpp"
#include "offscreen/projection.hpp"

#include <string>

namespace offscreen {

std::string_view to_string(RegionTag r) {
    switch (r) {
        case RegionTag::inside: return "inside";
        case RegionTag::left: return "left";
        case RegionTag::right: return "right";
        case RegionTag::top: return "top";
        case RegionTag::bottom: return "bottom";
        case RegionTag::top_left: return "top-left";
        case RegionTag::top_right: return "top-right";
        case RegionTag::bottom_left: return "bottom-left";
        case RegionTag::bottom_right: return "bottom-right";
    }
    return "inside";
}

RegionTag region_from_string(std::string_view name) {
    for (RegionTag r : kAllRegions)
        if (to_string(r) == name) return r;
    throw Error("unknown region '" + std::string(name) + "'");
}

std::string_view to_string(BorderMode m) { return m == BorderMode::fixed ? "fixed" : "adaptive"; }

BorderMode border_mode_from_string(std::string_view name) {
    if (name == "fixed") return BorderMode::fixed;
    if (name == "adaptive") return BorderMode::adaptive;
    throw Error("unknown border mode '" + std::string(name) + "' (expected fixed|adaptive)");
}

std::string_view to_string(Strategy s) { return s == Strategy::orthographic ? "orthographic" : "radial"; }

Strategy strategy_from_string(std::string_view name) {
    if (name == "orthographic" || name == "ortho") return Strategy::orthographic;
    if (name == "radial") return Strategy::radial;
    throw Error("unknown strategy '" + std::string(name) + "' (expected orthographic|radial)");
}

}  // namespace offscreen
