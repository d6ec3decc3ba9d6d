#ifndef OFFSCREEN_BORDER_HPP
#define OFFSCREEN_BORDER_HPP

#include "offscreen/geometry.hpp"

#include <algorithm>
#include <string_view>

namespace offscreen {

enum class BorderMode { fixed, adaptive };

std::string_view to_string(BorderMode m);
BorderMode border_mode_from_string(std::string_view name);

/// Default maximum intrusion in pixels, the EdgeRadar band width.
inline constexpr double kDefaultMaxIntrusionPx = 35.0;

template <typename Scalar>
struct BorderConfig {
    Scalar max_intrusion_px{Scalar(kDefaultMaxIntrusionPx)};
    Scalar zoom{1};
    Scalar max_zoom{1};
    BorderMode mode{BorderMode::adaptive};

    bool valid() const {
        return std::isfinite(max_intrusion_px) && std::isfinite(zoom) && std::isfinite(max_zoom) &&
               max_intrusion_px > 0 && zoom > 0 && zoom <= max_zoom;
    }
};

using BorderConfigd = BorderConfig<double>;

/// Per-side thickness of the cue band, in pixels.
template <typename Scalar>
struct BorderIntrusion {
    Scalar top{0};
    Scalar left{0};
    Scalar bottom{0};
    Scalar right{0};

    static BorderIntrusion uniform(Scalar v) { return {v, v, v, v}; }

    /// The screen rectangle left over for content, i.e. the screen inset by the band.
    Rect<Scalar> inner_rect(Scalar screen_w, Scalar screen_h) const {
        return Rect<Scalar>(left, top, screen_w - right, screen_h - bottom);
    }

    friend bool operator==(const BorderIntrusion& a, const BorderIntrusion& b) {
        return a.top == b.top && a.left == b.left && a.bottom == b.bottom && a.right == b.right;
    }
};

using BorderIntrusiond = BorderIntrusion<double>;

/// World distance from each viewport side to the data-space bound on that
/// side, clamped at zero when the viewport overshoots the bound.
template <typename Scalar>
BorderIntrusion<Scalar> offscreen_extent(const Scene<Scalar>& scene) {
    const auto& vp = scene.viewport;
    const auto& ds = scene.data_space;
    using std::max;
    return {max(Scalar(0), vp.min.y() - ds.min.y()), max(Scalar(0), vp.min.x() - ds.min.x()),
            max(Scalar(0), ds.max.y() - vp.max.y()), max(Scalar(0), ds.max.x() - vp.max.x())};
}

/// size_x = alpha * (zoom / max_zoom) * min(1, d(vp, bound_x) / dim_x)
///
/// Fixed mode drops the position factor. The ratio is dimensionless (world
/// over world); alpha is already in pixels. Each side is additionally capped at
/// half the matching screen dimension.
template <typename Scalar>
BorderIntrusion<Scalar> compute_intrusion(const Scene<Scalar>& scene, const BorderConfig<Scalar>& cfg) {
    require_valid(scene);
    if (!cfg.valid()) throw Error("invalid border config: need max_intrusion_px > 0 and 0 < zoom <= max_zoom");

    const Scalar base = cfg.max_intrusion_px * (cfg.zoom / cfg.max_zoom);
    BorderIntrusion<Scalar> out = BorderIntrusion<Scalar>::uniform(base);
    if (cfg.mode == BorderMode::adaptive) {
        using std::min;
        const auto d = offscreen_extent(scene);
        const Scalar w = scene.viewport.width();
        const Scalar h = scene.viewport.height();
        out.top = base * min(Scalar(1), d.top / h);
        out.bottom = base * min(Scalar(1), d.bottom / h);
        out.left = base * min(Scalar(1), d.left / w);
        out.right = base * min(Scalar(1), d.right / w);
    }
    using std::min;
    out.top = min(out.top, scene.screen_h / 2);
    out.bottom = min(out.bottom, scene.screen_h / 2);
    out.left = min(out.left, scene.screen_w / 2);
    out.right = min(out.right, scene.screen_w / 2);
    return out;
}

}  // namespace offscreen

#endif  // OFFSCREEN_BORDER_HPP
