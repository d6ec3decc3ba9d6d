#ifndef OFFSCREEN_GEOMETRY_HPP
#define OFFSCREEN_GEOMETRY_HPP

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace offscreen {

template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;

using Vec2d = Vec2<double>;

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Axis-aligned rectangle. World units or screen pixels depending on context.
/// y grows downward, so `min.y()` is the top edge.
template <typename Scalar>
struct Rect {
    Vec2<Scalar> min{Vec2<Scalar>::Zero()};
    Vec2<Scalar> max{Vec2<Scalar>::Zero()};

    Rect() = default;
    Rect(Scalar x0, Scalar y0, Scalar x1, Scalar y1) : min(x0, y0), max(x1, y1) {}
    Rect(const Vec2<Scalar>& lo, const Vec2<Scalar>& hi) : min(lo), max(hi) {}

    Scalar width() const { return max.x() - min.x(); }
    Scalar height() const { return max.y() - min.y(); }
    Vec2<Scalar> size() const { return max - min; }
    Vec2<Scalar> center() const { return (min + max) / Scalar(2); }

    bool valid() const {
        return min.allFinite() && max.allFinite() && max.x() > min.x() && max.y() > min.y();
    }

    /// Closed containment test.
    bool contains(const Vec2<Scalar>& p) const {
        return p.x() >= min.x() && p.x() <= max.x() && p.y() >= min.y() && p.y() <= max.y();
    }

    /// Strict interior test.
    bool contains_strictly(const Vec2<Scalar>& p) const {
        return p.x() > min.x() && p.x() < max.x() && p.y() > min.y() && p.y() < max.y();
    }

    template <typename Other>
    Rect<Other> cast() const {
        return Rect<Other>(min.template cast<Other>(), max.template cast<Other>());
    }

    friend bool operator==(const Rect& a, const Rect& b) { return a.min == b.min && a.max == b.max; }
};

using Rectd = Rect<double>;

/// The navigable world (data space), the camera rectangle (viewport), and the
/// pixel size of the display the viewport is mapped onto.
template <typename Scalar>
struct Scene {
    Rect<Scalar> data_space;
    Rect<Scalar> viewport;
    Scalar screen_w{1};
    Scalar screen_h{1};

    Vec2<Scalar> screen_size() const { return Vec2<Scalar>(screen_w, screen_h); }
    Rect<Scalar> screen_rect() const { return Rect<Scalar>(Scalar(0), Scalar(0), screen_w, screen_h); }

    /// Pixels per world unit along each axis.
    Vec2<Scalar> scale() const { return screen_size().cwiseQuotient(viewport.size()); }

    bool valid() const {
        return data_space.valid() && viewport.valid() && std::isfinite(screen_w) &&
               std::isfinite(screen_h) && screen_w > 0 && screen_h > 0;
    }
};

using Scened = Scene<double>;

template <typename Scalar>
void require_valid(const Scene<Scalar>& scene) {
    if (!scene.data_space.valid()) throw Error("invalid scene: data_space must be finite with max > min");
    if (!scene.viewport.valid()) throw Error("invalid scene: viewport must be finite with max > min");
    if (!(std::isfinite(scene.screen_w) && std::isfinite(scene.screen_h) && scene.screen_w > 0 &&
          scene.screen_h > 0))
        throw Error("invalid scene: screen dimensions must be finite and positive");
}

/// Unique axis-aligned affine map sending the viewport onto [0,w]x[0,h].
/// Extrapolates for off-screen points.
template <typename Scalar>
Vec2<Scalar> world_to_screen(const Scene<Scalar>& scene, const Vec2<Scalar>& p) {
    return (p - scene.viewport.min).cwiseProduct(scene.scale());
}

template <typename Scalar>
Vec2<Scalar> screen_to_world(const Scene<Scalar>& scene, const Vec2<Scalar>& s) {
    return scene.viewport.min + s.cwiseQuotient(scene.scale());
}

enum class RegionTag {
    inside,
    left,
    right,
    top,
    bottom,
    top_left,
    top_right,
    bottom_left,
    bottom_right,
};

inline constexpr std::array<RegionTag, 9> kAllRegions{
    RegionTag::inside,      RegionTag::left,     RegionTag::right,
    RegionTag::top,         RegionTag::bottom,   RegionTag::top_left,
    RegionTag::top_right,   RegionTag::bottom_left, RegionTag::bottom_right,
};

inline constexpr std::array<RegionTag, 8> kOffscreenRegions{
    RegionTag::left,     RegionTag::right,     RegionTag::top,         RegionTag::bottom,
    RegionTag::top_left, RegionTag::top_right, RegionTag::bottom_left, RegionTag::bottom_right,
};

inline bool is_side(RegionTag r) {
    return r == RegionTag::left || r == RegionTag::right || r == RegionTag::top || r == RegionTag::bottom;
}

inline bool is_corner(RegionTag r) { return r != RegionTag::inside && !is_side(r); }

/// Per-axis offset of a region relative to the viewport: -1 before, +1 after, 0 within.
inline Eigen::Vector2i region_offset(RegionTag r) {
    switch (r) {
        case RegionTag::inside: return {0, 0};
        case RegionTag::left: return {-1, 0};
        case RegionTag::right: return {1, 0};
        case RegionTag::top: return {0, -1};
        case RegionTag::bottom: return {0, 1};
        case RegionTag::top_left: return {-1, -1};
        case RegionTag::top_right: return {1, -1};
        case RegionTag::bottom_left: return {-1, 1};
        case RegionTag::bottom_right: return {1, 1};
    }
    return {0, 0};
}

inline RegionTag region_from_offset(int ox, int oy) {
    if (ox < 0) return oy < 0 ? RegionTag::top_left : oy > 0 ? RegionTag::bottom_left : RegionTag::left;
    if (ox > 0) return oy < 0 ? RegionTag::top_right : oy > 0 ? RegionTag::bottom_right : RegionTag::right;
    return oy < 0 ? RegionTag::top : oy > 0 ? RegionTag::bottom : RegionTag::inside;
}

std::string_view to_string(RegionTag r);
RegionTag region_from_string(std::string_view name);

/// Classifies a world point against the viewport.
///
/// The viewport interior is half-open (closed on the min edges, open on the
/// max edges). Outside of it, a point is in a corner region only when both
/// coordinates lie strictly beyond the viewport extent; points on an edge
/// extension belong to the side region.
template <typename Scalar>
RegionTag classify_region(const Scene<Scalar>& scene, const Vec2<Scalar>& p) {
    const auto& vp = scene.viewport;
    const bool inside_x = p.x() >= vp.min.x() && p.x() < vp.max.x();
    const bool inside_y = p.y() >= vp.min.y() && p.y() < vp.max.y();
    if (inside_x && inside_y) return RegionTag::inside;

    const int ox = p.x() < vp.min.x() ? -1 : p.x() > vp.max.x() ? 1 : 0;
    const int oy = p.y() < vp.min.y() ? -1 : p.y() > vp.max.y() ? 1 : 0;
    if (ox != 0 || oy != 0) return region_from_offset(ox, oy);

    // Remaining points lie on the open max edges of the viewport.
    return p.x() == vp.max.x() ? RegionTag::right : RegionTag::bottom;
}

}  // namespace offscreen

#endif  // OFFSCREEN_GEOMETRY_HPP
