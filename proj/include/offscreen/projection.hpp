#ifndef OFFSCREEN_PROJECTION_HPP
#define OFFSCREEN_PROJECTION_HPP

#include "offscreen/border.hpp"
#include "offscreen/geometry.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace offscreen {

enum class Strategy { orthographic, radial };

std::string_view to_string(Strategy s);
Strategy strategy_from_string(std::string_view name);

class ProjectionError : public Error {
public:
    enum class Kind { not_offscreen, out_of_bounds, degenerate_band, not_in_band };

    explicit ProjectionError(Kind kind) : Error(std::string(message(kind))), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

    static std::string_view message(Kind kind) {
        switch (kind) {
            case Kind::not_offscreen: return "not off-screen";
            case Kind::out_of_bounds: return "out of bounds";
            case Kind::degenerate_band: return "degenerate band";
            case Kind::not_in_band: return "not in band";
        }
        return "projection error";
    }

private:
    Kind kind_;
};

/// Screen-space cue for an off-screen point. `t_depth` is the normalized
/// off-screen depth (0 just off-screen, 1 at the data-space bound); corner cues
/// under the orthographic strategy carry the y depth separately.
template <typename Scalar>
struct ProjectedCue {
    Vec2<Scalar> screen_pos{Vec2<Scalar>::Zero()};
    RegionTag region{RegionTag::inside};
    Scalar t_depth{0};
    std::optional<Scalar> t_depth_y;
};

using ProjectedCued = ProjectedCue<double>;

template <typename Scalar>
struct ProjectionOptions {
    /// World-space origin of the radial rays. Defaults to the viewport center.
    std::optional<Vec2<Scalar>> radial_origin;
};

namespace detail {

/// Slack on normalized band depth when inverting a cue, absorbing rounding.
template <typename Scalar>
Scalar band_tolerance() {
    using std::sqrt;
    return sqrt(std::numeric_limits<Scalar>::epsilon());
}

/// Parameter at which a ray starting inside `rect` leaves it.
template <typename Scalar>
Scalar ray_exit_inside(const Rect<Scalar>& rect, const Vec2<Scalar>& origin, const Vec2<Scalar>& dir) {
    Scalar exit = std::numeric_limits<Scalar>::infinity();
    for (int a = 0; a < 2; ++a) {
        if (dir[a] > 0) exit = std::min(exit, (rect.max[a] - origin[a]) / dir[a]);
        else if (dir[a] < 0) exit = std::min(exit, (rect.min[a] - origin[a]) / dir[a]);
    }
    return exit;
}

/// Far slab parameter of a line against `rect`; the origin may lie outside.
template <typename Scalar>
Scalar ray_exit_far(const Rect<Scalar>& rect, const Vec2<Scalar>& origin, const Vec2<Scalar>& dir) {
    Scalar exit = std::numeric_limits<Scalar>::infinity();
    for (int a = 0; a < 2; ++a) {
        if (dir[a] == 0) continue;
        const Scalar t0 = (rect.min[a] - origin[a]) / dir[a];
        const Scalar t1 = (rect.max[a] - origin[a]) / dir[a];
        exit = std::min(exit, std::max(t0, t1));
    }
    return exit;
}

template <typename Scalar>
struct AxisBand {
    Scalar inner;      // screen coordinate of the band's inner boundary
    Scalar outer;      // screen coordinate of the display edge
    Scalar vp_edge;    // world coordinate of the viewport edge
    Scalar bound;      // world coordinate of the data-space bound
};

template <typename Scalar>
AxisBand<Scalar> axis_band(const Scene<Scalar>& scene, const BorderIntrusion<Scalar>& band, int axis, int offset) {
    const Scalar extent = axis == 0 ? scene.screen_w : scene.screen_h;
    if (offset > 0) {
        const Scalar r = axis == 0 ? band.right : band.bottom;
        return {extent - r, extent, scene.viewport.max[axis], scene.data_space.max[axis]};
    }
    const Scalar r = axis == 0 ? band.left : band.top;
    return {r, Scalar(0), scene.viewport.min[axis], scene.data_space.min[axis]};
}

template <typename Scalar>
Vec2<Scalar> radial_origin(const Scene<Scalar>& scene, const ProjectionOptions<Scalar>& opts) {
    return opts.radial_origin ? *opts.radial_origin : scene.viewport.center();
}

template <typename Scalar>
void require_origin_in_content(const Scene<Scalar>& scene, const BorderIntrusion<Scalar>& band,
                               const Vec2<Scalar>& origin_w) {
    const auto inner = band.inner_rect(scene.screen_w, scene.screen_h);
    if (!inner.contains_strictly(world_to_screen(scene, origin_w)))
        throw ProjectionError(ProjectionError::Kind::degenerate_band);
}

}  // namespace detail

/// Orthographic projection: each off-screen axis is compressed linearly from
/// [viewport edge, data bound] onto [inner band boundary, display edge]; the
/// remaining axis follows the world-to-screen map. Corners compress both axes.
template <typename Scalar>
ProjectedCue<Scalar> project_orthographic(const Scene<Scalar>& scene, const BorderIntrusion<Scalar>& band,
                                          const Vec2<Scalar>& p, RegionTag region) {
    const Vec2<Scalar> on_screen = world_to_screen(scene, p);
    const Eigen::Vector2i offset = region_offset(region);

    ProjectedCue<Scalar> cue;
    cue.region = region;
    cue.screen_pos = on_screen;
    Vec2<Scalar> depth = Vec2<Scalar>::Zero();
    for (int a = 0; a < 2; ++a) {
        if (offset[a] == 0) continue;
        const auto ax = detail::axis_band(scene, band, a, offset[a]);
        if (ax.inner == ax.outer) throw ProjectionError(ProjectionError::Kind::degenerate_band);
        const Scalar span = ax.bound - ax.vp_edge;
        const Scalar t = span != 0 ? (p[a] - ax.vp_edge) / span : Scalar(0);
        depth[a] = t;
        cue.screen_pos[a] = ax.inner + t * (ax.outer - ax.inner);
    }
    if (is_corner(region)) {
        cue.t_depth = depth.x();
        cue.t_depth_y = depth.y();
    } else {
        cue.t_depth = offset.x() != 0 ? depth.x() : depth.y();
    }
    return cue;
}

/// Radial projection: the cue sits on the image of the ray from the radial
/// origin through `p`, at fraction d/D between the ray's crossing of the inner
/// band rectangle and of the display edge. d runs from the viewport boundary to
/// `p`, D from the viewport boundary to the data-space boundary.
template <typename Scalar>
ProjectedCue<Scalar> project_radial(const Scene<Scalar>& scene, const BorderIntrusion<Scalar>& band,
                                    const Vec2<Scalar>& p, RegionTag region,
                                    const ProjectionOptions<Scalar>& opts = {}) {
    const Vec2<Scalar> origin_w = detail::radial_origin(scene, opts);
    detail::require_origin_in_content(scene, band, origin_w);

    const Vec2<Scalar> dir_w = p - origin_w;
    const Scalar leave_vp = detail::ray_exit_inside(scene.viewport, origin_w, dir_w);
    const Scalar leave_ds = detail::ray_exit_far(scene.data_space, origin_w, dir_w);
    const Scalar span = leave_ds - leave_vp;
    const Scalar frac = span > 0 ? std::clamp((Scalar(1) - leave_vp) / span, Scalar(0), Scalar(1)) : Scalar(0);

    const Vec2<Scalar> origin_s = world_to_screen(scene, origin_w);
    const Vec2<Scalar> dir_s = dir_w.cwiseProduct(scene.scale());
    const Scalar hit_inner = detail::ray_exit_inside(band.inner_rect(scene.screen_w, scene.screen_h), origin_s, dir_s);
    const Scalar hit_outer = detail::ray_exit_inside(scene.screen_rect(), origin_s, dir_s);
    if (!(hit_outer > hit_inner)) throw ProjectionError(ProjectionError::Kind::degenerate_band);

    ProjectedCue<Scalar> cue;
    cue.region = region;
    cue.t_depth = frac;
    cue.screen_pos = origin_s + (hit_inner + frac * (hit_outer - hit_inner)) * dir_s;
    return cue;
}

/// Projects an off-screen world point into the border band.
template <typename Scalar>
ProjectedCue<Scalar> project(const Scene<Scalar>& scene, const BorderIntrusion<Scalar>& band, Strategy strategy,
                             const Vec2<Scalar>& p, const ProjectionOptions<Scalar>& opts = {}) {
    require_valid(scene);
    const RegionTag region = classify_region(scene, p);
    if (region == RegionTag::inside) throw ProjectionError(ProjectionError::Kind::not_offscreen);
    if (!scene.data_space.contains(p)) throw ProjectionError(ProjectionError::Kind::out_of_bounds);
    return strategy == Strategy::orthographic ? project_orthographic(scene, band, p, region)
                                              : project_radial(scene, band, p, region, opts);
}

/// Off-screen region a screen cue belongs to under the orthographic strategy.
/// Where a side band and a corner patch overlap, the corner wins.
template <typename Scalar>
RegionTag orthographic_region_of(const Scene<Scalar>& scene, const BorderIntrusion<Scalar>& band,
                                 const Vec2<Scalar>& cue) {
    if (!scene.screen_rect().contains(cue)) throw ProjectionError(ProjectionError::Kind::not_in_band);
    const int ox = (band.left > 0 && cue.x() <= band.left) ? -1
                   : (band.right > 0 && cue.x() >= scene.screen_w - band.right) ? 1
                                                                                  : 0;
    const int oy = (band.top > 0 && cue.y() <= band.top) ? -1
                   : (band.bottom > 0 && cue.y() >= scene.screen_h - band.bottom) ? 1
                                                                                    : 0;
    if (ox == 0 && oy == 0) throw ProjectionError(ProjectionError::Kind::not_in_band);
    return region_from_offset(ox, oy);
}

template <typename Scalar>
Vec2<Scalar> unproject_orthographic(const Scene<Scalar>& scene, const BorderIntrusion<Scalar>& band,
                                    const Vec2<Scalar>& cue, RegionTag region) {
    if (region == RegionTag::inside) throw ProjectionError(ProjectionError::Kind::not_in_band);
    const Eigen::Vector2i offset = region_offset(region);
    Vec2<Scalar> world = screen_to_world(scene, cue);
    const Vec2<Scalar> screen = scene.screen_size();
    for (int a = 0; a < 2; ++a) {
        if (offset[a] == 0) {
            if (cue[a] < 0 || cue[a] > screen[a]) throw ProjectionError(ProjectionError::Kind::not_in_band);
            continue;
        }
        const auto ax = detail::axis_band(scene, band, a, offset[a]);
        if (ax.inner == ax.outer) throw ProjectionError(ProjectionError::Kind::degenerate_band);
        const Scalar t = (cue[a] - ax.inner) / (ax.outer - ax.inner);
        if (!(t >= -detail::band_tolerance<Scalar>() && t <= 1 + detail::band_tolerance<Scalar>()))
            throw ProjectionError(ProjectionError::Kind::not_in_band);
        world[a] = ax.vp_edge + t * (ax.bound - ax.vp_edge);
    }
    return world;
}

template <typename Scalar>
Vec2<Scalar> unproject_radial(const Scene<Scalar>& scene, const BorderIntrusion<Scalar>& band,
                              const Vec2<Scalar>& cue, const ProjectionOptions<Scalar>& opts = {}) {
    const Vec2<Scalar> origin_w = detail::radial_origin(scene, opts);
    detail::require_origin_in_content(scene, band, origin_w);
    const Vec2<Scalar> origin_s = world_to_screen(scene, origin_w);
    const Vec2<Scalar> dir_s = cue - origin_s;
    if (dir_s.isZero(0)) throw ProjectionError(ProjectionError::Kind::not_in_band);

    const Scalar hit_inner = detail::ray_exit_inside(band.inner_rect(scene.screen_w, scene.screen_h), origin_s, dir_s);
    const Scalar hit_outer = detail::ray_exit_inside(scene.screen_rect(), origin_s, dir_s);
    if (!(hit_outer > hit_inner)) throw ProjectionError(ProjectionError::Kind::degenerate_band);
    const Scalar tol = detail::band_tolerance<Scalar>();
    if (hit_inner > 1 + tol || hit_outer < 1 - tol) throw ProjectionError(ProjectionError::Kind::not_in_band);
    const Scalar frac = std::clamp((Scalar(1) - hit_inner) / (hit_outer - hit_inner), Scalar(0), Scalar(1));

    const Vec2<Scalar> dir_w = dir_s.cwiseQuotient(scene.scale());
    const Scalar leave_vp = detail::ray_exit_inside(scene.viewport, origin_w, dir_w);
    const Scalar leave_ds = detail::ray_exit_far(scene.data_space, origin_w, dir_w);
    if (leave_ds < leave_vp) throw ProjectionError(ProjectionError::Kind::out_of_bounds);
    return origin_w + (leave_vp + frac * (leave_ds - leave_vp)) * dir_w;
}

/// Inverse of `project`. The orthographic map folds side bands and corner
/// patches onto the same pixels, so a region hint selects the branch; without
/// one the region is inferred with corners taking precedence. The radial map is
/// invertible without a hint.
template <typename Scalar>
Vec2<Scalar> unproject(const Scene<Scalar>& scene, const BorderIntrusion<Scalar>& band, Strategy strategy,
                       const Vec2<Scalar>& cue, std::optional<RegionTag> region = std::nullopt,
                       const ProjectionOptions<Scalar>& opts = {}) {
    require_valid(scene);
    if (band.inner_rect(scene.screen_w, scene.screen_h).contains_strictly(cue))
        throw ProjectionError(ProjectionError::Kind::not_in_band);
    if (strategy == Strategy::radial) return unproject_radial(scene, band, cue, opts);
    if (region) return unproject_orthographic(scene, band, cue, *region);
    return unproject_orthographic(scene, band, cue, orthographic_region_of(scene, band, cue));
}

template <typename Scalar>
Vec2<Scalar> unproject(const Scene<Scalar>& scene, const BorderIntrusion<Scalar>& band, Strategy strategy,
                       const ProjectedCue<Scalar>& cue, const ProjectionOptions<Scalar>& opts = {}) {
    return unproject(scene, band, strategy, cue.screen_pos, std::optional<RegionTag>(cue.region), opts);
}

/// One element of a batch projection. Exactly one of `cue` / `error` is set.
template <typename Scalar>
struct CueResult {
    std::size_t index{0};
    std::optional<ProjectedCue<Scalar>> cue;
    std::string error;

    bool ok() const { return cue.has_value(); }
};

/// Element-wise projection preserving input order. Points inside the viewport
/// pass through tagged `inside` at their screen position; failures become
/// per-element error records.
template <typename Scalar>
std::vector<CueResult<Scalar>> project_batch(const Scene<Scalar>& scene, const BorderIntrusion<Scalar>& band,
                                             Strategy strategy, std::span<const Vec2<Scalar>> points,
                                             const ProjectionOptions<Scalar>& opts = {}) {
    require_valid(scene);
    std::vector<CueResult<Scalar>> out;
    out.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        CueResult<Scalar> r;
        r.index = i;
        const auto& p = points[i];
        if (!p.allFinite()) {
            r.error = "non-finite point";
        } else if (classify_region(scene, p) == RegionTag::inside) {
            ProjectedCue<Scalar> c;
            c.screen_pos = world_to_screen(scene, p);
            r.cue = c;
        } else {
            try {
                r.cue = project(scene, band, strategy, p, opts);
            } catch (const ProjectionError& e) {
                r.error = e.what();
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

/// Projects a 2xN point set, which must lie entirely off-screen.
template <typename Scalar>
Eigen::Matrix<Scalar, 2, Eigen::Dynamic> project_points(const Scene<Scalar>& scene,
                                                         const BorderIntrusion<Scalar>& band, Strategy strategy,
                                                         const Eigen::Matrix<Scalar, 2, Eigen::Dynamic>& points,
                                                         const ProjectionOptions<Scalar>& opts = {}) {
    Eigen::Matrix<Scalar, 2, Eigen::Dynamic> out(2, points.cols());
    for (Eigen::Index i = 0; i < points.cols(); ++i)
        out.col(i) = project(scene, band, strategy, Vec2<Scalar>(points.col(i)), opts).screen_pos;
    return out;
}

}  // namespace offscreen

#endif  // OFFSCREEN_PROJECTION_HPP
