#ifndef OFFSCREEN_EXTREME_CASES_HPP
#define OFFSCREEN_EXTREME_CASES_HPP

#include "offscreen/geometry.hpp"
#include "offscreen/projection.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace offscreen {

/// Angle between the orthographic and the radial projection line through a point.
template <typename Scalar>
struct AngleAnalysis {
    Scalar alpha{0};
    Vec2<Scalar> ortho_dir{Vec2<Scalar>::Zero()};
    Vec2<Scalar> radial_dir{Vec2<Scalar>::Zero()};
    RegionTag region{RegionTag::inside};
};

/// Direction along which the orthographic strategy moves an off-screen point
/// toward the viewport: the inward normal for sides, the unit diagonal toward
/// the viewport corner for corner regions.
template <typename Scalar>
Vec2<Scalar> orthographic_direction(RegionTag region) {
    const Eigen::Vector2i o = region_offset(region);
    return (-o.cast<Scalar>()).normalized();
}

template <typename Scalar>
AngleAnalysis<Scalar> projection_angle(const Scene<Scalar>& scene, const Vec2<Scalar>& p,
                                       const ProjectionOptions<Scalar>& opts = {}) {
    require_valid(scene);
    AngleAnalysis<Scalar> out;
    out.region = classify_region(scene, p);
    if (out.region == RegionTag::inside) throw ProjectionError(ProjectionError::Kind::not_offscreen);
    out.ortho_dir = orthographic_direction<Scalar>(out.region);
    out.radial_dir = (detail::radial_origin(scene, opts) - p).normalized();
    // atan2 keeps full precision near zero, where acos(dot) loses half the digits.
    using std::abs;
    using std::atan2;
    const Scalar cross = out.ortho_dir.x() * out.radial_dir.y() - out.ortho_dir.y() * out.radial_dir.x();
    out.alpha = atan2(abs(cross), out.ortho_dir.dot(out.radial_dir));
    return out;
}

/// A ray along a viewport edge extension, starting at a viewport corner.
template <typename Scalar>
struct ExtremeAxis {
    Vec2<Scalar> origin{Vec2<Scalar>::Zero()};
    Vec2<Scalar> direction{Vec2<Scalar>::Zero()};
    int index{0};
};

inline constexpr int kAxisCount = 8;

/// Sign of the viewport corner owning axis `index` (corner-major, clockwise
/// from top-left) and whether the axis runs horizontally.
struct AxisLabel {
    int corner_x;
    int corner_y;
    bool horizontal;
};

inline AxisLabel axis_label(int index) {
    static constexpr std::array<std::array<int, 2>, 4> corners{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}};
    const auto& c = corners[static_cast<std::size_t>(index / 2)];
    return {c[0], c[1], index % 2 == 0};
}

int axis_index(int corner_x, int corner_y, bool horizontal);

/// The eight extreme-case axes, two per viewport corner. Index order is
/// corner-major and clockwise from the top-left corner; at each corner the
/// horizontal extension comes first.
template <typename Scalar>
std::array<ExtremeAxis<Scalar>, kAxisCount> extreme_axes(const Scene<Scalar>& scene) {
    require_valid(scene);
    std::array<ExtremeAxis<Scalar>, kAxisCount> axes;
    const auto& vp = scene.viewport;
    for (int i = 0; i < kAxisCount; ++i) {
        const AxisLabel l = axis_label(i);
        auto& a = axes[static_cast<std::size_t>(i)];
        a.index = i;
        a.origin = Vec2<Scalar>(l.corner_x < 0 ? vp.min.x() : vp.max.x(), l.corner_y < 0 ? vp.min.y() : vp.max.y());
        a.direction = l.horizontal ? Vec2<Scalar>(Scalar(l.corner_x), 0) : Vec2<Scalar>(0, Scalar(l.corner_y));
    }
    return axes;
}

/// Length of the part of `axis` that lies inside the data space.
template <typename Scalar>
Scalar axis_length(const Scene<Scalar>& scene, const ExtremeAxis<Scalar>& axis) {
    const int a = axis.direction.x() != 0 ? 0 : 1;
    using std::max;
    return axis.direction[a] > 0 ? max(Scalar(0), scene.data_space.max[a] - axis.origin[a])
                                 : max(Scalar(0), axis.origin[a] - scene.data_space.min[a]);
}

/// A symmetry of the square acting on axis indices: `perm[i]` is the image of axis i.
using AxisPermutation = std::array<int, kAxisCount>;

/// The eight elements of the square's dihedral group as axis permutations;
/// element 0 is the identity.
const std::array<AxisPermutation, 8>& dihedral_group();

}  // namespace offscreen

#endif  // OFFSCREEN_EXTREME_CASES_HPP
