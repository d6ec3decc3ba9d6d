#ifndef OFFSCREEN_SCAGNOSTICS_HPP
#define OFFSCREEN_SCAGNOSTICS_HPP

#include "offscreen/border.hpp"
#include "offscreen/geometry.hpp"
#include "offscreen/projection.hpp"
#include "offscreen/rng.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace offscreen {

/// Point sets are stored column-wise, one point per column.
using PointSet = Eigen::Matrix2Xd;

namespace measure {
enum : int { outlying, skewed, clumpy, sparse, striated, convex, skinny, stringy, monotonic };
}
inline constexpr int kMeasureCount = 9;
std::string_view measure_name(int measure);

using ScagnosticsVector = Eigen::Matrix<double, kMeasureCount, 1>;

namespace scag {

struct Edge {
    int a;
    int b;
    double length;
};

/// Per-row min-max scaling to [0, 1]. A row with zero range maps to 0.
PointSet feature_scale(const PointSet& pts);

/// Sorted, duplicate-free copy of the columns (lexicographic on x then y).
PointSet unique_points(const PointSet& pts);

/// Euclidean MST by Prim's algorithm. Ties go to the lower vertex index, so
/// the tree depends only on the column order. Edges come with a < b.
std::vector<Edge> minimum_spanning_tree(const PointSet& pts);

/// Delaunay triangles as counter-clockwise index triples. Collinear input
/// yields no triangles.
std::vector<std::array<int, 3>> delaunay(const PointSet& pts);

/// Convex hull vertex indices in counter-clockwise order; collinear points on
/// the hull are dropped.
std::vector<int> convex_hull(const PointSet& pts);

double polygon_area(const PointSet& pts, const std::vector<int>& ring);

/// Quantile with linear interpolation between order statistics.
double quantile(std::vector<double> values, double q);

/// Spearman rank correlation with average ranks for ties; 0 when either
/// variable has no spread.
double spearman(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// Alpha shape as the union of Delaunay triangles with circumradius <= alpha.
struct AlphaShape {
    double area{0};
    double perimeter{0};
    int triangles{0};
};
AlphaShape alpha_shape(const PointSet& pts, double alpha);

}  // namespace scag

/// The nine measures of a 2D point set. Throws Error("degenerate") below three
/// distinct points.
ScagnosticsVector compute_measures(const PointSet& pts);

struct Archetype {
    int id;
    std::string name;
    PointSet points;
};

/// Twelve reference point sets, each between 100 and 500 points.
std::vector<Archetype> gen_archetypes(std::uint64_t seed);

/// The three region classes of the deviation table. Symmetry makes one
/// representative of each enough: right, bottom and bottom-right.
enum class DeviationRegion { side_x, side_y, corner };
std::string_view to_string(DeviationRegion r);
RegionTag representative(DeviationRegion r);

struct DeviationConfig {
    /// 16:9 scene with one viewport of free space around the viewport on every side.
    Scened scene{Rectd(-1920, -1080, 3840, 2160), Rectd(0, 0, 1920, 1080), 1920, 1080};
    BorderConfigd border{};
    /// Fraction of the region's extent the dataset spans on each axis.
    double fill{0.8};
};

/// Scales and centers a point set into an off-screen region of the scene.
/// Throws if any point would land outside the region.
PointSet place_in_region(const PointSet& pts, const Scened& scene, RegionTag region, double fill);

struct DeviationRow {
    int dataset_id;
    std::string dataset;
    Strategy strategy;
    DeviationRegion region;
    int measure;
    double deviation;
};

/// Every (dataset, strategy, region, measure) cell: |measure(projected) - measure(world)|.
std::vector<DeviationRow> deviation_table(const std::vector<Archetype>& datasets, const DeviationConfig& cfg = {});

}  // namespace offscreen

#endif  // OFFSCREEN_SCAGNOSTICS_HPP
