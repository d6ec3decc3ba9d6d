#include "offscreen/scagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>

namespace offscreen {

std::string_view measure_name(int m) {
    static constexpr std::array<std::string_view, kMeasureCount> names{
        "outlying", "skewed", "clumpy", "sparse", "striated", "convex", "skinny", "stringy", "monotonic"};
    if (m < 0 || m >= kMeasureCount) throw Error("measure index out of range");
    return names[static_cast<std::size_t>(m)];
}

namespace scag {

namespace {

using Index = Eigen::Index;

double orient(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
    return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

// Positive when d lies inside the circumcircle of the counter-clockwise
// triangle abc. Evaluated in long double to push the ambiguous band down.
long double incircle(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c,
                     const Eigen::Vector2d& d) {
    const long double adx = a.x() - static_cast<long double>(d.x()), ady = a.y() - static_cast<long double>(d.y());
    const long double bdx = b.x() - static_cast<long double>(d.x()), bdy = b.y() - static_cast<long double>(d.y());
    const long double cdx = c.x() - static_cast<long double>(d.x()), cdy = c.y() - static_cast<long double>(d.y());
    const long double ad = adx * adx + ady * ady;
    const long double bd = bdx * bdx + bdy * bdy;
    const long double cd = cdx * cdx + cdy * cdy;
    return adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) + ad * (bdx * cdy - bdy * cdx);
}

}  // namespace

PointSet feature_scale(const PointSet& pts) {
    PointSet out(2, pts.cols());
    if (pts.cols() == 0) return out;
    for (Index r = 0; r < 2; ++r) {
        const double lo = pts.row(r).minCoeff();
        const double range = pts.row(r).maxCoeff() - lo;
        if (range > 0) out.row(r) = (pts.row(r).array() - lo) / range;
        else out.row(r).setZero();
    }
    return out;
}

PointSet unique_points(const PointSet& pts) {
    std::vector<Index> order(static_cast<std::size_t>(pts.cols()));
    std::iota(order.begin(), order.end(), Index{0});
    const auto less = [&](Index i, Index j) {
        return pts(0, i) < pts(0, j) || (pts(0, i) == pts(0, j) && pts(1, i) < pts(1, j));
    };
    std::sort(order.begin(), order.end(), less);
    const auto same = [&](Index i, Index j) { return pts(0, i) == pts(0, j) && pts(1, i) == pts(1, j); };
    order.erase(std::unique(order.begin(), order.end(), same), order.end());
    PointSet out(2, static_cast<Index>(order.size()));
    for (std::size_t k = 0; k < order.size(); ++k) out.col(static_cast<Index>(k)) = pts.col(order[k]);
    return out;
}

std::vector<Edge> minimum_spanning_tree(const PointSet& pts) {
    const Index n = pts.cols();
    std::vector<Edge> edges;
    if (n < 2) return edges;
    edges.reserve(static_cast<std::size_t>(n - 1));
    std::vector<double> best(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
    std::vector<int> parent(static_cast<std::size_t>(n), -1);
    std::vector<char> in_tree(static_cast<std::size_t>(n), 0);
    best[0] = 0;
    for (Index step = 0; step < n; ++step) {
        int u = -1;
        for (Index v = 0; v < n; ++v)
            if (!in_tree[static_cast<std::size_t>(v)] && (u < 0 || best[static_cast<std::size_t>(v)] < best[static_cast<std::size_t>(u)]))
                u = static_cast<int>(v);
        in_tree[static_cast<std::size_t>(u)] = 1;
        const int p = parent[static_cast<std::size_t>(u)];
        if (p >= 0) edges.push_back({std::min(u, p), std::max(u, p), best[static_cast<std::size_t>(u)]});
        for (Index v = 0; v < n; ++v) {
            if (in_tree[static_cast<std::size_t>(v)]) continue;
            const double d = (pts.col(v) - pts.col(u)).norm();
            if (d < best[static_cast<std::size_t>(v)]) {
                best[static_cast<std::size_t>(v)] = d;
                parent[static_cast<std::size_t>(v)] = u;
            }
        }
    }
    return edges;
}

std::vector<std::array<int, 3>> delaunay(const PointSet& pts) {
    const int n = static_cast<int>(pts.cols());
    std::vector<std::array<int, 3>> out;
    if (n < 3) return out;

    // Bowyer-Watson with an enclosing triangle far outside the point set.
    // Triangles whose circumcircle reaches the auxiliary vertices can go
    // missing along the hull; such circles are hundreds of diameters wide.
    const Eigen::Vector2d lo = pts.rowwise().minCoeff();
    const Eigen::Vector2d hi = pts.rowwise().maxCoeff();
    const double span = std::max({hi.x() - lo.x(), hi.y() - lo.y(), std::numeric_limits<double>::min()});
    const Eigen::Vector2d mid = (lo + hi) / 2;
    const double far = 1000 * span;
    std::vector<Eigen::Vector2d> v;
    v.reserve(static_cast<std::size_t>(n) + 3);
    for (int i = 0; i < n; ++i) v.emplace_back(pts.col(i));
    v.emplace_back(mid.x() - 2 * far, mid.y() - far);
    v.emplace_back(mid.x() + 2 * far, mid.y() - far);
    v.emplace_back(mid.x(), mid.y() + 2 * far);

    std::vector<std::array<int, 3>> tris{{n, n + 1, n + 2}};
    std::vector<std::array<int, 3>> keep;
    std::map<std::pair<int, int>, int> edge_count;
    std::vector<std::pair<int, int>> cavity;
    for (int i = 0; i < n; ++i) {
        const auto& p = v[static_cast<std::size_t>(i)];
        keep.clear();
        edge_count.clear();
        cavity.clear();
        for (const auto& t : tris) {
            const auto& a = v[static_cast<std::size_t>(t[0])];
            const auto& b = v[static_cast<std::size_t>(t[1])];
            const auto& c = v[static_cast<std::size_t>(t[2])];
            if (incircle(a, b, c, p) > 0) {
                for (int k = 0; k < 3; ++k) {
                    const int e0 = t[static_cast<std::size_t>(k)], e1 = t[static_cast<std::size_t>((k + 1) % 3)];
                    ++edge_count[{std::min(e0, e1), std::max(e0, e1)}];
                    cavity.emplace_back(e0, e1);
                }
            } else {
                keep.push_back(t);
            }
        }
        tris.swap(keep);
        for (const auto& [e0, e1] : cavity)
            if (edge_count[{std::min(e0, e1), std::max(e0, e1)}] == 1) tris.push_back({e0, e1, i});
    }
    for (const auto& t : tris) {
        if (t[0] >= n || t[1] >= n || t[2] >= n) continue;
        if (!(orient(v[static_cast<std::size_t>(t[0])], v[static_cast<std::size_t>(t[1])], v[static_cast<std::size_t>(t[2])]) > 0))
            continue;
        out.push_back(t);
    }
    return out;
}

std::vector<int> convex_hull(const PointSet& pts) {
    const int n = static_cast<int>(pts.cols());
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int i, int j) {
        return pts(0, i) < pts(0, j) || (pts(0, i) == pts(0, j) && pts(1, i) < pts(1, j));
    });
    if (n < 3) return idx;
    const auto cross = [&](int o, int a, int b) {
        return orient(pts.col(o), pts.col(a), pts.col(b));
    };
    std::vector<int> hull(static_cast<std::size_t>(2 * n));
    std::size_t k = 0;
    for (int i : idx) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], i) <= 0) --k;
        hull[k++] = i;
    }
    const std::size_t lower = k + 1;
    for (auto it = idx.rbegin() + 1; it != idx.rend(); ++it) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], *it) <= 0) --k;
        hull[k++] = *it;
    }
    hull.resize(k - 1);
    return hull;
}

double polygon_area(const PointSet& pts, const std::vector<int>& ring) {
    double twice = 0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const auto a = pts.col(ring[i]);
        const auto b = pts.col(ring[(i + 1) % ring.size()]);
        twice += a.x() * b.y() - a.y() * b.x();
    }
    return std::abs(twice) / 2;
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw Error("quantile of an empty set");
    std::sort(values.begin(), values.end());
    const double h = (static_cast<double>(values.size()) - 1) * q;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

namespace {

Eigen::VectorXd average_ranks(const Eigen::VectorXd& x) {
    const Index n = x.size();
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::sort(order.begin(), order.end(), [&](Index a, Index b) { return x[a] < x[b]; });
    Eigen::VectorXd ranks(n);
    for (Index i = 0; i < n;) {
        Index j = i;
        while (j + 1 < n && x[order[static_cast<std::size_t>(j + 1)]] == x[order[static_cast<std::size_t>(i)]]) ++j;
        const double r = (static_cast<double>(i + j) / 2) + 1;
        for (Index k = i; k <= j; ++k) ranks[order[static_cast<std::size_t>(k)]] = r;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

double spearman(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    if (x.size() != y.size() || x.size() < 2) throw Error("spearman needs two equally long samples");
    const Eigen::VectorXd rx = average_ranks(x).array() - (static_cast<double>(x.size()) + 1) / 2;
    const Eigen::VectorXd ry = average_ranks(y).array() - (static_cast<double>(y.size()) + 1) / 2;
    const double sxx = rx.squaredNorm(), syy = ry.squaredNorm();
    if (sxx == 0 || syy == 0) return 0;
    return rx.dot(ry) / std::sqrt(sxx * syy);
}

AlphaShape alpha_shape(const PointSet& pts, double alpha) {
    AlphaShape shape;
    std::map<std::pair<int, int>, int> edges;
    for (const auto& t : delaunay(pts)) {
        const Eigen::Vector2d a = pts.col(t[0]), b = pts.col(t[1]), c = pts.col(t[2]);
        const double area = orient(a, b, c) / 2;
        const double radius = (a - b).norm() * (b - c).norm() * (c - a).norm() / (4 * area);
        if (!(radius <= alpha)) continue;
        shape.area += area;
        ++shape.triangles;
        for (int k = 0; k < 3; ++k) {
            const int e0 = t[static_cast<std::size_t>(k)], e1 = t[static_cast<std::size_t>((k + 1) % 3)];
            ++edges[{std::min(e0, e1), std::max(e0, e1)}];
        }
    }
    for (const auto& [e, count] : edges)
        if (count == 1) shape.perimeter += (pts.col(e.first) - pts.col(e.second)).norm();
    return shape;
}

}  // namespace scag

namespace {

using scag::Edge;

std::vector<double> lengths_of(const std::vector<Edge>& edges) {
    std::vector<double> out;
    out.reserve(edges.size());
    for (const auto& e : edges) out.push_back(e.length);
    return out;
}

double clumpy_measure(const std::vector<Edge>& mst, int n) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < mst.size(); ++k) {
        adj[static_cast<std::size_t>(mst[k].a)].push_back(static_cast<int>(k));
        adj[static_cast<std::size_t>(mst[k].b)].push_back(static_cast<int>(k));
    }
    // Component of `start` using only edges shorter than `cut`: size and longest edge.
    std::vector<int> seen(static_cast<std::size_t>(n), -1);
    int stamp = 0;
    std::vector<int> stack;
    const auto component = [&](int start, double cut) {
        ++stamp;
        int size = 0;
        double longest = 0;
        stack.assign(1, start);
        seen[static_cast<std::size_t>(start)] = stamp;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            ++size;
            for (int k : adj[static_cast<std::size_t>(u)]) {
                const Edge& e = mst[static_cast<std::size_t>(k)];
                if (!(e.length < cut)) continue;
                const int w = e.a == u ? e.b : e.a;
                if (seen[static_cast<std::size_t>(w)] == stamp) continue;
                seen[static_cast<std::size_t>(w)] = stamp;
                longest = std::max(longest, e.length);
                stack.push_back(w);
            }
        }
        return std::pair{size, longest};
    };
    double best = 0;
    for (const Edge& e : mst) {
        const auto [size_a, long_a] = component(e.a, e.length);
        const auto [size_b, long_b] = component(e.b, e.length);
        const bool a_is_runt = size_a < size_b;
        const int runt = a_is_runt ? size_a : size_b;
        const double runt_long = a_is_runt ? long_a : long_b;
        if (runt < 2) continue;
        best = std::max(best, 2.0 * runt / n * (1 - runt_long / e.length));
    }
    return best;
}

}  // namespace

ScagnosticsVector compute_measures(const PointSet& pts) {
    if (!pts.allFinite()) throw Error("non-finite point");
    const PointSet all = scag::unique_points(scag::feature_scale(pts));
    if (all.cols() < 3) throw Error("degenerate");

    ScagnosticsVector m = ScagnosticsVector::Zero();
    const auto mst_all = scag::minimum_spanning_tree(all);
    const auto len_all = lengths_of(mst_all);
    const double q25 = scag::quantile(len_all, 0.25), q75 = scag::quantile(len_all, 0.75);
    const double omega = q75 + 1.5 * (q75 - q25);

    // A vertex is an outlier when every incident tree edge exceeds omega.
    const auto n_all = static_cast<std::size_t>(all.cols());
    std::vector<char> has_short(n_all, 0);
    for (const auto& e : mst_all) {
        if (e.length <= omega) has_short[static_cast<std::size_t>(e.a)] = has_short[static_cast<std::size_t>(e.b)] = 1;
    }
    double total = 0, outlier_len = 0;
    for (const auto& e : mst_all) {
        total += e.length;
        if (!has_short[static_cast<std::size_t>(e.a)] || !has_short[static_cast<std::size_t>(e.b)]) outlier_len += e.length;
    }
    m[measure::outlying] = total > 0 ? outlier_len / total : 0;

    std::vector<Eigen::Index> kept;
    for (std::size_t i = 0; i < n_all; ++i)
        if (has_short[i]) kept.push_back(static_cast<Eigen::Index>(i));
    PointSet pts_in = all;
    if (kept.size() >= 3 && kept.size() < n_all) pts_in = all(Eigen::all, kept);

    const int n = static_cast<int>(pts_in.cols());
    const auto mst = scag::minimum_spanning_tree(pts_in);
    const auto len = lengths_of(mst);
    const double q10 = scag::quantile(len, 0.10), q50 = scag::quantile(len, 0.50), q90 = scag::quantile(len, 0.90);
    m[measure::skewed] = q90 > q10 ? (q90 - q50) / (q90 - q10) : 0;
    m[measure::sparse] = std::min(1.0, q90);
    m[measure::clumpy] = clumpy_measure(mst, n);

    std::vector<std::vector<int>> nbr(static_cast<std::size_t>(n));
    for (const auto& e : mst) {
        nbr[static_cast<std::size_t>(e.a)].push_back(e.b);
        nbr[static_cast<std::size_t>(e.b)].push_back(e.a);
    }
    int v1 = 0, v2 = 0, straight = 0;
    for (int v = 0; v < n; ++v) {
        const auto& nb = nbr[static_cast<std::size_t>(v)];
        if (nb.size() == 1) ++v1;
        if (nb.size() != 2) continue;
        ++v2;
        const Eigen::Vector2d a = pts_in.col(nb[0]) - pts_in.col(v);
        const Eigen::Vector2d b = pts_in.col(nb[1]) - pts_in.col(v);
        if (a.dot(b) / (a.norm() * b.norm()) < -0.75) ++straight;
    }
    m[measure::stringy] = static_cast<double>(v2) / (n - v1);
    m[measure::striated] = static_cast<double>(straight) / n;

    const auto shape = scag::alpha_shape(pts_in, q90);
    const double hull_area = scag::polygon_area(pts_in, scag::convex_hull(pts_in));
    m[measure::convex] = hull_area > 0 ? std::min(1.0, shape.area / hull_area) : 0;
    m[measure::skinny] = shape.area > 0 && shape.perimeter > 0
                             ? std::clamp(1 - std::sqrt(4 * std::numbers::pi * shape.area) / shape.perimeter, 0.0, 1.0)
                             : 1;
    const double rho = scag::spearman(pts_in.row(0).transpose(), pts_in.row(1).transpose());
    m[measure::monotonic] = rho * rho;
    return m;
}

// ---------------------------------------------------------------------------
// Archetypes

namespace {

PointSet jitter(PointSet pts, Rng& rng, double sd) {
    for (Eigen::Index i = 0; i < pts.cols(); ++i) pts.col(i) += sd * Eigen::Vector2d(rng.normal(), rng.normal());
    return pts;
}

template <typename F>
PointSet sample(int n, F f) {
    PointSet pts(2, n);
    for (int i = 0; i < n; ++i) pts.col(i) = f(i);
    return pts;
}

}  // namespace

std::vector<Archetype> gen_archetypes(std::uint64_t seed) {
    using V = Eigen::Vector2d;
    constexpr double pi = std::numbers::pi;
    std::vector<Archetype> out;
    const auto add = [&](std::string name, auto make) {
        const int id = static_cast<int>(out.size()) + 1;
        Rng rng(seed, "archetype/" + name);
        PointSet pts = make(rng);
        // A whisper of noise keeps edge lengths free of exact ties.
        Rng noise = rng.derive("noise");
        out.push_back({id, std::move(name), jitter(std::move(pts), noise, 1e-6)});
    };

    add("uniform-blob", [](Rng& r) { return sample(300, [&](int) { return V(r.uniform(), r.uniform()); }); });
    add("gaussian-blob", [](Rng& r) { return sample(300, [&](int) { return V(r.normal(), r.normal()); }); });
    add("two-clusters", [](Rng& r) {
        return sample(300, [&](int i) {
            const V c = i % 2 == 0 ? V(0, 0) : V(4, 3);
            return V(c + 0.5 * V(r.normal(), r.normal()));
        });
    });
    add("three-clusters", [](Rng& r) {
        const std::array<V, 3> centers{V(0, 0), V(5, 1), V(2, 4)};
        return sample(300, [&](int i) { return V(centers[static_cast<std::size_t>(i % 3)] + 0.4 * V(r.normal(), r.normal())); });
    });
    add("straight-line", [](Rng& r) {
        return sample(200, [&](int) {
            const double x = r.uniform();
            return V(x, 0.7 * x + 0.005 * r.normal());
        });
    });
    add("parabola", [](Rng& r) {
        return sample(200, [&](int) {
            const double x = r.uniform(-1, 1);
            return V(x, x * x + 0.02 * r.normal());
        });
    });
    add("sine-wave", [](Rng& r) {
        return sample(300, [&](int) {
            const double x = r.uniform(0, 4 * pi);
            return V(x, std::sin(x) + 0.05 * r.normal());
        });
    });
    add("spiral", [](Rng& r) {
        return sample(300, [&](int) {
            const double t = r.uniform(0.1, 1);
            const double a = 4 * pi * t;
            return V(t * std::cos(a) + 0.01 * r.normal(), t * std::sin(a) + 0.01 * r.normal());
        });
    });
    add("ring", [](Rng& r) {
        return sample(300, [&](int) {
            const double a = r.uniform(0, 2 * pi);
            const double rad = 1 + 0.05 * r.normal();
            return V(rad * std::cos(a), rad * std::sin(a));
        });
    });
    add("striated-bands", [](Rng& r) {
        return sample(300, [&](int i) { return V(r.uniform(0, 10), static_cast<double>(i % 5) + 0.002 * r.normal()); });
    });
    add("blob-with-outliers", [](Rng& r) {
        return sample(300, [&](int i) {
            if (i < 280) return V(r.normal(), r.normal());
            const double a = r.uniform(0, 2 * pi);
            const double rad = r.uniform(8, 12);
            return V(rad * std::cos(a), rad * std::sin(a));
        });
    });
    add("sparse-grid", [](Rng& r) {
        return sample(100, [&](int i) {
            return V(static_cast<double>(i % 10) + 0.01 * r.normal(), static_cast<double>(i / 10) + 0.01 * r.normal());
        });
    });
    return out;
}

// ---------------------------------------------------------------------------
// Deviation table

std::string_view to_string(DeviationRegion r) {
    switch (r) {
        case DeviationRegion::side_x: return "left/right";
        case DeviationRegion::side_y: return "top/bottom";
        case DeviationRegion::corner: return "corner";
    }
    return "?";
}

RegionTag representative(DeviationRegion r) {
    switch (r) {
        case DeviationRegion::side_x: return RegionTag::right;
        case DeviationRegion::side_y: return RegionTag::bottom;
        case DeviationRegion::corner: return RegionTag::bottom_right;
    }
    return RegionTag::inside;
}

PointSet place_in_region(const PointSet& pts, const Scened& scene, RegionTag region, double fill) {
    require_valid(scene);
    if (region == RegionTag::inside) throw Error("target region must be off-screen");
    if (!(fill > 0 && fill < 1)) throw Error("fill must lie in (0, 1)");
    const auto o = region_offset(region);
    const auto& vp = scene.viewport;
    const auto& ds = scene.data_space;
    Eigen::Vector2d lo, hi;
    for (int a = 0; a < 2; ++a) {
        lo[a] = o[a] < 0 ? ds.min[a] : o[a] > 0 ? vp.max[a] : vp.min[a];
        hi[a] = o[a] < 0 ? vp.min[a] : o[a] > 0 ? ds.max[a] : vp.max[a];
    }
    if (!(hi.x() > lo.x() && hi.y() > lo.y())) throw Error("region has no extent in this scene");

    const Eigen::Vector2d pmin = pts.rowwise().minCoeff(), pmax = pts.rowwise().maxCoeff();
    const Eigen::Vector2d prange = pmax - pmin;
    const Eigen::Vector2d target = fill * (hi - lo);
    const Eigen::Vector2d center = (lo + hi) / 2;
    PointSet out(2, pts.cols());
    for (int a = 0; a < 2; ++a) {
        if (prange[a] > 0) out.row(a) = (pts.row(a).array() - pmin[a]) / prange[a] * target[a] + center[a] - target[a] / 2;
        else out.row(a).setConstant(center[a]);
    }
    for (Eigen::Index i = 0; i < out.cols(); ++i) {
        const Vec2d p = out.col(i);
        if (classify_region(scene, p) != region || !ds.contains(p))
            throw Error("dataset does not fit inside region " + std::string(to_string(region)));
    }
    return out;
}

std::vector<DeviationRow> deviation_table(const std::vector<Archetype>& datasets, const DeviationConfig& cfg) {
    const BorderIntrusiond band = compute_intrusion(cfg.scene, cfg.border);
    std::vector<DeviationRow> rows;
    for (const auto& d : datasets) {
        for (Strategy st : {Strategy::orthographic, Strategy::radial}) {
            for (DeviationRegion reg : {DeviationRegion::side_x, DeviationRegion::side_y, DeviationRegion::corner}) {
                const PointSet world = place_in_region(d.points, cfg.scene, representative(reg), cfg.fill);
                const ScagnosticsVector before = compute_measures(world);
                const ScagnosticsVector after = compute_measures(project_points(cfg.scene, band, st, world));
                for (int m = 0; m < kMeasureCount; ++m)
                    rows.push_back({d.id, d.name, st, reg, m, std::abs(after[m] - before[m])});
            }
        }
    }
    return rows;
}

}  // namespace offscreen
