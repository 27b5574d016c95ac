#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include "hosp/complex.hpp"
#include "hosp/rng.hpp"

namespace hosp {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

struct DelaunayComplex {
    SimplicialComplex complex;
    std::vector<Point2> points;        ///< coordinates of the kept vertices, new numbering
    std::vector<int> original_index;  ///< kept vertex -> index into the input point list
    std::vector<int> removed;         ///< input indices removed as hole centers
};

namespace detail {

inline double orient2d(const Point2& a, const Point2& b, const Point2& c)
{
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

/// Positive when d lies strictly inside the circumcircle of CCW (a, b, c).
inline double incircle(const Point2& a, const Point2& b, const Point2& c, const Point2& d)
{
    const double adx = a.x - d.x, ady = a.y - d.y;
    const double bdx = b.x - d.x, bdy = b.y - d.y;
    const double cdx = c.x - d.x, cdy = c.y - d.y;
    const double ad = adx * adx + ady * ady;
    const double bd = bdx * bdx + bdy * bdy;
    const double cd = cdx * cdx + cdy * cdy;
    return adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) + ad * (bdx * cdy - bdy * cdx);
}

/// Bowyer-Watson. Returns CCW triangles over indices into pts.
inline std::vector<std::array<int, 3>> bowyer_watson(const std::vector<Point2>& pts)
{
    const int n = static_cast<int>(pts.size());
    double minx = pts[0].x, maxx = pts[0].x, miny = pts[0].y, maxy = pts[0].y;
    for (const auto& p : pts) {
        minx = std::min(minx, p.x);
        maxx = std::max(maxx, p.x);
        miny = std::min(miny, p.y);
        maxy = std::max(maxy, p.y);
    }
    const double span = std::max({maxx - minx, maxy - miny, 1e-300});
    const double cx = 0.5 * (minx + maxx);
    const double cy = 0.5 * (miny + maxy);

    std::vector<Point2> all = pts;
    all.push_back({cx - 40.0 * span, cy - 30.0 * span});
    all.push_back({cx + 40.0 * span, cy - 30.0 * span});
    all.push_back({cx, cy + 40.0 * span});

    std::vector<std::array<int, 3>> tris{{n, n + 1, n + 2}};
    for (int p = 0; p < n; ++p) {
        std::vector<std::array<int, 3>> keep;
        std::map<std::pair<int, int>, int> edge_count;
        std::vector<std::pair<int, int>> edges;
        for (const auto& t : tris) {
            if (incircle(all[t[0]], all[t[1]], all[t[2]], all[p]) > 0.0) {
                for (int e = 0; e < 3; ++e) {
                    const int a = t[e], b = t[(e + 1) % 3];
                    edges.emplace_back(a, b);
                    ++edge_count[{std::min(a, b), std::max(a, b)}];
                }
            } else {
                keep.push_back(t);
            }
        }
        for (const auto& [a, b] : edges)
            if (edge_count[{std::min(a, b), std::max(a, b)}] == 1)
                keep.push_back({a, b, p});
        tris = std::move(keep);
    }
    std::vector<std::array<int, 3>> out;
    for (const auto& t : tris)
        if (t[0] < n && t[1] < n && t[2] < n)
            out.push_back(t);
    return out;
}

}  // namespace detail

/// n points uniform in the unit square from a CounterRng stream.
inline std::vector<Point2> uniform_points(int n, std::uint64_t seed)
{
    CounterRng rng(seed);
    std::vector<Point2> pts(static_cast<std::size_t>(n));
    for (auto& p : pts) {
        p.x = rng.uniform();
        p.y = rng.uniform();
    }
    return pts;
}

/// Delaunay triangulation with holes punched by deleting, for each hole
/// center, the nearest remaining vertex together with every simplex that
/// contains it. Surviving vertices are renumbered in input order. Every
/// triangle is a 2-simplex.
inline DelaunayComplex delaunay_complex(const std::vector<Point2>& points, const std::vector<Point2>& hole_centers = {})
{
    const int n = static_cast<int>(points.size());
    if (n < 3)
        throw InputError("delaunay: need at least 3 points");
    for (const auto& p : points)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw InputError("delaunay: non-finite coordinate");
    {
        std::vector<Point2> sorted = points;
        std::sort(sorted.begin(), sorted.end(), [](const Point2& a, const Point2& b) {
            return a.x != b.x ? a.x < b.x : a.y < b.y;
        });
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw InputError("delaunay: duplicate points");
    }
    // farthest point from points[0], then the largest triangle area with it
    int far = 0;
    double best = 0.0;
    for (int i = 1; i < n; ++i) {
        const double d = std::hypot(points[i].x - points[0].x, points[i].y - points[0].y);
        if (d > best) {
            best = d;
            far = i;
        }
    }
    double area = 0.0;
    for (int i = 0; i < n; ++i)
        area = std::max(area, std::abs(detail::orient2d(points[0], points[far], points[i])));
    if (area <= 1e-12 * best * best)
        throw InputError("delaunay: all points are collinear");

    const auto tris = detail::bowyer_watson(points);

    std::vector<bool> gone(static_cast<std::size_t>(n), false);
    std::vector<int> removed;
    for (const auto& c : hole_centers) {
        int pick = -1;
        double dmin = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i) {
            if (gone[i])
                continue;
            const double d = std::hypot(points[i].x - c.x, points[i].y - c.y);
            if (d < dmin) {
                dmin = d;
                pick = i;
            }
        }
        if (pick < 0)
            throw InputError("delaunay: more holes than vertices");
        gone[pick] = true;
        removed.push_back(pick);
    }

    DelaunayComplex out;
    out.removed = removed;
    std::vector<int> renum(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        if (gone[i])
            continue;
        renum[i] = static_cast<int>(out.points.size());
        out.points.push_back(points[i]);
        out.original_index.push_back(i);
    }
    std::vector<std::vector<int>> facets;
    for (const auto& t : tris) {
        for (int e = 0; e < 3; ++e) {
            const int a = t[e], b = t[(e + 1) % 3];
            if (!gone[a] && !gone[b])
                facets.push_back({renum[a], renum[b]});
        }
        if (gone[t[0]] || gone[t[1]] || gone[t[2]])
            continue;
        facets.push_back({renum[t[0]], renum[t[1]], renum[t[2]]});
    }
    for (int i = 0; i < static_cast<int>(out.points.size()); ++i)
        facets.push_back({i});
    out.complex = build_complex(facets, static_cast<int>(out.points.size()));
    return out;
}

}  // namespace hosp
