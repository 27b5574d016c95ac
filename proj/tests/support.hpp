#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

#include "hosp/hosp.hpp"

namespace hosp::test {

/// 7 nodes, 10 edges, 2 filled triangles.
inline SimplicialComplex two_triangle_complex()
{
    return build_complex({{0, 2, 3}, {4, 5, 6}, {0, 1}, {1, 2}, {2, 5}, {3, 4}}, 7);
}

/// Reference B_1, written out by hand (rows: nodes 0..6).
inline IntMatrix two_triangle_b1()
{
    IntMatrix b(7, 10);
    b << -1, -1, -1, 0, 0, 0, 0, 0, 0, 0,
          1, 0, 0, -1, 0, 0, 0, 0, 0, 0,
          0, 1, 0, 1, -1, -1, 0, 0, 0, 0,
          0, 0, 1, 0, 1, 0, -1, 0, 0, 0,
          0, 0, 0, 0, 0, 0, 1, -1, -1, 0,
          0, 0, 0, 0, 0, 1, 0, 1, 0, -1,
          0, 0, 0, 0, 0, 0, 0, 0, 1, 1;
    return b;
}

/// Reference B_2 (columns: triangles (0,2,3) and (4,5,6)).
inline IntMatrix two_triangle_b2()
{
    IntMatrix b = IntMatrix::Zero(10, 2);
    b(1, 0) = 1;
    b(2, 0) = -1;
    b(4, 0) = 1;
    b(7, 1) = 1;
    b(8, 1) = -1;
    b(9, 1) = 1;
    return b;
}

/// Flow used for the decomposition fixture.
inline Vector two_triangle_flow()
{
    Vector c(10);
    c << -4, -2, 4, -2, 3, -7, 7, 3, 4, -4;
    return c;
}

/// Ground-truth flow for interpolation and its labeled edges.
inline Vector two_triangle_truth()
{
    Vector f(10);
    f << -2, -2, 4, -2, 3, -7, 7, 3, 4, -4;
    return f;
}

/// Labeled edges (1,3),(1,4),(3,6),(4,5),(5,6) in canonical indices.
inline std::vector<Index> two_triangle_labeled_edges() { return {1, 2, 5, 6, 7}; }

/// Rank over GF(2^31 - 1) by Gaussian elimination.
inline Index rank_mod_p(const IntMatrix& m)
{
    constexpr std::int64_t p = 2147483647;
    const Index rows = m.rows(), cols = m.cols();
    std::vector<std::vector<std::int64_t>> a(static_cast<std::size_t>(rows), std::vector<std::int64_t>(static_cast<std::size_t>(cols)));
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j)
            a[i][j] = ((m(i, j) % p) + p) % p;
    auto power = [](std::int64_t b, std::int64_t e) {
        std::int64_t r = 1;
        b %= p;
        while (e > 0) {
            if (e & 1)
                r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    Index rank = 0;
    for (Index c = 0; c < cols && rank < rows; ++c) {
        Index piv = -1;
        for (Index r = rank; r < rows; ++r)
            if (a[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0)
            continue;
        std::swap(a[piv], a[rank]);
        const std::int64_t inv = power(a[rank][c], p - 2);
        for (Index r = 0; r < rows; ++r) {
            if (r == rank || a[r][c] == 0)
                continue;
            const std::int64_t f = a[r][c] * inv % p;
            for (Index k = c; k < cols; ++k)
                a[r][k] = ((a[r][k] - f * a[rank][k]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

inline IntMatrix boundary_int(const SimplicialComplex& x, int k)
{
    if (k < 1 || k > x.top_order())
        return IntMatrix::Zero(x.count(k - 1), x.count(k));
    return IntMatrix(boundary_matrix(x, k).matrix);
}

/// Random flag-like complex: edges with probability pe, then each 3-clique
/// filled with probability pt and each filled 4-clique with probability p4.
inline SimplicialComplex random_complex(CounterRng& rng, int n, double pe, double pt, double p4 = 0.0)
{
    std::vector<std::vector<int>> facets;
    std::vector<std::vector<bool>> adj(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i) {
        facets.push_back({i});
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform() < pe) {
                adj[i][j] = adj[j][i] = true;
                facets.push_back({i, j});
            }
    }
    std::vector<std::vector<int>> tris;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                if (adj[i][j] && adj[j][k] && adj[i][k] && rng.uniform() < pt) {
                    facets.push_back({i, j, k});
                    tris.push_back({i, j, k});
                }
    if (p4 > 0.0)
        for (int l = 0; l < n; ++l)
            for (const auto& t : tris)
                if (l > t[2] && adj[t[0]][l] && adj[t[1]][l] && adj[t[2]][l] && rng.uniform() < p4)
                    facets.push_back({t[0], t[1], t[2], l});
    return build_complex(facets, n);
}

/// Random hypergraph with hyperedges of size in [lo, hi].
inline Hypergraph random_hypergraph(CounterRng& rng, int n, int edges, int lo, int hi, bool weighted)
{
    std::vector<std::vector<int>> es;
    std::vector<double> ws;
    for (int e = 0; e < edges; ++e) {
        const int s = lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
        std::vector<int> perm(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            perm[i] = i;
        for (int i = n - 1; i > 0; --i)
            std::swap(perm[i], perm[rng.below(static_cast<std::uint64_t>(i + 1))]);
        es.emplace_back(perm.begin(), perm.begin() + std::min(s, n));
        ws.push_back(weighted ? rng.uniform(0.5, 2.0) : 1.0);
    }
    return Hypergraph(n, es, ws);
}

/// Random simple graph as a 2-uniform hypergraph (at least one edge).
inline Hypergraph random_graph_hypergraph(CounterRng& rng, int n, double p, bool weighted)
{
    std::vector<std::vector<int>> es;
    std::vector<double> ws;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform() < p || (es.empty() && i == n - 2)) {
                es.push_back({i, j});
                ws.push_back(weighted ? rng.uniform(0.5, 2.0) : 1.0);
            }
    return Hypergraph(n, es, ws);
}

/// Weighted graph adjacency built directly from a 2-uniform hypergraph.
inline Matrix graph_adjacency(const Hypergraph& h)
{
    Matrix a = Matrix::Zero(h.n_vertices(), h.n_vertices());
    for (Index e = 0; e < h.n_edges(); ++e) {
        const auto& m = h.edge(e);
        a(m[0], m[1]) += h.weight(e);
        a(m[1], m[0]) += h.weight(e);
    }
    return a;
}


// ---- p = 2 Lovasz denoising oracle ---------------------------------------

/// Minimizes ||x - y||^2 + alpha sum_e w_e (max_e x - min_e x)^2 by exact
/// line searches along every subset indicator direction, sweeping until no
/// direction improves. Directions over subsets escape the ties where
/// single-coordinate descent stalls.
inline double lovasz_p2_oracle(const Hypergraph& h, const Vector& y, double alpha, Vector* argmin = nullptr)
{
    const int n = h.n_vertices();
    const double inf = std::numeric_limits<double>::infinity();
    Vector x = y;
    auto objective = [&](const Vector& z) { return (z - y).squaredNorm() + alpha * lovasz_tv(h, z, 2); };
    double f = objective(x);
    struct Edge {
        double w, a_in, a_out, b_in, b_out;
    };
    std::vector<Edge> edges(static_cast<std::size_t>(h.n_edges()));
    for (int sweep = 0; sweep < 20000; ++sweep) {
        const double start = f;
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            double lin = 0.0;
            int card = 0;
            for (int i = 0; i < n; ++i)
                if (mask & (1u << i)) {
                    lin += x(i) - y(i);
                    ++card;
                }
            for (Index e = 0; e < h.n_edges(); ++e) {
                Edge g{h.weight(e), -inf, -inf, inf, inf};
                for (int v : h.edge(e)) {
                    if (mask & (1u << v)) {
                        g.a_in = std::max(g.a_in, x(v));
                        g.b_in = std::min(g.b_in, x(v));
                    } else {
                        g.a_out = std::max(g.a_out, x(v));
                        g.b_out = std::min(g.b_out, x(v));
                    }
                }
                edges[static_cast<std::size_t>(e)] = g;
            }
            // right derivative of the convex 1-D restriction at t
            auto slope = [&](double t) {
                double d = 2.0 * lin + 2.0 * card * t;
                for (const auto& g : edges) {
                    const bool top = g.a_in + t >= g.a_out;
                    const bool bottom = g.b_in + t < g.b_out;
                    const double range = std::max(g.a_in + t, g.a_out) - std::min(g.b_in + t, g.b_out);
                    if (std::isfinite(range))
                        d += 2.0 * alpha * g.w * range * ((top ? 1.0 : 0.0) - (bottom ? 1.0 : 0.0));
                }
                return d;
            };
            double lo = -1.0, hi = 1.0;
            while (slope(lo) >= 0.0 && lo > -1e6)
                lo *= 2.0;
            while (slope(hi) < 0.0 && hi < 1e6)
                hi *= 2.0;
            for (int it = 0; it < 200 && hi - lo > 1e-17 * std::max(1.0, std::abs(lo) + std::abs(hi)); ++it) {
                const double mid = 0.5 * (lo + hi);
                (slope(mid) < 0.0 ? lo : hi) = mid;
            }
            for (double t : {lo, hi}) {
                Vector z = x;
                for (int i = 0; i < n; ++i)
                    if (mask & (1u << i))
                        z(i) += t;
                const double fz = objective(z);
                if (fz < f) {
                    f = fz;
                    x = z;
                }
            }
        }
        if (start - f <= 1e-15 * std::max(1.0, f))
            break;
    }
    if (argmin)
        *argmin = x;
    return f;
}

// ---- trajectory scene ----------------------------------------------------

inline constexpr std::uint64_t scene_seed = 1;

inline DelaunayComplex scene_complex()
{
    return delaunay_complex(uniform_points(400, scene_seed), {{1.0 / 3.0, 2.0 / 3.0}, {2.0 / 3.0, 1.0 / 3.0}});
}

inline int nearest_vertex(const DelaunayComplex& d, Point2 p)
{
    int best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (int i = 0; i < static_cast<int>(d.points.size()); ++i) {
        const double dist = std::hypot(d.points[i].x - p.x, d.points[i].y - p.y);
        if (dist < bd) {
            bd = dist;
            best = i;
        }
    }
    return best;
}

/// Euclidean shortest path on the 1-skeleton.
inline std::vector<int> shortest_path(const DelaunayComplex& d, int from, int to)
{
    const int n = static_cast<int>(d.points.size());
    std::vector<std::vector<int>> nbr(static_cast<std::size_t>(n));
    for (const auto& e : d.complex.simplices(1)) {
        nbr[e[0]].push_back(e[1]);
        nbr[e[1]].push_back(e[0]);
    }
    std::vector<double> dist(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
    std::vector<int> prev(static_cast<std::size_t>(n), -1);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[from] = 0.0;
    pq.push({0.0, from});
    while (!pq.empty()) {
        const auto [dv, v] = pq.top();
        pq.pop();
        if (dv > dist[v])
            continue;
        for (int w : nbr[v]) {
            const double nd = dv + std::hypot(d.points[v].x - d.points[w].x, d.points[v].y - d.points[w].y);
            if (nd < dist[w]) {
                dist[w] = nd;
                prev[w] = v;
                pq.push({nd, w});
            }
        }
    }
    std::vector<int> path;
    for (int v = to; v != -1; v = prev[v])
        path.push_back(v);
    std::reverse(path.begin(), path.end());
    if (path.front() != from)
        return {};
    return path;
}

/// Trajectory through the vertices nearest to the given waypoints.
inline Trajectory route(const DelaunayComplex& d, const std::vector<Point2>& waypoints)
{
    Trajectory t;
    for (std::size_t i = 1; i < waypoints.size(); ++i) {
        const auto seg = shortest_path(d, nearest_vertex(d, waypoints[i - 1]), nearest_vertex(d, waypoints[i]));
        for (std::size_t k = (i == 1 ? 0 : 1); k < seg.size(); ++k)
            t.vertices.push_back(seg[k]);
    }
    return t;
}

struct SceneTrajectory {
    int cls;
    Trajectory path;
};

/// Five trajectories from the left edge to the right edge: two above the
/// upper hole, two between the holes, one below the lower hole.
inline std::vector<SceneTrajectory> scene_trajectories(const DelaunayComplex& d)
{
    const Point2 s{0.05, 0.45}, t{0.95, 0.55};
    return {
        {0, route(d, {s, {0.2, 0.85}, {0.5, 0.9}, {0.8, 0.7}, t})},
        {0, route(d, {s, {0.15, 0.75}, {0.4, 0.85}, {0.6, 0.8}, t})},
        {1, route(d, {s, {0.35, 0.5}, {0.5, 0.5}, {0.65, 0.5}, t})},
        {1, route(d, {s, {0.3, 0.55}, {0.5, 0.45}, {0.7, 0.52}, t})},
        {2, route(d, {s, {0.3, 0.2}, {0.65, 0.12}, {0.9, 0.25}, t})},
    };
}

}  // namespace hosp::test
