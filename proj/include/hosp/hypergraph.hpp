#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "hosp/common.hpp"

namespace hosp {

/// Weighted hypergraph over vertices 0..n_vertices-1. Members of each
/// hyperedge are kept sorted and duplicate-free.
class Hypergraph {
public:
    Hypergraph() = default;

    Hypergraph(int n_vertices, std::vector<std::vector<int>> edges, std::vector<double> weights = {})
        : n_(n_vertices), edges_(std::move(edges)), weights_(std::move(weights))
    {
        if (n_ < 0)
            throw InputError("hypergraph: negative vertex count");
        if (weights_.empty())
            weights_.assign(edges_.size(), 1.0);
        if (weights_.size() != edges_.size())
            throw InputError("hypergraph: one weight per hyperedge required");
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            auto& m = edges_[e];
            if (m.empty())
                throw InputError("hypergraph: hyperedge " + std::to_string(e) + " is empty");
            std::sort(m.begin(), m.end());
            m.erase(std::unique(m.begin(), m.end()), m.end());
            for (int v : m)
                if (v < 0 || v >= n_)
                    throw InputError("hypergraph: vertex " + std::to_string(v) + " out of range");
            if (!(weights_[e] > 0.0))
                throw InputError("hypergraph: weights must be positive");
        }
    }

    int n_vertices() const noexcept { return n_; }
    Index n_edges() const noexcept { return static_cast<Index>(edges_.size()); }
    const std::vector<std::vector<int>>& edges() const noexcept { return edges_; }
    const std::vector<int>& edge(Index e) const { return edges_[static_cast<std::size_t>(e)]; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    double weight(Index e) const { return weights_[static_cast<std::size_t>(e)]; }

    /// Largest hyperedge cardinality (0 without hyperedges).
    int max_cardinality() const
    {
        std::size_t m = 0;
        for (const auto& e : edges_)
            m = std::max(m, e.size());
        return static_cast<int>(m);
    }

    /// k when every hyperedge has exactly k members, else 0.
    int uniformity() const
    {
        if (edges_.empty())
            return 0;
        const std::size_t k = edges_.front().size();
        for (const auto& e : edges_)
            if (e.size() != k)
                return 0;
        return static_cast<int>(k);
    }

    /// Number of hyperedges containing each vertex.
    std::vector<int> degrees() const
    {
        std::vector<int> d(static_cast<std::size_t>(n_), 0);
        for (const auto& e : edges_)
            for (int v : e)
                ++d[static_cast<std::size_t>(v)];
        return d;
    }

    /// Pairs (i, j), i < j, of hyperedges with identical members.
    std::vector<std::pair<Index, Index>> duplicate_hyperedges() const
    {
        std::vector<std::pair<Index, Index>> out;
        for (std::size_t i = 0; i < edges_.size(); ++i)
            for (std::size_t j = i + 1; j < edges_.size(); ++j)
                if (edges_[i] == edges_[j])
                    out.emplace_back(static_cast<Index>(i), static_cast<Index>(j));
        return out;
    }

    friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

private:
    int n_ = 0;
    std::vector<std::vector<int>> edges_;
    std::vector<double> weights_;
};

/// Z (|V| x |E|), Z(v, e) = 1 iff v in e.
inline Matrix incidence(const Hypergraph& h)
{
    Matrix z = Matrix::Zero(h.n_vertices(), h.n_edges());
    for (Index e = 0; e < h.n_edges(); ++e)
        for (int v : h.edge(e))
            z(v, e) = 1.0;
    return z;
}

/// Diagonal of W.
inline Vector edge_weights(const Hypergraph& h)
{
    Vector w(h.n_edges());
    for (Index e = 0; e < h.n_edges(); ++e)
        w(e) = h.weight(e);
    return w;
}

enum class ExpansionKind { star, clique, line_graph, line_expansion };

struct NodeOrigin {
    enum class Kind { vertex, hyperedge, incidence };
    Kind kind = Kind::vertex;
    int vertex = -1;
    int hyperedge = -1;

    friend bool operator==(const NodeOrigin&, const NodeOrigin&) = default;
};

struct ExpansionGraph {
    Matrix adjacency;
    std::vector<NodeOrigin> origin;
};

inline ExpansionGraph expand(const Hypergraph& h, ExpansionKind kind)
{
    const Matrix z = incidence(h);
    const Vector w = edge_weights(h);
    const Index nv = h.n_vertices();
    const Index ne = h.n_edges();
    ExpansionGraph g;
    switch (kind) {
    case ExpansionKind::star: {
        g.adjacency = Matrix::Zero(nv + ne, nv + ne);
        const Matrix zw = z * w.asDiagonal();
        g.adjacency.topRightCorner(nv, ne) = zw;
        g.adjacency.bottomLeftCorner(ne, nv) = zw.transpose();
        for (Index v = 0; v < nv; ++v)
            g.origin.push_back({NodeOrigin::Kind::vertex, static_cast<int>(v), -1});
        for (Index e = 0; e < ne; ++e)
            g.origin.push_back({NodeOrigin::Kind::hyperedge, -1, static_cast<int>(e)});
        break;
    }
    case ExpansionKind::clique: {
        g.adjacency = z * w.asDiagonal() * z.transpose();
        g.adjacency.diagonal().setZero();
        for (Index v = 0; v < nv; ++v)
            g.origin.push_back({NodeOrigin::Kind::vertex, static_cast<int>(v), -1});
        break;
    }
    case ExpansionKind::line_graph: {
        g.adjacency = z.transpose() * z;
        g.adjacency.diagonal().setZero();
        for (Index e = 0; e < ne; ++e)
            g.origin.push_back({NodeOrigin::Kind::hyperedge, -1, static_cast<int>(e)});
        break;
    }
    case ExpansionKind::line_expansion: {
        for (Index e = 0; e < ne; ++e)
            for (int v : h.edge(e))
                g.origin.push_back({NodeOrigin::Kind::incidence, v, static_cast<int>(e)});
        const Index n = static_cast<Index>(g.origin.size());
        g.adjacency = Matrix::Zero(n, n);
        for (Index i = 0; i < n; ++i)
            for (Index j = i + 1; j < n; ++j) {
                const auto& a = g.origin[static_cast<std::size_t>(i)];
                const auto& b = g.origin[static_cast<std::size_t>(j)];
                if (a.vertex == b.vertex || a.hyperedge == b.hyperedge)
                    g.adjacency(i, j) = g.adjacency(j, i) = 1.0;
            }
        break;
    }
    }
    return g;
}

/// Vertices and hyperedges swap roles: incidence Z^T, unit weights.
inline Hypergraph dual(const Hypergraph& h)
{
    std::vector<std::vector<int>> edges(static_cast<std::size_t>(h.n_vertices()));
    for (Index e = 0; e < h.n_edges(); ++e)
        for (int v : h.edge(e))
            edges[static_cast<std::size_t>(v)].push_back(static_cast<int>(e));
    for (int v = 0; v < h.n_vertices(); ++v)
        if (edges[static_cast<std::size_t>(v)].empty())
            throw InputError("dual: vertex " + std::to_string(v) + " belongs to no hyperedge");
    return Hypergraph(static_cast<int>(h.n_edges()), std::move(edges));
}

/// D - A, or the symmetric-normalized form with isolated rows left zero.
inline Matrix expansion_laplacian(const ExpansionGraph& g, bool normalized)
{
    return normalized ? normalized_laplacian_from_adjacency(g.adjacency) : laplacian_from_adjacency(g.adjacency);
}

}  // namespace hosp
