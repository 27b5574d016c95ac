#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hosp/common.hpp"

namespace hosp {

/// A simplex is its vertex tuple, strictly ascending. The ascending order
/// is the reference orientation.
using Simplex = std::vector<int>;

/// Oriented simplicial complex with canonical (lexicographic) indexing per
/// order. Order 0 always lists every vertex 0..n_vertices-1.
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    /// Wraps already-enumerated simplices without checking closure or
    /// ordering; run validate() on the result. by_order[k] holds the
    /// k-simplices for k >= 1 (by_order[0] is ignored and regenerated).
    static SimplicialComplex from_simplices(int n_vertices, std::vector<std::vector<Simplex>> by_order)
    {
        detail::require(n_vertices >= 0, "n_vertices must be non-negative");
        SimplicialComplex x;
        x.n_vertices_ = n_vertices;
        if (by_order.empty())
            by_order.resize(1);
        by_order[0].clear();
        for (int v = 0; v < n_vertices; ++v)
            by_order[0].push_back({v});
        while (by_order.size() > 1 && by_order.back().empty())
            by_order.pop_back();
        x.simplices_ = std::move(by_order);
        if (n_vertices == 0 && x.simplices_.size() == 1)
            x.simplices_.clear();
        return x;
    }

    int n_vertices() const noexcept { return n_vertices_; }

    /// Highest order with at least one simplex; -1 for the empty complex.
    int top_order() const noexcept { return static_cast<int>(simplices_.size()) - 1; }

    Index count(int k) const noexcept
    {
        if (k < 0 || k > top_order())
            return 0;
        return static_cast<Index>(simplices_[static_cast<std::size_t>(k)].size());
    }

    const std::vector<Simplex>& simplices(int k) const
    {
        static const std::vector<Simplex> none;
        if (k < 0 || k > top_order())
            return none;
        return simplices_[static_cast<std::size_t>(k)];
    }

    /// Canonical index of a k-simplex given as an ascending tuple.
    std::optional<Index> index_of(const Simplex& s) const
    {
        const int k = static_cast<int>(s.size()) - 1;
        const auto& list = simplices(k);
        auto it = std::lower_bound(list.begin(), list.end(), s);
        if (it == list.end() || *it != s)
            return std::nullopt;
        return static_cast<Index>(it - list.begin());
    }

    /// Index of the edge {i, j}, either argument order.
    std::optional<Index> edge_index(int i, int j) const
    {
        if (i > j)
            std::swap(i, j);
        return index_of({i, j});
    }

    /// Maximal simplices (not a face of any other simplex), by order then
    /// lexicographically. Vertices contained in an edge are not maximal.
    std::vector<Simplex> facets() const
    {
        std::vector<Simplex> out;
        std::set<Simplex> covered;
        for (int k = top_order(); k >= 0; --k) {
            for (const auto& s : simplices(k)) {
                if (!covered.count(s))
                    out.push_back(s);
                if (k == 0)
                    continue;
                for (std::size_t j = 0; j < s.size(); ++j) {
                    Simplex face;
                    face.reserve(s.size() - 1);
                    for (std::size_t i = 0; i < s.size(); ++i)
                        if (i != j)
                            face.push_back(s[i]);
                    covered.insert(std::move(face));
                }
            }
        }
        std::sort(out.begin(), out.end(), [](const Simplex& a, const Simplex& b) {
            return a.size() != b.size() ? a.size() < b.size() : a < b;
        });
        return out;
    }

    friend bool operator==(const SimplicialComplex&, const SimplicialComplex&) = default;

private:
    int n_vertices_ = 0;
    std::vector<std::vector<Simplex>> simplices_;
};

/// Closure of a facet list: every facet and all of its nonempty subsets.
/// Facets are vertex sets (duplicates inside a facet collapse).
inline SimplicialComplex build_complex(const std::vector<std::vector<int>>& facets, int n_vertices)
{
    detail::require(n_vertices >= 0, "n_vertices must be non-negative");
    std::vector<std::set<Simplex>> by_order(1);
    for (const auto& raw : facets) {
        if (raw.empty())
            throw InputError("empty facet");
        Simplex f = raw;
        std::sort(f.begin(), f.end());
        f.erase(std::unique(f.begin(), f.end()), f.end());
        for (int v : f)
            if (v < 0 || v >= n_vertices)
                throw InputError("facet vertex " + std::to_string(v) + " out of range [0, " +
                                 std::to_string(n_vertices) + ")");
        if (f.size() > 24)
            throw InputError("facet with more than 24 vertices");
        const std::size_t n = f.size();
        if (by_order.size() < n)
            by_order.resize(n);
        for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
            Simplex s;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1UL << i))
                    s.push_back(f[i]);
            if (s.size() >= 2)
                by_order[s.size() - 1].insert(std::move(s));
        }
    }
    std::vector<std::vector<Simplex>> lists(by_order.size());
    for (std::size_t k = 1; k < by_order.size(); ++k)
        lists[k].assign(by_order[k].begin(), by_order[k].end());
    return SimplicialComplex::from_simplices(n_vertices, std::move(lists));
}

struct ValidationReport {
    bool ok = true;
    std::string message;
    int order = -1;
    Simplex simplex;
};

/// First ordering or inclusion-closure violation, if any.
inline ValidationReport validate(const SimplicialComplex& x)
{
    auto fail = [](std::string msg, int k, Simplex s) {
        return ValidationReport{false, std::move(msg), k, std::move(s)};
    };
    for (int k = 1; k <= x.top_order(); ++k) {
        const auto& list = x.simplices(k);
        for (std::size_t i = 0; i < list.size(); ++i) {
            const Simplex& s = list[i];
            if (s.size() != static_cast<std::size_t>(k + 1))
                return fail("simplex has wrong cardinality for its order", k, s);
            for (std::size_t j = 0; j < s.size(); ++j) {
                if (s[j] < 0 || s[j] >= x.n_vertices())
                    return fail("vertex out of range", k, s);
                if (j > 0 && s[j - 1] >= s[j])
                    return fail("simplex is not strictly ascending", k, s);
            }
            if (i > 0 && !(list[i - 1] < s))
                return fail("simplex list not sorted or has duplicates", k, s);
        }
    }
    for (int k = 1; k <= x.top_order(); ++k) {
        for (const auto& s : x.simplices(k)) {
            for (std::size_t j = 0; j < s.size(); ++j) {
                Simplex face;
                for (std::size_t i = 0; i < s.size(); ++i)
                    if (i != j)
                        face.push_back(s[i]);
                if (!x.index_of(face))
                    return fail("missing face of simplex", k, s);
            }
        }
    }
    return {};
}

/// Signed boundary operator B_k : C_k -> C_{k-1}, N_{k-1} x N_k.
struct BoundaryMatrix {
    int order = 0;
    SparseInt matrix;

    Matrix dense() const { return to_dense(matrix); }
};

/// Entry (f, s) = (-1)^j where f is s with its j-th vertex removed.
inline BoundaryMatrix boundary_matrix(const SimplicialComplex& x, int k)
{
    if (k < 1 || k > x.top_order())
        throw InputError("boundary order " + std::to_string(k) + " out of range [1, " +
                         std::to_string(x.top_order()) + "]");
    const auto& cols = x.simplices(k);
    std::vector<Eigen::Triplet<int>> trips;
    trips.reserve(cols.size() * static_cast<std::size_t>(k + 1));
    Simplex face(static_cast<std::size_t>(k));
    for (std::size_t c = 0; c < cols.size(); ++c) {
        const Simplex& s = cols[c];
        for (std::size_t j = 0; j < s.size(); ++j) {
            std::size_t w = 0;
            for (std::size_t i = 0; i < s.size(); ++i)
                if (i != j)
                    face[w++] = s[i];
            auto row = x.index_of(face);
            if (!row)
                throw InputError("complex is not closed under faces; run validate()");
            trips.emplace_back(static_cast<int>(*row), static_cast<int>(c), (j % 2 == 0) ? 1 : -1);
        }
    }
    BoundaryMatrix b;
    b.order = k;
    b.matrix.resize(x.count(k - 1), x.count(k));
    b.matrix.setFromTriplets(trips.begin(), trips.end());
    return b;
}

/// B_k as dense doubles, with the conventions B_0 = 0 (0 x N_0) and
/// B_{K+1} = 0 (N_K x 0).
inline Matrix boundary_dense(const SimplicialComplex& x, int k)
{
    if (k <= 0)
        return Matrix::Zero(0, x.count(0));
    if (k > x.top_order())
        return Matrix::Zero(x.count(k - 1), 0);
    return boundary_matrix(x, k).dense();
}

}  // namespace hosp
