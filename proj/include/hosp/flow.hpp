#pragma once

#include <algorithm>
#include <queue>
#include <string>
#include <vector>

#include "hosp/complex.hpp"
#include "hosp/hodge.hpp"
#include "hosp/linalg.hpp"
#include "hosp/spectral.hpp"

namespace hosp {

/// (I + alpha L)^{-1} y.
inline Vector denoise_node(const Matrix& laplacian, const Vector& y, double alpha)
{
    detail::require_square(laplacian, "denoise_node");
    detail::require_size(y.size(), laplacian.rows(), "denoise_node");
    if (!(alpha > 0.0))
        throw InputError("denoise_node: alpha must be positive");
    const Index n = laplacian.rows();
    return spd_solve(Matrix::Identity(n, n) + alpha * laplacian, y);
}

/// (I - mu L)^k y, requiring 0 < mu < 2 / lambda_max(L).
inline Vector iterative_smooth(const Matrix& laplacian, const Vector& y, double mu, int k)
{
    detail::require_square(laplacian, "iterative_smooth");
    detail::require_size(y.size(), laplacian.rows(), "iterative_smooth");
    if (k < 0)
        throw InputError("iterative_smooth: k must be non-negative");
    const double lmax = laplacian.rows() == 0 ? 0.0 : sym_eig(laplacian).lambda_max();
    if (!(mu > 0.0) || (lmax > 0.0 && !(mu < 2.0 / lmax)))
        throw InputError("iterative_smooth: unstable step mu (need 0 < mu < 2/lambda_max = " +
                         std::to_string(lmax > 0 ? 2.0 / lmax : 0.0) + ")");
    Vector out = y;
    for (int i = 0; i < k; ++i)
        out -= mu * (laplacian * out);
    return out;
}

enum class FlowOperator { hodge, edge, linegraph };

inline Matrix flow_operator(const SimplicialComplex& x, FlowOperator kind)
{
    switch (kind) {
    case FlowOperator::hodge: return hodge_laplacian(x, 1);
    case FlowOperator::edge: return edge_laplacian(x);
    case FlowOperator::linegraph: return line_graph_laplacian(x);
    }
    throw InputError("unknown flow operator");
}

/// (I + alpha Q)^{-1} f with Q the chosen edge-space regularizer.
inline Vector denoise_flow(const SimplicialComplex& x, const Vector& f, double alpha, FlowOperator kind)
{
    if (x.top_order() < 1)
        throw InputError("denoise_flow: complex has no edges");
    detail::require_size(f.size(), x.count(1), "denoise_flow");
    return denoise_node(flow_operator(x, kind), f, alpha);
}

/// Known values on a subset of indices 0..size-1.
struct LabeledSignal {
    Index size = 0;
    std::vector<Index> indices;
    std::vector<double> values;

    void check(const char* what) const
    {
        if (indices.size() != values.size())
            throw InputError(std::string(what) + ": label index/value count mismatch");
        std::vector<Index> sorted = indices;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw InputError(std::string(what) + ": duplicate label index");
        for (Index i : sorted)
            if (i < 0 || i >= size)
                throw InputError(std::string(what) + ": label index " + std::to_string(i) + " out of range");
    }

    std::vector<Index> unlabeled() const
    {
        std::vector<bool> known(static_cast<std::size_t>(size), false);
        for (Index i : indices)
            known[static_cast<std::size_t>(i)] = true;
        std::vector<Index> out;
        for (Index i = 0; i < size; ++i)
            if (!known[static_cast<std::size_t>(i)])
                out.push_back(i);
        return out;
    }

    /// Labeled values in place, zeros elsewhere.
    Vector extension() const
    {
        Vector f0 = Vector::Zero(size);
        for (std::size_t i = 0; i < indices.size(); ++i)
            f0(indices[i]) = values[i];
        return f0;
    }
};

using LabeledFlow = LabeledSignal;

/// Semi-supervised edge flow: minimize ||B_1 f||^2 (+ ||B_2^T f||^2) +
/// alpha^2 ||f_U||^2 over the unlabeled entries; labeled entries are
/// copied verbatim.
inline Vector interpolate_flow(const SimplicialComplex& x, const LabeledFlow& labels, double alpha, bool use_triangles)
{
    if (x.top_order() < 1)
        throw InputError("interpolate_flow: complex has no edges");
    detail::require_size(labels.size, x.count(1), "interpolate_flow");
    labels.check("interpolate_flow");
    if (!(alpha > 0.0))
        throw InputError("interpolate_flow: alpha must be positive");
    const Vector f0 = labels.extension();
    const std::vector<Index> free = labels.unlabeled();
    if (free.empty())
        return f0;

    const Matrix b1 = boundary_dense(x, 1);
    Matrix q = b1.transpose() * b1;
    if (use_triangles) {
        const Matrix b2 = boundary_dense(x, 2);
        q += b2 * b2.transpose();
    }
    const Index u = static_cast<Index>(free.size());
    Matrix quu(u, u);
    Vector rhs(u);
    const Vector qf0 = q * f0;
    for (Index i = 0; i < u; ++i) {
        rhs(i) = -qf0(free[static_cast<std::size_t>(i)]);
        for (Index j = 0; j < u; ++j)
            quu(i, j) = q(free[static_cast<std::size_t>(i)], free[static_cast<std::size_t>(j)]);
        quu(i, i) += alpha * alpha;
    }
    const Vector fu = spd_solve(quu, rhs);
    Vector out = f0;
    for (Index i = 0; i < u; ++i)
        out(free[static_cast<std::size_t>(i)]) = fu(i);
    return out;
}

/// B_1 f: net inflow minus outflow at every node.
inline Vector divergence(const SimplicialComplex& x, const Vector& f)
{
    detail::require_size(f.size(), x.count(1), "divergence");
    if (x.count(1) == 0)
        return Vector::Zero(x.count(0));
    return boundary_matrix(x, 1).matrix.cast<double>() * f;
}

struct Trajectory {
    std::vector<int> vertices;
};

/// +1 per traversal along the reference orientation, -1 against.
inline Vector trajectory_flow(const SimplicialComplex& x, const Trajectory& t)
{
    Vector f = Vector::Zero(x.count(1));
    for (std::size_t i = 1; i < t.vertices.size(); ++i) {
        const int a = t.vertices[i - 1];
        const int b = t.vertices[i];
        const auto e = a == b ? std::nullopt : x.edge_index(a, b);
        if (!e)
            throw InputError("trajectory step " + std::to_string(a) + " -> " + std::to_string(b) +
                             " is not an edge");
        f(*e) += a < b ? 1.0 : -1.0;
    }
    return f;
}

/// Cumulative harmonic coordinates along the trajectory. Row 0 is the
/// origin, row i the embedding after i steps.
inline Matrix embed_trajectory(const SimplicialComplex& x, const Trajectory& t, const Matrix& harmonic)
{
    detail::require_size(harmonic.rows(), x.count(1), "embed_trajectory");
    if (harmonic.cols() == 0)
        throw InputError("embed_trajectory: empty harmonic space");
    const Index steps = t.vertices.empty() ? 0 : static_cast<Index>(t.vertices.size()) - 1;
    Matrix out = Matrix::Zero(steps + 1, harmonic.cols());
    for (Index i = 1; i <= steps; ++i) {
        const int a = t.vertices[static_cast<std::size_t>(i - 1)];
        const int b = t.vertices[static_cast<std::size_t>(i)];
        const auto e = a == b ? std::nullopt : x.edge_index(a, b);
        if (!e)
            throw InputError("trajectory step " + std::to_string(a) + " -> " + std::to_string(b) +
                             " is not an edge");
        out.row(i) = out.row(i - 1) + (a < b ? 1.0 : -1.0) * harmonic.row(*e);
    }
    return out;
}

inline Matrix embed_trajectory(const SimplicialComplex& x, const Trajectory& t)
{
    return embed_trajectory(x, t, harmonic_basis(x));
}

/// Harmonic extension: minimize s^T L s with s fixed on the labeled nodes.
inline Vector interpolate_node(const Matrix& laplacian, const LabeledSignal& labels)
{
    detail::require_square(laplacian, "interpolate_node");
    detail::require_size(labels.size, laplacian.rows(), "interpolate_node");
    labels.check("interpolate_node");
    const Index n = laplacian.rows();
    const Vector y0 = labels.extension();
    const std::vector<Index> free = labels.unlabeled();
    if (free.empty())
        return y0;

    std::vector<bool> reached(static_cast<std::size_t>(n), false);
    std::queue<Index> frontier;
    for (Index i : labels.indices) {
        reached[static_cast<std::size_t>(i)] = true;
        frontier.push(i);
    }
    while (!frontier.empty()) {
        const Index i = frontier.front();
        frontier.pop();
        for (Index j = 0; j < n; ++j)
            if (j != i && laplacian(i, j) != 0.0 && !reached[static_cast<std::size_t>(j)]) {
                reached[static_cast<std::size_t>(j)] = true;
                frontier.push(j);
            }
    }
    for (Index i = 0; i < n; ++i)
        if (!reached[static_cast<std::size_t>(i)])
            throw InputError("interpolate_node: node " + std::to_string(i) + " lies in a component without labels");

    const Index u = static_cast<Index>(free.size());
    Matrix luu(u, u);
    Vector rhs(u);
    const Vector ly0 = laplacian * y0;
    for (Index i = 0; i < u; ++i) {
        rhs(i) = -ly0(free[static_cast<std::size_t>(i)]);
        for (Index j = 0; j < u; ++j)
            luu(i, j) = laplacian(free[static_cast<std::size_t>(i)], free[static_cast<std::size_t>(j)]);
    }
    const Vector yu = spd_solve(luu, rhs);
    Vector out = y0;
    for (Index i = 0; i < u; ++i)
        out(free[static_cast<std::size_t>(i)]) = yu(i);
    return out;
}

}  // namespace hosp
