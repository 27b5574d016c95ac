#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "hosp/complex.hpp"
#include "hosp/linalg.hpp"
#include "hosp/spectral.hpp"

namespace hosp {

/// L_k = B_k^T B_k + B_{k+1} B_{k+1}^T, with B_0 = 0 and B_{K+1} = 0.
inline Matrix hodge_laplacian(const SimplicialComplex& x, int k)
{
    if (k < 0 || k > x.top_order())
        throw InputError("hodge_laplacian: order " + std::to_string(k) + " out of range [0, " +
                         std::to_string(x.top_order()) + "]");
    const Matrix down = boundary_dense(x, k);
    const Matrix up = boundary_dense(x, k + 1);
    return down.transpose() * down + up * up.transpose();
}

/// B_1^T B_1.
inline Matrix edge_laplacian(const SimplicialComplex& x)
{
    if (x.top_order() < 1)
        throw InputError("edge_laplacian: complex has no edges");
    const Matrix b1 = boundary_dense(x, 1);
    return b1.transpose() * b1;
}

/// Adjacency of the unweighted line graph of the 1-skeleton.
inline Matrix line_graph_adjacency(const SimplicialComplex& x)
{
    if (x.top_order() < 1)
        throw InputError("line_graph_laplacian: complex has no edges");
    const auto& edges = x.simplices(1);
    const Index e = static_cast<Index>(edges.size());
    Matrix a = Matrix::Zero(e, e);
    for (Index i = 0; i < e; ++i)
        for (Index j = i + 1; j < e; ++j) {
            const auto& p = edges[static_cast<std::size_t>(i)];
            const auto& q = edges[static_cast<std::size_t>(j)];
            if (p[0] == q[0] || p[0] == q[1] || p[1] == q[0] || p[1] == q[1])
                a(i, j) = a(j, i) = 1.0;
        }
    return a;
}

inline Matrix line_graph_laplacian(const SimplicialComplex& x)
{
    return laplacian_from_adjacency(line_graph_adjacency(x));
}

struct HodgeDecomposition {
    Vector gradient;
    Vector curl;
    Vector harmonic;
    Vector node_potentials;
    Vector triangle_potentials;
};

/// Orthogonal split f = B_1^T p + B_2 w + h with minimum-norm potentials.
inline HodgeDecomposition hodge_decompose(const SimplicialComplex& x, const Vector& f)
{
    if (x.top_order() < 1)
        throw InputError("hodge_decompose: complex has no edges");
    detail::require_size(f.size(), x.count(1), "hodge_decompose");
    const Matrix b1 = boundary_dense(x, 1);
    const Matrix b2 = boundary_dense(x, 2);
    HodgeDecomposition d;
    d.node_potentials = min_norm_lstsq(b1.transpose(), f);
    d.triangle_potentials = min_norm_lstsq(b2, f);
    d.gradient = b1.transpose() * d.node_potentials;
    d.curl = b2 * d.triangle_potentials;
    d.harmonic = f - d.gradient - d.curl;
    return d;
}

inline constexpr double harmonic_threshold = 1e-9;

/// Orthonormal basis of ker(L_1): eigenvectors with |lambda| < 1e-9 lambda_max.
inline Matrix harmonic_basis(const SimplicialComplex& x)
{
    const Matrix l1 = hodge_laplacian(x, 1);
    if (l1.rows() == 0)
        return Matrix(0, 0);
    const SpectralBasis basis = sym_eig(l1);
    const double tol = harmonic_threshold * basis.lambda_max();
    Index count = 0;
    while (count < basis.size() && std::abs(basis.eigenvalues(count)) < tol)
        ++count;
    return basis.eigenvectors.leftCols(count);
}

enum class ModeKind { gradient, curl, harmonic };

inline const char* to_string(ModeKind k)
{
    switch (k) {
    case ModeKind::gradient: return "gradient";
    case ModeKind::curl: return "curl";
    case ModeKind::harmonic: return "harmonic";
    }
    return "?";
}

/// Eigenbasis of L_1 assembled from lifted L_0 and B_2^T B_2 eigenvectors.
struct LabeledBasis {
    SpectralBasis basis;
    std::vector<ModeKind> tags;

    Index count(ModeKind k) const { return std::count(tags.begin(), tags.end(), k); }
};

/// Gradient modes B_1^T v / sqrt(lambda) for nonzero eigenpairs of L_0,
/// curl modes B_2 t / sqrt(theta) for nonzero eigenpairs of B_2^T B_2, and
/// the harmonic kernel. Sorted by eigenvalue; ties keep harmonic, gradient,
/// curl order.
inline LabeledBasis spectral_components(const SimplicialComplex& x)
{
    if (x.top_order() < 1)
        throw InputError("spectral_components: complex has no edges");
    const Matrix b1 = boundary_dense(x, 1);
    const Matrix b2 = boundary_dense(x, 2);
    const Index n1 = x.count(1);
    const SpectralBasis node = sym_eig(b1 * b1.transpose());
    const SpectralBasis tri = b2.cols() > 0 ? sym_eig(b2.transpose() * b2) : SpectralBasis{};
    const double top = std::max(node.lambda_max(), tri.lambda_max());
    const double tol = harmonic_threshold * top;

    std::vector<double> values;
    std::vector<Vector> vectors;
    std::vector<ModeKind> tags;
    const Matrix harm = harmonic_basis(x);
    for (Index c = 0; c < harm.cols(); ++c) {
        values.push_back(0.0);
        vectors.push_back(harm.col(c));
        tags.push_back(ModeKind::harmonic);
    }
    for (Index i = 0; i < node.size(); ++i) {
        const double lam = node.eigenvalues(i);
        if (lam <= tol)
            continue;
        values.push_back(lam);
        vectors.push_back(b1.transpose() * node.eigenvectors.col(i) / std::sqrt(lam));
        tags.push_back(ModeKind::gradient);
    }
    for (Index i = 0; i < tri.size(); ++i) {
        const double th = tri.eigenvalues(i);
        if (th <= tol)
            continue;
        values.push_back(th);
        vectors.push_back(b2 * tri.eigenvectors.col(i) / std::sqrt(th));
        tags.push_back(ModeKind::curl);
    }
    if (static_cast<Index>(values.size()) != n1)
        throw NumericalError("spectral_components: lifted modes do not span the edge space (" +
                             std::to_string(values.size()) + " of " + std::to_string(n1) + ")");

    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    LabeledBasis out;
    out.basis.eigenvalues.resize(n1);
    out.basis.eigenvectors.resize(n1, n1);
    for (std::size_t r = 0; r < order.size(); ++r) {
        out.basis.eigenvalues(static_cast<Index>(r)) = values[order[r]];
        out.basis.eigenvectors.col(static_cast<Index>(r)) = vectors[order[r]];
        out.tags.push_back(tags[order[r]]);
    }
    detail::canonicalize_signs(out.basis.eigenvectors);
    return out;
}

}  // namespace hosp
