#pragma once

#include "hosp/common.hpp"
#include "hosp/spectral.hpp"

namespace hosp {

/// Solve A x = b for symmetric positive definite A (Cholesky).
inline Vector spd_solve(const Matrix& a, const Vector& b)
{
    detail::require_square(a, "spd_solve");
    detail::require_size(b.size(), a.rows(), "spd_solve");
    Eigen::LLT<Matrix> llt(a);
    if (llt.info() != Eigen::Success)
        throw NumericalError("spd_solve: matrix is not positive definite");
    return llt.solve(b);
}

inline Matrix spd_solve(const Matrix& a, const Matrix& b)
{
    detail::require_square(a, "spd_solve");
    detail::require_size(b.rows(), a.rows(), "spd_solve");
    Eigen::LLT<Matrix> llt(a);
    if (llt.info() != Eigen::Success)
        throw NumericalError("spd_solve: matrix is not positive definite");
    return llt.solve(b);
}

/// Moore-Penrose pseudoinverse of a symmetric PSD matrix; eigenvalues below
/// cutoff * max(1, lambda_max) are treated as zero.
inline Matrix psd_pinv(const Matrix& g, double cutoff = 1e-10)
{
    const Index n = g.rows();
    if (n == 0)
        return Matrix(0, 0);
    const SpectralBasis basis = sym_eig(0.5 * (g + g.transpose()));
    const double tol = cutoff * std::max(1.0, std::abs(basis.lambda_max()));
    Vector inv = Vector::Zero(n);
    for (Index k = 0; k < n; ++k)
        if (basis.eigenvalues(k) > tol)
            inv(k) = 1.0 / basis.eigenvalues(k);
    return basis.eigenvectors * inv.asDiagonal() * basis.eigenvectors.transpose();
}

/// Minimum-norm least-squares solution of A x ~ b via the normal equations.
inline Vector min_norm_lstsq(const Matrix& a, const Vector& b, double cutoff = 1e-10)
{
    detail::require_size(b.size(), a.rows(), "min_norm_lstsq");
    if (a.cols() == 0)
        return Vector(0);
    return psd_pinv(a.transpose() * a, cutoff) * (a.transpose() * b);
}

/// Numerical rank from the Gram eigenvalues.
inline Index numerical_rank(const Matrix& a, double cutoff = 1e-10)
{
    if (a.rows() == 0 || a.cols() == 0)
        return 0;
    const Matrix g = a.cols() <= a.rows() ? Matrix(a.transpose() * a) : Matrix(a * a.transpose());
    const SpectralBasis basis = sym_eig(g);
    const double tol = cutoff * std::max(1.0, basis.lambda_max());
    Index r = 0;
    for (Index k = 0; k < basis.size(); ++k)
        r += basis.eigenvalues(k) > tol ? 1 : 0;
    return r;
}

}  // namespace hosp
