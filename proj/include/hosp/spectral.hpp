#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "hosp/common.hpp"

namespace hosp {

/// Ascending eigenvalues with orthonormal eigenvector columns.
struct SpectralBasis {
    Vector eigenvalues;
    Matrix eigenvectors;

    Index size() const noexcept { return eigenvalues.size(); }
    double lambda_max() const { return size() == 0 ? 0.0 : eigenvalues(size() - 1); }
};

enum class EigenMethod {
    automatic,   ///< Jacobi up to jacobi_limit, tridiagonal QL above
    jacobi,      ///< cyclic Jacobi rotations
    tridiagonal  ///< Householder reduction + implicit-shift QL
};

inline constexpr Index jacobi_limit = 200;

namespace detail {

/// Cyclic-by-row Jacobi. Overwrites a with a diagonal matrix.
inline void jacobi_eigen(Matrix& a, Matrix& v)
{
    const Index n = a.rows();
    v.setIdentity(n, n);
    const double scale = std::max(a.norm(), 1e-300);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (Index p = 0; p < n; ++p)
            for (Index q = p + 1; q < n; ++q)
                off += a(p, q) * a(p, q);
        if (std::sqrt(off) <= 1e-15 * scale)
            return;
        for (Index p = 0; p < n - 1; ++p) {
            for (Index q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0)
                    continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0)
                    t = -t;
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);
                a(p, p) -= t * apq;
                a(q, q) += t * apq;
                a(p, q) = a(q, p) = 0.0;
                for (Index r = 0; r < n; ++r) {
                    if (r == p || r == q)
                        continue;
                    const double arp = a(r, p);
                    const double arq = a(r, q);
                    a(r, p) = a(p, r) = arp - s * (arq + tau * arp);
                    a(r, q) = a(q, r) = arq + s * (arp - tau * arq);
                }
                for (Index r = 0; r < n; ++r) {
                    const double vrp = v(r, p);
                    const double vrq = v(r, q);
                    v(r, p) = vrp - s * (vrq + tau * vrp);
                    v(r, q) = vrq + s * (vrp - tau * vrq);
                }
            }
        }
    }
    throw NumericalError("Jacobi eigensolver did not converge in 100 sweeps");
}

/// Householder tridiagonalization followed by implicit QL (EISPACK
/// tred2/tql2 lineage). On entry v holds the symmetric matrix; on exit v
/// holds eigenvectors and d the (unsorted) eigenvalues.
inline void tridiagonal_eigen(Matrix& v, Vector& d)
{
    const Index n = v.rows();
    d.resize(n);
    Vector e = Vector::Zero(n);
    if (n == 0)
        return;
    for (Index j = 0; j < n; ++j)
        d(j) = v(n - 1, j);

    for (Index i = n - 1; i > 0; --i) {
        double scale = 0.0;
        double h = 0.0;
        for (Index k = 0; k < i; ++k)
            scale += std::abs(d(k));
        if (scale == 0.0) {
            e(i) = d(i - 1);
            for (Index j = 0; j < i; ++j) {
                d(j) = v(i - 1, j);
                v(i, j) = 0.0;
                v(j, i) = 0.0;
            }
        } else {
            for (Index k = 0; k < i; ++k) {
                d(k) /= scale;
                h += d(k) * d(k);
            }
            double f = d(i - 1);
            double g = std::sqrt(h);
            if (f > 0)
                g = -g;
            e(i) = scale * g;
            h -= f * g;
            d(i - 1) = f - g;
            for (Index j = 0; j < i; ++j)
                e(j) = 0.0;
            for (Index j = 0; j < i; ++j) {
                f = d(j);
                v(j, i) = f;
                g = e(j) + v(j, j) * f;
                for (Index k = j + 1; k <= i - 1; ++k) {
                    g += v(k, j) * d(k);
                    e(k) += v(k, j) * f;
                }
                e(j) = g;
            }
            f = 0.0;
            for (Index j = 0; j < i; ++j) {
                e(j) /= h;
                f += e(j) * d(j);
            }
            const double hh = f / (h + h);
            for (Index j = 0; j < i; ++j)
                e(j) -= hh * d(j);
            for (Index j = 0; j < i; ++j) {
                f = d(j);
                g = e(j);
                for (Index k = j; k <= i - 1; ++k)
                    v(k, j) -= (f * e(k) + g * d(k));
                d(j) = v(i - 1, j);
                v(i, j) = 0.0;
            }
        }
        d(i) = h;
    }

    for (Index i = 0; i < n - 1; ++i) {
        v(n - 1, i) = v(i, i);
        v(i, i) = 1.0;
        const double h = d(i + 1);
        if (h != 0.0) {
            for (Index k = 0; k <= i; ++k)
                d(k) = v(k, i + 1) / h;
            for (Index j = 0; j <= i; ++j) {
                double g = 0.0;
                for (Index k = 0; k <= i; ++k)
                    g += v(k, i + 1) * v(k, j);
                for (Index k = 0; k <= i; ++k)
                    v(k, j) -= g * d(k);
            }
        }
        for (Index k = 0; k <= i; ++k)
            v(k, i + 1) = 0.0;
    }
    for (Index j = 0; j < n; ++j) {
        d(j) = v(n - 1, j);
        v(n - 1, j) = 0.0;
    }
    v(n - 1, n - 1) = 1.0;
    e(0) = 0.0;

    // QL with implicit shifts on the tridiagonal (d, e).
    for (Index i = 1; i < n; ++i)
        e(i - 1) = e(i);
    e(n - 1) = 0.0;
    double f = 0.0;
    double tst1 = 0.0;
    const double eps = std::ldexp(1.0, -52);
    for (Index l = 0; l < n; ++l) {
        tst1 = std::max(tst1, std::abs(d(l)) + std::abs(e(l)));
        Index m = l;
        while (m < n) {
            if (std::abs(e(m)) <= eps * tst1)
                break;
            ++m;
        }
        if (m > l) {
            int iter = 0;
            do {
                if (++iter > 300)
                    throw NumericalError("tridiagonal QL did not converge");
                double g = d(l);
                double p = (d(l + 1) - g) / (2.0 * e(l));
                double r = std::hypot(p, 1.0);
                if (p < 0)
                    r = -r;
                d(l) = e(l) / (p + r);
                d(l + 1) = e(l) * (p + r);
                const double dl1 = d(l + 1);
                double h = g - d(l);
                for (Index i = l + 2; i < n; ++i)
                    d(i) -= h;
                f += h;

                p = d(m);
                double c = 1.0, c2 = 1.0, c3 = 1.0;
                const double el1 = e(l + 1);
                double s = 0.0, s2 = 0.0;
                for (Index i = m - 1; i >= l; --i) {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e(i);
                    h = c * p;
                    r = std::hypot(p, e(i));
                    e(i + 1) = s * r;
                    s = e(i) / r;
                    c = p / r;
                    p = c * d(i) - s * g;
                    d(i + 1) = h + s * (c * g + s * d(i));
                    for (Index k = 0; k < n; ++k) {
                        h = v(k, i + 1);
                        v(k, i + 1) = s * v(k, i) + c * h;
                        v(k, i) = c * v(k, i) - s * h;
                    }
                    if (i == 0)
                        break;
                }
                p = -s * s2 * c3 * el1 * e(l) / dl1;
                e(l) = s * p;
                d(l) = c * p;
            } while (std::abs(e(l)) > eps * tst1);
        }
        d(l) += f;
        e(l) = 0.0;
    }
}

/// Flip each column so its largest-magnitude entry is positive; among
/// entries tied within 1e-12 relative, the lowest index decides.
inline void canonicalize_signs(Matrix& u)
{
    for (Index c = 0; c < u.cols(); ++c) {
        const double mx = u.col(c).cwiseAbs().maxCoeff();
        if (mx == 0.0)
            continue;
        for (Index r = 0; r < u.rows(); ++r) {
            if (std::abs(u(r, c)) >= mx * (1.0 - 1e-12)) {
                if (u(r, c) < 0)
                    u.col(c) *= -1.0;
                break;
            }
        }
    }
}

inline void check_symmetric(const Matrix& m, const char* what)
{
    require_square(m, what);
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if (m.size() > 0 && (m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw InputError(std::string(what) + ": matrix is not symmetric");
}

}  // namespace detail

/// Full eigendecomposition of a real symmetric matrix, eigenvalues ascending,
/// eigenvector signs canonicalized. Deterministic for a given input.
inline SpectralBasis sym_eig(const Matrix& m, EigenMethod method = EigenMethod::automatic)
{
    detail::check_symmetric(m, "sym_eig");
    const Index n = m.rows();
    if (method == EigenMethod::automatic)
        method = n <= jacobi_limit ? EigenMethod::jacobi : EigenMethod::tridiagonal;

    Vector values;
    Matrix vectors;
    if (method == EigenMethod::jacobi) {
        Matrix a = 0.5 * (m + m.transpose());
        detail::jacobi_eigen(a, vectors);
        values = a.diagonal();
    } else {
        vectors = 0.5 * (m + m.transpose());
        detail::tridiagonal_eigen(vectors, values);
    }

    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return values(a) < values(b); });
    SpectralBasis out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    for (Index k = 0; k < n; ++k) {
        out.eigenvalues(k) = values(order[static_cast<std::size_t>(k)]);
        out.eigenvectors.col(k) = vectors.col(order[static_cast<std::size_t>(k)]);
    }
    detail::canonicalize_signs(out.eigenvectors);
    return out;
}

inline Vector gft(const SpectralBasis& basis, const Vector& s)
{
    detail::require_size(s.size(), basis.size(), "gft");
    return basis.eigenvectors.transpose() * s;
}

inline Vector igft(const SpectralBasis& basis, const Vector& coefficients)
{
    detail::require_size(coefficients.size(), basis.size(), "igft");
    return basis.eigenvectors * coefficients;
}

using FrequencyResponse = std::function<double(double)>;

/// U h(Lambda) U^T as a dense matrix.
inline Matrix filter_matrix(const SpectralBasis& basis, const FrequencyResponse& h)
{
    Vector response(basis.size());
    for (Index k = 0; k < basis.size(); ++k)
        response(k) = h(basis.eigenvalues(k));
    return basis.eigenvectors * response.asDiagonal() * basis.eigenvectors.transpose();
}

/// Shift-invariant filter U h(Lambda) U^T s.
inline Vector apply_filter(const SpectralBasis& basis, const FrequencyResponse& h, const Vector& s)
{
    Vector coeff = gft(basis, s);
    for (Index k = 0; k < coeff.size(); ++k)
        coeff(k) *= h(basis.eigenvalues(k));
    return igft(basis, coeff);
}

/// s^T M s / s^T s.
inline double rayleigh(const Matrix& m, const Vector& s)
{
    detail::require_square(m, "rayleigh");
    detail::require_size(s.size(), m.rows(), "rayleigh");
    const double ss = s.squaredNorm();
    if (ss == 0.0)
        throw InputError("rayleigh: zero signal");
    return s.dot(m * s) / ss;
}

/// Spectral node coordinates from the d lowest non-trivial eigenvectors of
/// the (optionally symmetric-normalized) Laplacian. The trivial direction
/// (constant, or D^{1/2} 1 when normalized) is projected out before the
/// eigensolve, so disconnected graphs still get separating coordinates.
/// Row i of the result is the embedding of node i.
inline Matrix laplacian_eigenmap(const Matrix& laplacian, Index d, bool normalized)
{
    detail::check_symmetric(laplacian, "laplacian_eigenmap");
    const Index n = laplacian.rows();
    if (d < 1 || d >= n)
        throw InputError("laplacian_eigenmap: need 1 <= d < N");

    Matrix op = laplacian;
    Vector trivial = Vector::Ones(n);
    if (normalized) {
        Vector inv_sqrt(n);
        for (Index i = 0; i < n; ++i) {
            const double deg = laplacian(i, i);
            inv_sqrt(i) = deg > 0 ? 1.0 / std::sqrt(deg) : 0.0;
            trivial(i) = std::sqrt(std::max(deg, 0.0));
        }
        op = inv_sqrt.asDiagonal() * laplacian * inv_sqrt.asDiagonal();
        for (Index i = 0; i < n; ++i)
            if (inv_sqrt(i) == 0.0)
                op(i, i) = 0.0;
    }
    if (trivial.norm() > 0)
        trivial.normalize();
    const double lift = 2.0 * std::max(1.0, op.cwiseAbs().rowwise().sum().maxCoeff()) + 1.0;
    op += lift * trivial * trivial.transpose();
    SpectralBasis basis = sym_eig(0.5 * (op + op.transpose()));
    return basis.eigenvectors.leftCols(d);
}

}  // namespace hosp
