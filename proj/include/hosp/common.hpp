#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace hosp {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using IntMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;
using SparseInt = Eigen::SparseMatrix<int>;

/// Base error. Input errors are caller mistakes (bad ranges, malformed
/// structures); numerical errors are solver or conditioning failures.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InputError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

namespace detail {

inline void require(bool cond, const std::string& msg)
{
    if (!cond)
        throw InputError(msg);
}

inline void require_size(Index got, Index expected, const char* what)
{
    if (got != expected)
        throw InputError(std::string(what) + ": dimension mismatch (got " + std::to_string(got) +
                         ", expected " + std::to_string(expected) + ")");
}

inline void require_square(const Matrix& m, const char* what)
{
    if (m.rows() != m.cols())
        throw InputError(std::string(what) + ": matrix is not square");
}

}  // namespace detail

/// Dense double copy of an integer sparse operator.
inline Matrix to_dense(const SparseInt& s)
{
    return Matrix(s.cast<double>());
}

/// Combinatorial Laplacian D - A of a symmetric weighted adjacency.
inline Matrix laplacian_from_adjacency(const Matrix& adjacency)
{
    detail::require_square(adjacency, "laplacian_from_adjacency");
    Matrix lap = -adjacency;
    lap.diagonal().setZero();
    for (Index i = 0; i < adjacency.rows(); ++i) {
        double deg = 0.0;
        for (Index j = 0; j < adjacency.cols(); ++j)
            if (j != i)
                deg += adjacency(i, j);
        lap(i, i) = deg;
    }
    return lap;
}

/// Symmetric-normalized Laplacian I - D^{-1/2} A D^{-1/2}. Rows and
/// columns of isolated nodes (degree 0) are left zero.
inline Matrix normalized_laplacian_from_adjacency(const Matrix& adjacency)
{
    detail::require_square(adjacency, "normalized_laplacian_from_adjacency");
    const Index n = adjacency.rows();
    Vector inv_sqrt(n);
    for (Index i = 0; i < n; ++i) {
        double deg = 0.0;
        for (Index j = 0; j < n; ++j)
            if (j != i)
                deg += adjacency(i, j);
        inv_sqrt(i) = deg > 0.0 ? 1.0 / std::sqrt(deg) : 0.0;
    }
    Matrix lap = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        if (inv_sqrt(i) == 0.0)
            continue;
        lap(i, i) = 1.0;
        for (Index j = 0; j < n; ++j)
            if (j != i)
                lap(i, j) = -inv_sqrt(i) * adjacency(i, j) * inv_sqrt(j);
    }
    return lap;
}

}  // namespace hosp
