#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <type_traits>
#include <vector>

#include "hosp/common.hpp"
#include "hosp/hypergraph.hpp"
#include "hosp/rng.hpp"

namespace hosp {

enum class TensorKind { none, cooper, hu, general, laplacian_hu, laplacian_general };

inline const char* to_string(TensorKind k)
{
    switch (k) {
    case TensorKind::none: return "none";
    case TensorKind::cooper: return "cooper";
    case TensorKind::hu: return "hu";
    case TensorKind::general: return "general";
    case TensorKind::laplacian_hu: return "laplacian_hu";
    case TensorKind::laplacian_general: return "laplacian_general";
    }
    return "?";
}

namespace detail {

inline long long factorial(int n)
{
    if (n > 20)
        throw InputError("tensor order too large");
    long long f = 1;
    for (int i = 2; i <= n; ++i)
        f *= i;
    return f;
}

/// Number of distinct orderings of a sorted multiset.
inline long long multiplicity(const std::vector<int>& key)
{
    long long out = factorial(static_cast<int>(key.size()));
    std::size_t i = 0;
    while (i < key.size()) {
        std::size_t j = i;
        while (j < key.size() && key[j] == key[i])
            ++j;
        out /= factorial(static_cast<int>(j - i));
        i = j;
    }
    return out;
}

/// Key with one occurrence of value removed (key must contain it).
inline std::vector<int> remove_one(const std::vector<int>& key, int value)
{
    std::vector<int> out = key;
    out.erase(std::find(out.begin(), out.end(), value));
    return out;
}

inline std::vector<int> distinct(const std::vector<int>& key)
{
    std::vector<int> out = key;
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Sorted multisets of size m whose support is exactly members.
inline void covering_keys(const std::vector<int>& members, int m, std::vector<std::vector<int>>& out)
{
    const int s = static_cast<int>(members.size());
    std::vector<int> counts(static_cast<std::size_t>(s), 1);
    // distribute the m - s extra slots over s members (stars and bars)
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == s - 1) {
            counts[static_cast<std::size_t>(pos)] = 1 + left;
            std::vector<int> key;
            for (int j = 0; j < s; ++j)
                key.insert(key.end(), static_cast<std::size_t>(counts[static_cast<std::size_t>(j)]),
                           members[static_cast<std::size_t>(j)]);
            out.push_back(std::move(key));
            return;
        }
        for (int extra = 0; extra <= left; ++extra) {
            counts[static_cast<std::size_t>(pos)] = 1 + extra;
            rec(pos + 1, left - extra);
        }
    };
    if (s > 0 && s <= m)
        rec(0, m - s);
}

/// Number of surjections from m labeled slots onto s members, which equals
/// the sum of multinomials m!/(l_1!...l_s!) over compositions l_j >= 1.
inline long long surjections(int m, int s)
{
    long long total = 0;
    long long binom = 1;
    for (int j = 0; j <= s; ++j) {
        long long p = 1;
        for (int r = 0; r < m; ++r)
            p *= (s - j);
        total += (j % 2 == 0 ? 1 : -1) * binom * p;
        binom = binom * (s - j) / (j + 1);
    }
    return total;
}

}  // namespace detail

/// Symmetric order-m tensor over dimension N stored by sorted index key.
/// The value at any permutation of a key equals the stored value.
template <class T>
class SymTensor {
public:
    using Key = std::vector<int>;

    SymTensor() = default;
    SymTensor(int order, int dim, TensorKind kind = TensorKind::none) : m_(order), n_(dim), kind_(kind)
    {
        if (order < 1 || dim < 0)
            throw InputError("tensor: order must be >= 1 and dim >= 0");
    }

    int order() const noexcept { return m_; }
    int dim() const noexcept { return n_; }
    TensorKind kind() const noexcept { return kind_; }
    void set_kind(TensorKind k) noexcept { kind_ = k; }
    const std::map<Key, T>& entries() const noexcept { return entries_; }
    std::size_t nnz() const noexcept { return entries_.size(); }

    Key canonical(Key idx) const
    {
        if (static_cast<int>(idx.size()) != m_)
            throw InputError("tensor: index has " + std::to_string(idx.size()) + " entries, order is " +
                             std::to_string(m_));
        for (int i : idx)
            if (i < 0 || i >= n_)
                throw InputError("tensor: index " + std::to_string(i) + " out of range");
        std::sort(idx.begin(), idx.end());
        return idx;
    }

    T get(const Key& idx) const
    {
        auto it = entries_.find(canonical(idx));
        return it == entries_.end() ? T(0) : it->second;
    }

    void set(const Key& idx, const T& value)
    {
        Key k = canonical(idx);
        if (value == T(0))
            entries_.erase(k);
        else
            entries_[std::move(k)] = value;
    }

    void add(const Key& idx, const T& value) { set(idx, get(idx) + value); }

    friend bool operator==(const SymTensor&, const SymTensor&) = default;

private:
    int m_ = 1;
    int n_ = 0;
    TensorKind kind_ = TensorKind::none;
    std::map<Key, T> entries_;
};

/// Squared Frobenius norm over the full tensor.
template <class T>
T frobenius_sq(const SymTensor<T>& s)
{
    T out(0);
    for (const auto& [k, v] : s.entries())
        out += T(detail::multiplicity(k)) * v * v;
    return out;
}

/// Uniform-hypergraph adjacency tensor. Hyperedge weights are not used.
template <class T = double>
SymTensor<T> adjacency_tensor(const Hypergraph& h, TensorKind normalization)
{
    const int k = h.uniformity();
    if (k == 0)
        throw InputError("adjacency_tensor: hypergraph is not uniform; use adjacency_tensor_general");
    if (normalization != TensorKind::none && normalization != TensorKind::cooper && normalization != TensorKind::hu)
        throw InputError("adjacency_tensor: normalization must be none, cooper or hu");
    SymTensor<T> a(k, h.n_vertices(), normalization);
    const std::vector<int> deg = h.degrees();
    for (const auto& e : h.edges()) {
        T value(1);
        if (normalization == TensorKind::cooper) {
            value = T(1) / T(detail::factorial(k - 1));
        } else if (normalization == TensorKind::hu) {
            if constexpr (std::is_floating_point_v<T>) {
                value = T(1) / T(detail::factorial(k - 1));
                for (int v : e)
                    value *= std::pow(static_cast<T>(deg[static_cast<std::size_t>(v)]), T(-1) / T(k));
            } else {
                throw InputError("adjacency_tensor: hu normalization needs floating point");
            }
        }
        a.add(e, value);
    }
    return a;
}

/// Adjacency for non-uniform hypergraphs at order m = max cardinality: a
/// hyperedge of s members puts s / surj(m, s) on every index tuple that
/// covers all its members.
template <class T = double>
SymTensor<T> adjacency_tensor_general(const Hypergraph& h)
{
    const int m = h.max_cardinality();
    if (m == 0)
        throw InputError("adjacency_tensor_general: hypergraph has no hyperedges");
    SymTensor<T> a(m, h.n_vertices(), TensorKind::general);
    for (const auto& e : h.edges()) {
        const int s = static_cast<int>(e.size());
        const T value = T(s) / T(detail::surjections(m, s));
        std::vector<std::vector<int>> keys;
        detail::covering_keys(e, m, keys);
        for (const auto& key : keys)
            a.add(key, value);
    }
    return a;
}

/// Sum of all full-tensor entries whose first index is i.
template <class T>
std::vector<T> tensor_degrees(const SymTensor<T>& s)
{
    std::vector<T> d(static_cast<std::size_t>(s.dim()), T(0));
    for (const auto& [key, v] : s.entries())
        for (int i : detail::distinct(key))
            d[static_cast<std::size_t>(i)] += v * T(detail::multiplicity(detail::remove_one(key, i)));
    return d;
}

enum class LaplacianTensorKind { hu, general };

/// hu: J - A with J_{i..i} = 1 where deg > 0. general: D - A with
/// D_{i..i} = deg(v_i).
template <class T>
SymTensor<T> laplacian_tensor(const SymTensor<T>& a, LaplacianTensorKind kind, const Hypergraph& h)
{
    if (a.dim() != h.n_vertices())
        throw InputError("laplacian_tensor: tensor dimension does not match hypergraph");
    if (kind == LaplacianTensorKind::hu && a.kind() != TensorKind::hu)
        throw InputError("laplacian_tensor: hu Laplacian needs a hu-normalized adjacency");
    if (kind == LaplacianTensorKind::general && a.kind() != TensorKind::general && a.kind() != TensorKind::cooper)
        throw InputError("laplacian_tensor: general Laplacian needs a general or cooper adjacency");
    SymTensor<T> out(a.order(), a.dim(),
                     kind == LaplacianTensorKind::hu ? TensorKind::laplacian_hu : TensorKind::laplacian_general);
    for (const auto& [key, v] : a.entries())
        out.set(key, -v);
    const std::vector<int> deg = h.degrees();
    for (int i = 0; i < a.dim(); ++i) {
        const int d = deg[static_cast<std::size_t>(i)];
        if (d == 0)
            continue;
        out.add(std::vector<int>(static_cast<std::size_t>(a.order()), i), kind == LaplacianTensorKind::hu ? T(1) : T(d));
    }
    return out;
}

/// out_i = sum over j_1..j_{m-1} of S_{i j_1 .. j_{m-1}} y_{j_1} ... y_{j_{m-1}}.
template <class T, class V>
V hg_shift(const SymTensor<T>& s, const V& y)
{
    detail::require_size(static_cast<Index>(y.size()), s.dim(), "hg_shift");
    V out = y;
    for (Index i = 0; i < static_cast<Index>(out.size()); ++i)
        out[i] = 0;
    for (const auto& [key, v] : s.entries()) {
        for (int i : detail::distinct(key)) {
            const auto rest = detail::remove_one(key, i);
            auto term = v * T(detail::multiplicity(rest));
            for (int r : rest)
                term *= y[r];
            out[i] += term;
        }
    }
    return out;
}

/// d(hg_shift)/dy: J_ip = (m-1) sum S_{i p j..} y_j...
inline Matrix shift_jacobian(const SymTensor<double>& s, const Vector& y)
{
    detail::require_size(y.size(), s.dim(), "shift_jacobian");
    Matrix j = Matrix::Zero(s.dim(), s.dim());
    const double m1 = s.order() - 1;
    if (s.order() < 2)
        return j;
    for (const auto& [key, v] : s.entries()) {
        for (int i : detail::distinct(key)) {
            const auto rest = detail::remove_one(key, i);
            for (int p : detail::distinct(rest)) {
                const auto q = detail::remove_one(rest, p);
                double term = m1 * v * static_cast<double>(detail::multiplicity(q));
                for (int r : q)
                    term *= y(r);
                j(i, p) += term;
            }
        }
    }
    return j;
}

/// S x^m.
inline double contract_all(const SymTensor<double>& s, const Vector& x)
{
    return x.dot(hg_shift(s, x));
}

inline Matrix to_matrix(const SymTensor<double>& s)
{
    if (s.order() != 2)
        throw InputError("to_matrix: tensor order is not 2");
    Matrix out = Matrix::Zero(s.dim(), s.dim());
    for (const auto& [key, v] : s.entries())
        out(key[0], key[1]) = out(key[1], key[0]) = v;
    return out;
}

inline SymTensor<double> from_matrix(const Matrix& m)
{
    detail::require_square(m, "from_matrix");
    SymTensor<double> s(2, static_cast<int>(m.rows()));
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = i; j < m.cols(); ++j)
            if (m(i, j) != 0.0)
                s.set({static_cast<int>(i), static_cast<int>(j)}, m(i, j));
    return s;
}

/// lambda v^{om}.
inline SymTensor<double> rank_one(double lambda, const Vector& v, int m)
{
    const int n = static_cast<int>(v.size());
    SymTensor<double> s(m, n);
    std::vector<int> key(static_cast<std::size_t>(m), 0);
    std::function<void(int, int)> rec = [&](int pos, int start) {
        if (pos == m) {
            double val = lambda;
            for (int i : key)
                val *= v(i);
            s.set(key, val);
            return;
        }
        for (int i = start; i < n; ++i) {
            key[static_cast<std::size_t>(pos)] = i;
            rec(pos + 1, i);
        }
    };
    rec(0, 0);
    return s;
}

struct CpOptions {
    int restarts = 10;
    int max_iterations = 2000;
    double tolerance = 1e-10;
};

/// Orthonormal basis from a symmetric CP decomposition. Columns 0..rank-1
/// are CP components (by decreasing |lambda|); the rest complete the basis
/// and carry lambda = 0.
struct HgFourierBasis {
    int order = 2;
    Index rank = 0;
    Matrix basis;
    Vector lambdas;
    std::vector<bool> completed;
    double residual = 0.0;
    bool converged = true;
    std::vector<int> iterations;
};

namespace detail {

/// Gram-Schmidt completion over e_0, e_1, ... in order.
inline void complete_basis(Matrix& v, Index have)
{
    const Index n = v.rows();
    Index next = have;
    for (Index i = 0; i < n && next < n; ++i) {
        Vector c = Vector::Unit(n, i);
        for (int pass = 0; pass < 2; ++pass)
            for (Index k = 0; k < next; ++k)
                c -= v.col(k).dot(c) * v.col(k);
        const double nrm = c.norm();
        if (nrm > 1e-8) {
            v.col(next) = c / nrm;
            ++next;
        }
    }
    if (next != n)
        throw NumericalError("basis completion failed");
}

/// Newton refinement of P S x^{m-1} = lambda x, |x| = 1, with P the
/// projector onto the complement of the first `have` columns of v. Steps
/// are kept only while the residual shrinks and x stays nearby.
inline void polish_eigenpair(const SymTensor<double>& a, const Matrix& v, Index have, Vector& x)
{
    const Index n = x.size();
    Matrix p = Matrix::Identity(n, n);
    for (Index k = 0; k < have; ++k)
        p -= v.col(k) * v.col(k).transpose();
    auto residual = [&](const Vector& y, double lam) {
        Vector r(n + 1);
        r.head(n) = p * hg_shift(a, y) - lam * y;
        r(n) = 0.5 * (1.0 - y.squaredNorm());
        return r;
    };
    double lam = contract_all(a, x);
    Vector r = residual(x, lam);
    const Vector start = x;
    for (int it = 0; it < 30 && r.norm() > 1e-15; ++it) {
        Matrix j = Matrix::Zero(n + 1, n + 1);
        j.topLeftCorner(n, n) = p * shift_jacobian(a, x) * p - lam * Matrix::Identity(n, n) + (Matrix::Identity(n, n) - p);
        j.topRightCorner(n, 1) = -x;
        j.bottomLeftCorner(1, n) = -x.transpose();
        const Eigen::FullPivLU<Matrix> lu(j);
        if (!lu.isInvertible())
            return;
        const Vector step = lu.solve(-r);
        Vector nx = p * (x + step.head(n));
        if (nx.norm() < 1e-300)
            return;
        nx.normalize();
        if ((nx - start).norm() > 1e-3)
            return;
        const double nl = contract_all(a, nx);
        const Vector nr = residual(nx, nl);
        if (nr.norm() >= r.norm())
            return;
        x = nx;
        lam = nl;
        r = nr;
    }
}

}  // namespace detail

/// Greedy orthogonal symmetric CP by shifted symmetric higher-order power
/// iterations. Each component is searched in the orthogonal complement of
/// the earlier ones; restarts draw from a stream seeded per component, so a
/// larger rank extends a smaller one.
inline HgFourierBasis sym_cp_decompose(const SymTensor<double>& a, Index rank, std::uint64_t seed,
                                       const CpOptions& opt = {})
{
    const Index n = a.dim();
    const int m = a.order();
    if (m < 2)
        throw InputError("sym_cp_decompose: order must be >= 2");
    if (rank < 0 || rank > n)
        throw InputError("sym_cp_decompose: need 0 <= R <= N");
    HgFourierBasis out;
    out.order = m;
    out.rank = rank;
    out.basis = Matrix::Zero(n, n);
    out.lambdas = Vector::Zero(n);
    out.completed.assign(static_cast<std::size_t>(n), true);
    const double norm_sq = frobenius_sq(a);
    const double alpha = (m - 1) * std::sqrt(norm_sq);

    for (Index r = 0; r < rank; ++r) {
        auto project = [&](Vector& x) {
            for (int pass = 0; pass < 2; ++pass)
                for (Index k = 0; k < r; ++k)
                    x -= out.basis.col(k).dot(x) * out.basis.col(k);
        };
        CounterRng rng(CounterRng::mix64(seed + static_cast<std::uint64_t>(r) * CounterRng::golden));
        double best_lambda = 0.0;
        Vector best_x;
        int best_iters = 0;
        bool best_conv = false;
        for (int start = 0; start < opt.restarts; ++start) {
            Vector x0 = rng.gaussian_vector(n);
            project(x0);
            if (x0.norm() < 1e-12)
                continue;
            x0.normalize();
            for (double sign : {1.0, -1.0}) {
                Vector x = x0;
                double lambda = contract_all(a, x);
                bool conv = false;
                int it = 0;
                while (it < opt.max_iterations) {
                    ++it;
                    Vector nx = sign * hg_shift(a, x) + alpha * x;
                    project(nx);
                    const double nn = nx.norm();
                    if (nn < 1e-300) {
                        conv = true;
                        break;
                    }
                    nx /= nn;
                    const double nl = contract_all(a, nx);
                    const double step = std::min((nx - x).norm(), (nx + x).norm());
                    x = nx;
                    const bool done = std::abs(nl - lambda) <= opt.tolerance * std::max(1.0, std::abs(nl)) &&
                                      step <= opt.tolerance;
                    lambda = nl;
                    if (done) {
                        conv = true;
                        break;
                    }
                }
                if (best_x.size() == 0 || std::abs(lambda) > std::abs(best_lambda) + 1e-14) {
                    best_lambda = lambda;
                    best_x = x;
                    best_iters = it;
                    best_conv = conv;
                }
            }
        }
        if (best_x.size() == 0)
            throw NumericalError("sym_cp_decompose: no admissible start");
        detail::polish_eigenpair(a, out.basis, r, best_x);
        // largest-magnitude entry positive; odd order moves the sign into lambda
        Index arg = 0;
        const double mx = best_x.cwiseAbs().maxCoeff();
        while (std::abs(best_x(arg)) < mx * (1.0 - 1e-12))
            ++arg;
        if (best_x(arg) < 0) {
            best_x = -best_x;
            if (m % 2 == 1)
                best_lambda = -best_lambda;
        }
        best_lambda = contract_all(a, best_x);
        out.basis.col(r) = best_x;
        out.lambdas(r) = best_lambda;
        out.completed[static_cast<std::size_t>(r)] = false;
        out.iterations.push_back(best_iters);
        out.converged = out.converged && best_conv;
    }
    detail::complete_basis(out.basis, rank);
    double captured = 0.0;
    for (Index r = 0; r < rank; ++r)
        captured += out.lambdas(r) * out.lambdas(r);
    out.residual = std::sqrt(std::max(0.0, norm_sq - captured));
    return out;
}

/// Explicit ||A - sum_r lambda_r v_r^{om}||_F (for checks at small scale).
inline double cp_residual(const SymTensor<double>& a, const HgFourierBasis& b)
{
    std::map<std::vector<int>, double> diff(a.entries().begin(), a.entries().end());
    for (Index r = 0; r < b.rank; ++r) {
        const auto term = rank_one(b.lambdas(r), b.basis.col(r), a.order());
        for (const auto& [k, v] : term.entries())
            diff[k] -= v;
    }
    double s = 0.0;
    for (const auto& [k, v] : diff)
        s += static_cast<double>(detail::multiplicity(k)) * v * v;
    return std::sqrt(s);
}

struct HgftCoefficients {
    Vector values;  ///< (V^T y)^{m-1}
    Vector signs;   ///< sign of V^T y, +1 for zero
    bool sign_ambiguous = false;  ///< even power lost a negative sign
};

inline HgftCoefficients hgft(const HgFourierBasis& b, const Vector& y, int m)
{
    if (m < 2)
        throw InputError("hgft: m must be >= 2");
    detail::require_size(y.size(), b.basis.rows(), "hgft");
    const Vector c = b.basis.transpose() * y;
    HgftCoefficients out;
    out.values.resize(c.size());
    out.signs.resize(c.size());
    for (Index i = 0; i < c.size(); ++i) {
        out.values(i) = std::pow(c(i), m - 1);
        out.signs(i) = c(i) < 0 ? -1.0 : 1.0;
        if (c(i) < 0 && (m - 1) % 2 == 0)
            out.sign_ambiguous = true;
    }
    return out;
}

/// Entrywise (m-1)-th root, then V. Stored signs resolve even powers; with
/// no signs the nonnegative root is taken.
inline Vector ihgft(const HgFourierBasis& b, const HgftCoefficients& coeff, int m)
{
    if (m < 2)
        throw InputError("ihgft: m must be >= 2");
    detail::require_size(coeff.values.size(), b.basis.cols(), "ihgft");
    const bool have_signs = coeff.signs.size() == coeff.values.size();
    Vector c(coeff.values.size());
    const double p = 1.0 / (m - 1);
    for (Index i = 0; i < c.size(); ++i) {
        const double v = coeff.values(i);
        double root = m == 2 ? std::abs(v) : std::pow(std::abs(v), p);
        double sign = v < 0 ? -1.0 : 1.0;
        if ((m - 1) % 2 == 0)
            sign = have_signs ? coeff.signs(i) : 1.0;
        c(i) = sign * root;
    }
    return b.basis * c;
}

}  // namespace hosp
