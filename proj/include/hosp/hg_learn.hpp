#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "hosp/flow.hpp"
#include "hosp/hypergraph.hpp"
#include "hosp/linalg.hpp"
#include "hosp/tensor.hpp"

namespace hosp {

enum class RegularizerKind { quadratic_clique, lovasz_p1, lovasz_p2, tensor_tv };

inline const char* to_string(RegularizerKind k)
{
    switch (k) {
    case RegularizerKind::quadratic_clique: return "quadratic";
    case RegularizerKind::lovasz_p1: return "lovasz1";
    case RegularizerKind::lovasz_p2: return "lovasz2";
    case RegularizerKind::tensor_tv: return "tensor-tv";
    }
    return "?";
}

inline RegularizerKind parse_regularizer(const std::string& s)
{
    if (s == "quadratic" || s == "quadratic_clique")
        return RegularizerKind::quadratic_clique;
    if (s == "lovasz1" || s == "lovasz_p1")
        return RegularizerKind::lovasz_p1;
    if (s == "lovasz2" || s == "lovasz_p2")
        return RegularizerKind::lovasz_p2;
    if (s == "tensor-tv" || s == "tensor_tv")
        return RegularizerKind::tensor_tv;
    throw InputError("unknown regularizer '" + s + "'");
}

struct RegularizerSpec {
    RegularizerKind kind = RegularizerKind::quadratic_clique;
    double alpha = 1.0;
    int max_iterations = 10000;
    double tolerance = 1e-8;
    double initial_step = 0.5;  ///< subgradient s0, or first trial step for backtracking
    std::uint64_t seed = 0;     ///< CP restarts for tensor_tv scaling

    void check() const
    {
        if (!(alpha > 0.0))
            throw InputError("regularizer: alpha must be positive");
        if (max_iterations < 1 || !(tolerance > 0.0) || !(initial_step > 0.0))
            throw InputError("regularizer: invalid solver parameters");
    }
};

/// sum_e w_e (max_{u in e} y_u - min_{v in e} y_v)^p.
inline double lovasz_tv(const Hypergraph& h, const Vector& y, int p)
{
    if (p != 1 && p != 2)
        throw InputError("lovasz_tv: p must be 1 or 2");
    detail::require_size(y.size(), h.n_vertices(), "lovasz_tv");
    double total = 0.0;
    for (Index e = 0; e < h.n_edges(); ++e) {
        double hi = -std::numeric_limits<double>::infinity();
        double lo = std::numeric_limits<double>::infinity();
        for (int v : h.edge(e)) {
            hi = std::max(hi, y(v));
            lo = std::min(lo, y(v));
        }
        const double d = hi - lo;
        total += h.weight(e) * (p == 1 ? d : d * d);
    }
    return total;
}

/// Laplacian of the weighted clique expansion.
inline Matrix clique_laplacian(const Hypergraph& h)
{
    return expansion_laplacian(expand(h, ExpansionKind::clique), false);
}

struct DenoiseResult {
    Vector x;
    double objective = 0.0;
    std::vector<double> objective_trace;  ///< incumbent objective, non-increasing
    std::vector<double> dual_trace;       ///< lovasz_p2 only: certified lower bounds
    double gap = 0.0;                     ///< lovasz_p2 only
    int iterations = 0;
    bool converged = true;
};

namespace detail {

/// Euclidean projection onto the probability simplex.
inline Vector project_simplex(const Vector& v)
{
    const Index n = v.size();
    std::vector<double> u(v.data(), v.data() + n);
    std::sort(u.begin(), u.end(), std::greater<>());
    double cum = 0.0;
    double theta = 0.0;
    for (Index k = 0; k < n; ++k) {
        cum += u[static_cast<std::size_t>(k)];
        const double t = (cum - 1.0) / static_cast<double>(k + 1);
        if (u[static_cast<std::size_t>(k)] - t > 0.0)
            theta = t;
    }
    return (v.array() - theta).max(0.0).matrix();
}

/// Shift tensor and scale c = |lambda_1| of its leading CP component.
struct TvShift {
    SymTensor<double> s;
    double c = 1.0;
};

inline TvShift tv_shift(const Hypergraph& h, std::uint64_t seed)
{
    TvShift out{adjacency_tensor_general(h), 1.0};
    if (out.s.nnz() > 0) {
        const HgFourierBasis b = sym_cp_decompose(out.s, 1, seed);
        if (std::abs(b.lambdas(0)) > 1e-300)
            out.c = std::abs(b.lambdas(0));
    }
    return out;
}

inline double tv_penalty(const TvShift& t, const Vector& x)
{
    return (x - hg_shift(t.s, x) / t.c).squaredNorm();
}

inline Vector tv_gradient(const TvShift& t, const Vector& x)
{
    const Vector r = x - hg_shift(t.s, x) / t.c;
    const Index n = x.size();
    const Matrix jac = Matrix::Identity(n, n) - shift_jacobian(t.s, x) / t.c;
    return 2.0 * jac.transpose() * r;
}

/// Pair lists per hyperedge for the p = 2 dual.
struct PairSet {
    std::vector<std::vector<std::pair<int, int>>> pairs;
};

inline PairSet hyperedge_pairs(const Hypergraph& h)
{
    PairSet ps;
    for (const auto& e : h.edges()) {
        std::vector<std::pair<int, int>> p;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::size_t j = i + 1; j < e.size(); ++j)
                p.emplace_back(e[i], e[j]);
        ps.pairs.push_back(std::move(p));
    }
    return ps;
}

/// Subgradient of sum_e w_e (max - min)^p; ties go to the lowest index.
inline Vector lovasz_subgradient(const Hypergraph& h, const Vector& x, int p)
{
    Vector g = Vector::Zero(x.size());
    for (Index e = 0; e < h.n_edges(); ++e) {
        const auto& m = h.edge(e);
        int hi = m[0], lo = m[0];
        for (int v : m) {
            if (x(v) > x(hi))
                hi = v;
            if (x(v) < x(lo))
                lo = v;
        }
        const double scale = h.weight(e) * (p == 1 ? 1.0 : 2.0 * (x(hi) - x(lo)));
        g(hi) += scale;
        g(lo) -= scale;
    }
    return g;
}

/// Laplacian of the pair graph with weights scale * w_e * lambda_euv.
inline Matrix pair_laplacian(const Hypergraph& h, const PairSet& ps, const std::vector<Vector>& lam, double scale)
{
    const Index n = h.n_vertices();
    Matrix l = Matrix::Zero(n, n);
    for (std::size_t e = 0; e < ps.pairs.size(); ++e)
        for (std::size_t k = 0; k < ps.pairs[e].size(); ++k) {
            const auto [u, v] = ps.pairs[e][k];
            const double w = scale * h.weight(static_cast<Index>(e)) * lam[e](static_cast<Index>(k));
            l(u, u) += w;
            l(v, v) += w;
            l(u, v) -= w;
            l(v, u) -= w;
        }
    return l;
}

struct DualEval {
    Vector x;
    double g = 0.0;
};

/// Projected gradient ascent with Armijo backtracking over
///   max over lambda_e in simplices of  min_x  phi(x) + scale sum_e w_e sum_{uv} lambda_euv (x_u - x_v)^2.
/// inner(L) returns the minimizer and the inner value for the pair Laplacian L.
template <class Inner, class Primal>
DenoiseResult lovasz_p2_dual(const Hypergraph& h, double scale, Inner&& inner, Primal&& primal, const Vector& x0,
                             const RegularizerSpec& spec)
{
    const PairSet ps = hyperedge_pairs(h);
    std::vector<Vector> lambda;
    for (const auto& p : ps.pairs)
        lambda.push_back(p.empty() ? Vector() : Vector::Constant(static_cast<Index>(p.size()), 1.0 / p.size()));

    auto evaluate = [&](const std::vector<Vector>& lam) { return inner(pair_laplacian(h, ps, lam, scale)); };
    auto gradient = [&](const Vector& x) {
        std::vector<Vector> g(lambda.size());
        for (std::size_t e = 0; e < ps.pairs.size(); ++e) {
            g[e].resize(static_cast<Index>(ps.pairs[e].size()));
            for (std::size_t k = 0; k < ps.pairs[e].size(); ++k) {
                const auto [u, v] = ps.pairs[e][k];
                const double d = x(u) - x(v);
                g[e](static_cast<Index>(k)) = scale * h.weight(static_cast<Index>(e)) * d * d;
            }
        }
        return g;
    };

    DenoiseResult res;
    res.x = x0;
    res.objective = primal(x0);
    res.objective_trace.push_back(res.objective);
    DualEval cur = evaluate(lambda);
    res.dual_trace.push_back(cur.g);
    double step = spec.initial_step;
    res.converged = false;
    for (int it = 0; it < spec.max_iterations; ++it) {
        res.iterations = it + 1;
        const double fx = primal(cur.x);
        if (fx < res.objective) {
            res.objective = fx;
            res.x = cur.x;
        }
        res.objective_trace.push_back(res.objective);
        res.gap = res.objective - res.dual_trace.back();
        if (res.gap <= spec.tolerance * std::max(1.0, std::abs(res.objective))) {
            res.converged = true;
            break;
        }
        const auto grad = gradient(cur.x);
        bool accepted = false;
        while (step > 1e-20) {
            std::vector<Vector> trial(lambda.size());
            double lin = 0.0, dist = 0.0;
            for (std::size_t e = 0; e < lambda.size(); ++e) {
                if (lambda[e].size() == 0)
                    continue;
                trial[e] = project_simplex(lambda[e] + step * grad[e]);
                const Vector d = trial[e] - lambda[e];
                lin += grad[e].dot(d);
                dist += d.squaredNorm();
            }
            if (dist == 0.0) {
                step = 0.0;
                break;
            }
            DualEval next = evaluate(trial);
            if (next.g >= cur.g + lin - dist / (2.0 * step) - 1e-15 * std::abs(cur.g)) {
                lambda = std::move(trial);
                cur = std::move(next);
                accepted = true;
                step *= 2.0;
                break;
            }
            step *= 0.5;
        }
        res.dual_trace.push_back(std::max(res.dual_trace.back(), cur.g));
        if (!accepted) {
            const double fx2 = primal(cur.x);
            if (fx2 < res.objective) {
                res.objective = fx2;
                res.x = cur.x;
            }
            res.objective_trace.push_back(res.objective);
            res.gap = res.objective - res.dual_trace.back();
            res.converged = res.gap <= 1e-6 * std::max(1.0, std::abs(res.objective));
            break;
        }
    }
    return res;
}

/// min ||x - y||^2 + alpha Omega_2(x); inner solve x = (I + L)^{-1} y.
inline DenoiseResult lovasz_p2_denoise(const Hypergraph& h, const Vector& y, const RegularizerSpec& spec)
{
    const Index n = y.size();
    auto inner = [&](const Matrix& l) {
        const Matrix a = Matrix::Identity(n, n) + l;
        DualEval out;
        out.x = spd_solve(a, y);
        out.g = out.x.dot(a * out.x) - 2.0 * out.x.dot(y) + y.squaredNorm();
        return out;
    };
    auto primal = [&](const Vector& x) { return (x - y).squaredNorm() + spec.alpha * lovasz_tv(h, x, 2); };
    return lovasz_p2_dual(h, spec.alpha, inner, primal, y, spec);
}

/// min Omega_2(x) with labels fixed; inner solve is the harmonic extension
/// under L (pseudoinverse when a free block is singular).
inline DenoiseResult lovasz_p2_interpolate(const Hypergraph& h, const LabeledSignal& labels, const Vector& x0,
                                           const RegularizerSpec& spec)
{
    const std::vector<Index> free = labels.unlabeled();
    const Index nf = static_cast<Index>(free.size());
    const Vector base = labels.extension();
    auto inner = [&](const Matrix& l) {
        DualEval out;
        out.x = base;
        if (nf > 0) {
            Matrix luu(nf, nf);
            Vector rhs = Vector::Zero(nf);
            for (Index i = 0; i < nf; ++i) {
                for (Index j = 0; j < nf; ++j)
                    luu(i, j) = l(free[i], free[j]);
                for (std::size_t k = 0; k < labels.indices.size(); ++k)
                    rhs(i) -= l(free[i], labels.indices[k]) * labels.values[k];
            }
            Eigen::LLT<Matrix> llt(luu);
            const Vector xu = llt.info() == Eigen::Success ? Vector(llt.solve(rhs)) : Vector(psd_pinv(luu) * rhs);
            for (Index i = 0; i < nf; ++i)
                out.x(free[i]) = xu(i);
        }
        out.g = out.x.dot(l * out.x);
        return out;
    };
    auto primal = [&](const Vector& x) { return lovasz_tv(h, x, 2); };
    return lovasz_p2_dual(h, 1.0, inner, primal, x0, spec);
}

/// Diminishing-step subgradient s0/sqrt(t) on min over x of
/// ||x - y||^2 + alpha Omega_1(x); keeps the best iterate.
inline DenoiseResult lovasz_p1_denoise(const Hypergraph& h, const Vector& y, const RegularizerSpec& spec)
{
    auto objective = [&](const Vector& x) { return (x - y).squaredNorm() + spec.alpha * lovasz_tv(h, x, 1); };
    DenoiseResult res;
    res.x = y;
    res.objective = objective(y);
    res.objective_trace.push_back(res.objective);
    Vector x = y;
    res.converged = false;
    for (int t = 1; t <= spec.max_iterations; ++t) {
        res.iterations = t;
        const Vector g = 2.0 * (x - y) + spec.alpha * lovasz_subgradient(h, x, 1);
        const Vector dx = (spec.initial_step / std::sqrt(static_cast<double>(t))) * g;
        x -= dx;
        const double fx = objective(x);
        if (fx < res.objective) {
            res.objective = fx;
            res.x = x;
        }
        res.objective_trace.push_back(res.objective);
        if (dx.norm() < spec.tolerance) {
            res.converged = true;
            break;
        }
    }
    return res;
}

/// Gradient descent with Armijo backtracking on a smooth objective; the
/// labeled coordinates (if any) are held fixed.
template <class F, class G>
DenoiseResult armijo_descent(const Vector& x0, F&& objective, G&& gradient, const RegularizerSpec& spec,
                             const std::vector<Index>& fixed = {})
{
    DenoiseResult res;
    res.x = x0;
    res.objective = objective(x0);
    res.objective_trace.push_back(res.objective);
    double step = spec.initial_step;
    res.converged = false;
    for (int it = 0; it < spec.max_iterations; ++it) {
        res.iterations = it + 1;
        Vector g = gradient(res.x);
        for (Index i : fixed)
            g(i) = 0.0;
        const double gg = g.squaredNorm();
        const double gtol = spec.tolerance * std::max(1.0, std::abs(res.objective));
        if (gg <= gtol * gtol) {
            res.converged = true;
            break;
        }
        bool accepted = false;
        while (step > 1e-20) {
            const Vector trial = res.x - step * g;
            const double ft = objective(trial);
            if (ft <= res.objective - 0.5 * step * gg) {
                res.x = trial;
                res.objective = ft;
                accepted = true;
                step *= 2.0;
                res.objective_trace.push_back(res.objective);
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            res.converged = gg <= 1e-20 * std::max(1.0, std::abs(res.objective));
            break;
        }
    }
    return res;
}

}  // namespace detail

/// Regularized estimate min ||x - y||^2 + alpha Omega(x).
inline DenoiseResult denoise(const Hypergraph& h, const Vector& y, const RegularizerSpec& spec)
{
    spec.check();
    detail::require_size(y.size(), h.n_vertices(), "denoise");
    switch (spec.kind) {
    case RegularizerKind::quadratic_clique: {
        const Matrix l = clique_laplacian(h);
        DenoiseResult res;
        res.x = denoise_node(l, y, spec.alpha);
        res.objective_trace.push_back(spec.alpha * y.dot(l * y));
        res.objective = (res.x - y).squaredNorm() + spec.alpha * res.x.dot(l * res.x);
        res.objective_trace.push_back(res.objective);
        res.iterations = 1;
        return res;
    }
    case RegularizerKind::lovasz_p2: return detail::lovasz_p2_denoise(h, y, spec);
    case RegularizerKind::lovasz_p1: return detail::lovasz_p1_denoise(h, y, spec);
    case RegularizerKind::tensor_tv: {
        const detail::TvShift t = detail::tv_shift(h, spec.seed);
        auto obj = [&](const Vector& x) { return (x - y).squaredNorm() + spec.alpha * detail::tv_penalty(t, x); };
        auto grad = [&](const Vector& x) -> Vector { return 2.0 * (x - y) + spec.alpha * detail::tv_gradient(t, x); };
        return detail::armijo_descent(y, obj, grad, spec);
    }
    }
    throw InputError("denoise: unknown regularizer");
}

/// min Omega(x) subject to x_v = y_v on the labeled vertices.
inline DenoiseResult interpolate_hg(const Hypergraph& h, const LabeledSignal& labels, const RegularizerSpec& spec)
{
    spec.check();
    detail::require_size(labels.size, h.n_vertices(), "interpolate_hg");
    labels.check("interpolate_hg");
    if (labels.indices.empty())
        throw InputError("interpolate_hg: label set is empty");

    const std::vector<Index> free = labels.unlabeled();
    DenoiseResult res;
    if (spec.kind == RegularizerKind::quadratic_clique) {
        const Matrix l = clique_laplacian(h);
        res.x = interpolate_node(l, labels);
        res.objective = res.x.dot(l * res.x);
        res.objective_trace.push_back(res.objective);
        res.iterations = 1;
        return res;
    }

    double lo = labels.values[0], hi = labels.values[0];
    for (double v : labels.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    Vector x0 = labels.extension();
    const double mean = 0.5 * (lo + hi);
    for (Index i : free)
        x0(i) = mean;

    if (spec.kind == RegularizerKind::tensor_tv) {
        const detail::TvShift t = detail::tv_shift(h, spec.seed);
        auto obj = [&](const Vector& x) { return detail::tv_penalty(t, x); };
        auto grad = [&](const Vector& x) -> Vector { return detail::tv_gradient(t, x); };
        return detail::armijo_descent(x0, obj, grad, spec, labels.indices);
    }

    if (spec.kind == RegularizerKind::lovasz_p2)
        return detail::lovasz_p2_interpolate(h, labels, x0, spec);

    auto obj = [&](const Vector& x) { return lovasz_tv(h, x, 1); };
    res.x = x0;
    res.objective = obj(x0);
    res.objective_trace.push_back(res.objective);
    const double s0 = spec.initial_step * (hi > lo ? hi - lo : 1.0);
    Vector x = x0;
    res.converged = false;
    for (int t = 1; t <= spec.max_iterations && !free.empty(); ++t) {
        res.iterations = t;
        Vector g = detail::lovasz_subgradient(h, x, 1);
        for (Index i : labels.indices)
            g(i) = 0.0;
        const double gn = g.norm();
        if (gn <= 1e-14) {
            res.converged = true;
            break;
        }
        x -= (s0 / std::sqrt(static_cast<double>(t))) * g / gn;
        const double fx = obj(x);
        if (fx < res.objective) {
            res.objective = fx;
            res.x = x;
        }
        res.objective_trace.push_back(res.objective);
        if (res.objective <= spec.tolerance * spec.tolerance)
            res.converged = true;
        if (res.converged)
            break;
    }
    if (free.empty())
        res.converged = true;
    return res;
}

}  // namespace hosp
