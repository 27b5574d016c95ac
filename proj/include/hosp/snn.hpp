#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "hosp/complex.hpp"
#include "hosp/hodge.hpp"

namespace hosp {

enum class ActivationKind { identity, tanh, relu, odd_custom };

class Activation {
public:
    Activation() = default;
    explicit Activation(ActivationKind kind) : kind_(kind)
    {
        if (kind == ActivationKind::odd_custom)
            throw InputError("odd_custom activation needs a function; use Activation::odd");
    }

    /// Wraps a user function after checking sigma(-x) = -sigma(x) on a grid
    /// over [-10, 10].
    static Activation odd(std::function<double(double)> fn)
    {
        for (int i = 0; i <= 2000; ++i) {
            const double x = -10.0 + 0.01 * i;
            const double a = fn(x);
            const double b = fn(-x);
            if (!(std::abs(a + b) <= 1e-12 * (1.0 + std::abs(a))))
                throw InputError("custom activation is not odd at x = " + std::to_string(x));
        }
        Activation act;
        act.kind_ = ActivationKind::odd_custom;
        act.fn_ = std::move(fn);
        return act;
    }

    ActivationKind kind() const noexcept { return kind_; }
    bool is_odd() const noexcept { return kind_ != ActivationKind::relu; }

    double operator()(double x) const
    {
        switch (kind_) {
        case ActivationKind::identity: return x;
        case ActivationKind::tanh: return std::tanh(x);
        case ActivationKind::relu: return x > 0.0 ? x : 0.0;
        case ActivationKind::odd_custom: return fn_(x);
        }
        return x;
    }

    Matrix apply(const Matrix& m) const
    {
        if (kind_ == ActivationKind::identity)
            return m;
        return m.unaryExpr([this](double x) { return (*this)(x); });
    }

private:
    ActivationKind kind_ = ActivationKind::identity;
    std::function<double(double)> fn_;
};

inline ActivationKind parse_activation(const std::string& name)
{
    if (name == "identity")
        return ActivationKind::identity;
    if (name == "tanh")
        return ActivationKind::tanh;
    if (name == "relu")
        return ActivationKind::relu;
    throw InputError("unknown activation '" + name + "'");
}

inline const char* to_string(ActivationKind k)
{
    switch (k) {
    case ActivationKind::identity: return "identity";
    case ActivationKind::tanh: return "tanh";
    case ActivationKind::relu: return "relu";
    case ActivationKind::odd_custom: return "odd_custom";
    }
    return "?";
}

/// Weights W_1..W_K (F_{k-1} x F_k) and the shared activation.
struct LayerStack {
    std::vector<Matrix> weights;
    Activation activation;

    void check(Index input_features) const
    {
        Index f = input_features;
        for (std::size_t k = 0; k < weights.size(); ++k) {
            if (weights[k].rows() != f)
                throw InputError("layer " + std::to_string(k + 1) + ": weight has " +
                                 std::to_string(weights[k].rows()) + " rows, expected " + std::to_string(f));
            f = weights[k].cols();
        }
    }
};

/// Y_k = sigma(H Y_{k-1} W_k) for k = 1..K.
inline Matrix gcn_forward(const Matrix& h, const Matrix& y0, const LayerStack& stack)
{
    detail::require_square(h, "gcn_forward");
    detail::require_size(y0.rows(), h.rows(), "gcn_forward");
    stack.check(y0.cols());
    Matrix y = y0;
    for (const auto& w : stack.weights)
        y = stack.activation.apply(h * y * w);
    return y;
}

/// Operators of a complex up to order 2. Absent blocks have zero size.
struct SnnOperators {
    Matrix l0, l1, l2;
    Matrix b1, b2;

    Index n0() const { return l0.rows(); }
    Index n1() const { return l1.rows(); }
    Index n2() const { return l2.rows(); }
};

inline SnnOperators snn_operators(const SimplicialComplex& x)
{
    if (x.top_order() < 1)
        throw InputError("snn: complex needs edges");
    SnnOperators ops;
    ops.b1 = boundary_dense(x, 1);
    ops.b2 = boundary_dense(x, 2);
    ops.l0 = ops.b1 * ops.b1.transpose();
    ops.l1 = ops.b1.transpose() * ops.b1 + ops.b2 * ops.b2.transpose();
    ops.l2 = ops.b2.transpose() * ops.b2;
    return ops;
}

/// Node, edge and triangle features (rows indexed by simplices).
struct SnnSignals {
    Matrix v, f, t;
};

/// Optional right-multiplied weights per level for one layer.
struct SnnLayerWeights {
    Matrix node, edge, triangle;
};

/// v <- s(L0 v + B1 f), f <- s(L1 f + B2 t + B1^T v), t <- s(L2 t + B2^T f),
/// all from the previous layer's values. With weights, each level's
/// pre-activation is multiplied on the right by its weight matrix.
inline SnnSignals snn_forward(const SnnOperators& ops, const SnnSignals& in, int depth, const Activation& act,
                              const std::vector<SnnLayerWeights>& weights = {})
{
    if (depth < 0)
        throw InputError("snn_forward: depth must be non-negative");
    if (!weights.empty() && static_cast<int>(weights.size()) != depth)
        throw InputError("snn_forward: need one weight set per layer");
    detail::require_size(in.v.rows(), ops.n0(), "snn_forward nodes");
    detail::require_size(in.f.rows(), ops.n1(), "snn_forward edges");
    detail::require_size(in.t.rows(), ops.n2(), "snn_forward triangles");
    if (in.f.cols() != in.v.cols() || (ops.n2() > 0 && in.t.cols() != in.v.cols()))
        throw InputError("snn_forward: feature counts differ between levels");
    const Index feats = in.v.cols();

    SnnSignals s = in;
    if (ops.n2() == 0)
        s.t = Matrix::Zero(0, feats);
    for (int layer = 0; layer < depth; ++layer) {
        Matrix pv = ops.l0 * s.v + ops.b1 * s.f;
        Matrix pf = ops.l1 * s.f + ops.b1.transpose() * s.v;
        Matrix pt = ops.l2 * s.t;
        if (ops.n2() > 0) {
            pf += ops.b2 * s.t;
            pt += ops.b2.transpose() * s.f;
        }
        if (!weights.empty()) {
            const auto& w = weights[static_cast<std::size_t>(layer)];
            if (w.node.rows() != pv.cols() || w.edge.rows() != pf.cols() ||
                (ops.n2() > 0 && w.triangle.rows() != pt.cols()))
                throw InputError("snn_forward: weight shape mismatch at layer " + std::to_string(layer + 1));
            pv = pv * w.node;
            pf = pf * w.edge;
            pt = ops.n2() > 0 ? Matrix(pt * w.triangle) : Matrix::Zero(0, w.node.cols());
        }
        s.v = act.apply(pv);
        s.f = act.apply(pf);
        s.t = act.apply(pt);
    }
    return s;
}

inline SnnSignals snn_forward(const SimplicialComplex& x, const SnnSignals& in, int depth, const Activation& act,
                              const std::vector<SnnLayerWeights>& weights = {})
{
    return snn_forward(snn_operators(x), in, depth, act, weights);
}

/// Diagonal +-1 edge orientation change.
struct OrientationFlip {
    Vector theta;

    static OrientationFlip identity(Index n) { return {Vector::Ones(n)}; }

    void check(Index n) const
    {
        detail::require_size(theta.size(), n, "orientation flip");
        for (Index i = 0; i < n; ++i)
            if (theta(i) != 1.0 && theta(i) != -1.0)
                throw InputError("orientation flip entries must be +1 or -1");
    }
};

inline Matrix orientation_flip(const OrientationFlip& o, const Matrix& f)
{
    o.check(f.rows());
    return o.theta.asDiagonal() * f;
}

/// Theta L1 Theta, B1 Theta, Theta B2; node and triangle blocks unchanged.
inline SnnOperators orientation_flip(const OrientationFlip& o, const SnnOperators& ops)
{
    o.check(ops.n1());
    SnnOperators out = ops;
    out.l1 = o.theta.asDiagonal() * ops.l1 * o.theta.asDiagonal();
    out.b1 = ops.b1 * o.theta.asDiagonal();
    out.b2 = o.theta.asDiagonal() * ops.b2;
    return out;
}

/// ||g_{Theta L1 Theta}(Theta f) - Theta g_{L1}(f)||_inf for the edge GCN
/// g_L(f) = gcn_forward(L, f, stack).
inline double check_orientation_equivariance(const Matrix& l1, const LayerStack& stack, const Matrix& f,
                                             const OrientationFlip& o)
{
    o.check(l1.rows());
    const Matrix flipped_l1 = o.theta.asDiagonal() * l1 * o.theta.asDiagonal();
    const Matrix lhs = gcn_forward(flipped_l1, o.theta.asDiagonal() * f, stack);
    const Matrix rhs = o.theta.asDiagonal() * gcn_forward(l1, f, stack);
    return lhs.size() == 0 ? 0.0 : (lhs - rhs).cwiseAbs().maxCoeff();
}

/// Same deviation for the three-level network: edge outputs must flip with
/// Theta, node and triangle outputs must not change.
inline double check_orientation_equivariance(const SnnOperators& ops, const SnnSignals& in, int depth,
                                             const Activation& act, const OrientationFlip& o)
{
    const SnnSignals base = snn_forward(ops, in, depth, act);
    SnnSignals flipped_in = in;
    flipped_in.f = orientation_flip(o, in.f);
    const SnnSignals flipped = snn_forward(orientation_flip(o, ops), flipped_in, depth, act);
    double dev = 0.0;
    auto upd = [&dev](const Matrix& a, const Matrix& b) {
        if (a.size() > 0)
            dev = std::max(dev, (a - b).cwiseAbs().maxCoeff());
    };
    upd(flipped.v, base.v);
    upd(flipped.f, orientation_flip(o, base.f));
    upd(flipped.t, base.t);
    return dev;
}

}  // namespace hosp
