#include <gtest/gtest.h>

#include "support.hpp"

using namespace hosp;
using namespace hosp::test;

namespace {

RegularizerSpec spec_for(RegularizerKind k, double alpha)
{
    RegularizerSpec s;
    s.kind = k;
    s.alpha = alpha;
    return s;
}

void expect_non_increasing(const std::vector<double>& trace)
{
    for (std::size_t i = 1; i < trace.size(); ++i)
        EXPECT_LE(trace[i], trace[i - 1]) << "step " << i;
}

const RegularizerKind all_kinds[] = {RegularizerKind::quadratic_clique, RegularizerKind::lovasz_p1,
                                     RegularizerKind::lovasz_p2, RegularizerKind::tensor_tv};

}  // namespace

TEST(LovaszTv, Examples)
{
    const Hypergraph h(3, {{0, 1, 2}});
    const Vector y = (Vector(3) << 0, 1, 3).finished();
    EXPECT_EQ(lovasz_tv(h, y, 1), 3.0);
    EXPECT_EQ(lovasz_tv(h, y, 2), 9.0);
    EXPECT_EQ(lovasz_tv(h, Vector::Constant(3, 4.2), 2), 0.0);
    EXPECT_THROW(lovasz_tv(h, y, 3), InputError);
}

TEST(LovaszTv, HomogeneityAndGraphReduction)
{
    CounterRng rng(91);
    for (int t = 0; t < 10; ++t) {
        const auto h = random_hypergraph(rng, 8, 5, 1, 5, true);
        const Vector y = rng.gaussian_vector(8);
        for (double c : {0.5, 2.0, 4.0}) {
            EXPECT_EQ(lovasz_tv(h, Vector(c * y), 1), c * lovasz_tv(h, y, 1));
            EXPECT_EQ(lovasz_tv(h, Vector(c * y), 2), c * c * lovasz_tv(h, y, 2));
        }
        const auto g = random_graph_hypergraph(rng, 8, 0.4, true);
        const Matrix l = laplacian_from_adjacency(graph_adjacency(g));
        EXPECT_NEAR(lovasz_tv(g, y, 2), y.dot(l * y), 1e-12);
    }
}

TEST(Denoise, QuadraticOnGraphIsNodeDenoising)
{
    CounterRng rng(92);
    for (int t = 0; t < 10; ++t) {
        const auto g = random_graph_hypergraph(rng, 9, 0.4, true);
        const Vector y = rng.gaussian_vector(9);
        const auto r = denoise(g, y, spec_for(RegularizerKind::quadratic_clique, 0.7));
        EXPECT_EQ(r.x, denoise_node(laplacian_from_adjacency(graph_adjacency(g)), y, 0.7));
    }
}

TEST(Denoise, QuadraticMaximumPrinciple)
{
    CounterRng rng(93);
    for (int t = 0; t < 10; ++t) {
        const auto h = random_hypergraph(rng, 9, 6, 2, 4, true);
        const Vector y = rng.gaussian_vector(9);
        const auto r = denoise(h, y, spec_for(RegularizerKind::quadratic_clique, 2.0));
        EXPECT_GE(r.x.minCoeff(), y.minCoeff() - 1e-12);
        EXPECT_LE(r.x.maxCoeff(), y.maxCoeff() + 1e-12);
    }
}

TEST(Denoise, LovaszP2OnPair)
{
    const Hypergraph h(2, {{0, 1}});
    const auto r = denoise(h, (Vector(2) << 1, 0).finished(), spec_for(RegularizerKind::lovasz_p2, 1.0));
    EXPECT_NEAR(r.x(0), 2.0 / 3.0, 1e-4);
    EXPECT_NEAR(r.x(1), 1.0 / 3.0, 1e-4);
    EXPECT_TRUE(r.converged);
}

TEST(Denoise, SmallAlphaLimit)
{
    CounterRng rng(94);
    const auto h = random_hypergraph(rng, 7, 4, 2, 3, false);
    const Vector y = rng.gaussian_vector(7);
    for (auto k : all_kinds)
        EXPECT_LT((denoise(h, y, spec_for(k, 1e-7)).x - y).norm(), 1e-4) << to_string(k);
}

TEST(Denoise, ObjectiveTracesAndDescent)
{
    CounterRng rng(95);
    for (int t = 0; t < 5; ++t) {
        const auto h = random_hypergraph(rng, 8, 5, 2, 4, true);
        const Vector y = rng.gaussian_vector(8);
        for (auto k : all_kinds) {
            const auto r = denoise(h, y, spec_for(k, 0.8));
            expect_non_increasing(r.objective_trace);
            EXPECT_LE(r.objective, r.objective_trace.front() + 1e-15);
        }
        const auto p2 = denoise(h, y, spec_for(RegularizerKind::lovasz_p2, 0.8));
        for (std::size_t i = 1; i < p2.dual_trace.size(); ++i)
            EXPECT_GE(p2.dual_trace[i], p2.dual_trace[i - 1]);
        EXPECT_LE(p2.dual_trace.back(), p2.objective + 1e-12);
        EXPECT_NEAR(p2.gap, p2.objective - p2.dual_trace.back(), 1e-15);
    }
}

TEST(Denoise, LovaszP2MatchesOracle)
{
    CounterRng rng(96);
    for (int t = 0; t < 4; ++t) {
        const auto h = random_hypergraph(rng, 7, 4, 2, 4, true);
        const Vector y = rng.gaussian_vector(7);
        const double alpha = rng.uniform(0.2, 2.0);
        const auto r = denoise(h, y, spec_for(RegularizerKind::lovasz_p2, alpha));
        const double best = lovasz_p2_oracle(h, y, alpha);
        EXPECT_NEAR(r.objective, best, 1e-6);
        EXPECT_GE(r.objective, best - 1e-9);
    }
}

TEST(Denoise, LovaszP2OnGraphIsQuadratic)
{
    CounterRng rng(97);
    for (int t = 0; t < 5; ++t) {
        const auto g = random_graph_hypergraph(rng, 8, 0.4, true);
        const Vector y = rng.gaussian_vector(8);
        const auto r = denoise(g, y, spec_for(RegularizerKind::lovasz_p2, 0.9));
        EXPECT_LT((r.x - denoise_node(laplacian_from_adjacency(graph_adjacency(g)), y, 0.9)).norm(), 1e-6);
    }
}

TEST(Denoise, LovaszP1ImprovesOnObservation)
{
    CounterRng rng(98);
    const auto h = random_hypergraph(rng, 8, 5, 2, 4, true);
    const Vector y = rng.gaussian_vector(8);
    const auto r = denoise(h, y, spec_for(RegularizerKind::lovasz_p1, 0.5));
    EXPECT_LT(r.objective, (y - y).squaredNorm() + 0.5 * lovasz_tv(h, y, 1));
    EXPECT_NEAR(r.objective, (r.x - y).squaredNorm() + 0.5 * lovasz_tv(h, r.x, 1), 1e-12);
}

TEST(Denoise, TensorTvOnGraphMatchesClosedForm)
{
    CounterRng rng(99);
    for (int t = 0; t < 5; ++t) {
        const auto g = random_graph_hypergraph(rng, 7, 0.5, false);
        const Vector y = rng.gaussian_vector(7);
        const Matrix a = graph_adjacency(g);
        const auto e = sym_eig(a);
        const double c = std::max(std::abs(e.eigenvalues(0)), std::abs(e.lambda_max()));
        const Matrix m = Matrix::Identity(7, 7) - a / c;
        const double alpha = 0.6;
        const Vector closed = (Matrix::Identity(7, 7) + alpha * m.transpose() * m).ldlt().solve(y);
        const auto r = denoise(g, y, spec_for(RegularizerKind::tensor_tv, alpha));
        EXPECT_LT((r.x - closed).norm(), 1e-6);
    }
}

TEST(Denoise, Errors)
{
    const Hypergraph h(3, {{0, 1, 2}});
    EXPECT_THROW(denoise(h, Vector::Zero(3), spec_for(RegularizerKind::lovasz_p2, 0.0)), InputError);
    EXPECT_THROW(denoise(h, Vector::Zero(4), spec_for(RegularizerKind::lovasz_p2, 1.0)), InputError);
    EXPECT_EQ(parse_regularizer("tensor-tv"), RegularizerKind::tensor_tv);
    EXPECT_THROW(parse_regularizer("lovasz3"), InputError);
}

TEST(Interpolate, AllLabeled)
{
    const Hypergraph h(3, {{0, 1, 2}});
    LabeledSignal l{3, {0, 1, 2}, {1.0, -2.0, 0.5}};
    for (auto k : all_kinds)
        EXPECT_EQ(interpolate_hg(h, l, spec_for(k, 1.0)).x, l.extension());
}

TEST(Interpolate, QuadraticPath)
{
    const Hypergraph h(3, {{0, 1}, {1, 2}});
    LabeledSignal l{3, {0, 2}, {0.0, 1.0}};
    EXPECT_NEAR(interpolate_hg(h, l, spec_for(RegularizerKind::quadratic_clique, 1.0)).x(1), 0.5, 1e-14);
}

TEST(Interpolate, LovaszSingleHyperedge)
{
    const Hypergraph h(3, {{0, 1, 2}});
    LabeledSignal l{3, {0, 2}, {0.0, 1.0}};
    for (auto k : {RegularizerKind::lovasz_p1, RegularizerKind::lovasz_p2}) {
        const int p = k == RegularizerKind::lovasz_p1 ? 1 : 2;
        const auto r = interpolate_hg(h, l, spec_for(k, 1.0));
        EXPECT_GE(r.x(1), 0.0);
        EXPECT_LE(r.x(1), 1.0);
        EXPECT_EQ(r.x(0), 0.0);
        EXPECT_EQ(r.x(2), 1.0);
        double grid_best = 1e300;
        for (int i = -100; i <= 200; ++i) {
            Vector z = l.extension();
            z(1) = i / 100.0;
            grid_best = std::min(grid_best, lovasz_tv(h, z, p));
        }
        Vector zero = l.extension();
        EXPECT_LE(r.objective, lovasz_tv(h, zero, p) + 1e-12);
        EXPECT_LE(r.objective, grid_best + 1e-9);
        expect_non_increasing(r.objective_trace);
    }
}

TEST(Interpolate, GraphReductions)
{
    CounterRng rng(100);
    for (int t = 0; t < 5; ++t) {
        const auto g = random_graph_hypergraph(rng, 8, 0.5, true);
        const Matrix l = laplacian_from_adjacency(graph_adjacency(g));
        LabeledSignal labels{8, {0, 3, 7}, {rng.gaussian(), rng.gaussian(), rng.gaussian()}};
        bool connected = true;
        try {
            interpolate_node(l, labels);
        } catch (const InputError&) {
            connected = false;
        }
        if (!connected)
            continue;
        const Vector ref = interpolate_node(l, labels);
        EXPECT_LT((interpolate_hg(g, labels, spec_for(RegularizerKind::quadratic_clique, 1.0)).x - ref).norm(), 1e-12);
        EXPECT_LT((interpolate_hg(g, labels, spec_for(RegularizerKind::lovasz_p2, 1.0)).x - ref).norm(), 1e-6);
    }
}

TEST(Interpolate, TensorTvKeepsLabels)
{
    CounterRng rng(101);
    const auto h = random_hypergraph(rng, 7, 4, 3, 3, false);
    LabeledSignal l{7, {1, 4}, {0.5, -0.5}};
    const auto r = interpolate_hg(h, l, spec_for(RegularizerKind::tensor_tv, 1.0));
    EXPECT_EQ(r.x(1), 0.5);
    EXPECT_EQ(r.x(4), -0.5);
    expect_non_increasing(r.objective_trace);
    EXPECT_THROW(interpolate_hg(h, LabeledSignal{7, {}, {}}, spec_for(RegularizerKind::tensor_tv, 1.0)), InputError);
}
