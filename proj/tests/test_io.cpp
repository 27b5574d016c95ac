#include <gtest/gtest.h>

#include "hosp/io.hpp"
#include "support.hpp"

using namespace hosp;
using namespace hosp::test;
using io::json;

TEST(IoComplex, RoundTrip)
{
    const SimplicialComplex x = two_triangle_complex();
    const json j = io::complex_to_json(x);
    EXPECT_EQ(j["n_vertices"], 7);
    EXPECT_EQ(j["simplices"]["1"].size(), 10u);
    EXPECT_EQ(j["simplices"]["2"].size(), 2u);
    const SimplicialComplex y = io::complex_from_json(json::parse(j.dump()));
    EXPECT_EQ(io::complex_to_json(y), j);
    EXPECT_EQ(boundary_int(y, 1), two_triangle_b1());
}

TEST(IoComplex, RejectsMissingFaceAndBadKeys)
{
    const json missing = json::parse(R"({"n_vertices": 3, "simplices": {"1": [[0,1],[1,2]], "2": [[0,1,2]]}})");
    EXPECT_THROW(io::complex_from_json(missing), InputError);
    const json unsorted = json::parse(R"({"n_vertices": 2, "simplices": {"1": [[1,0]]}})");
    EXPECT_THROW(io::complex_from_json(unsorted), InputError);
    EXPECT_THROW(io::complex_from_json(json::parse(R"({"n_vertices": 2, "simplices": {"x": []}})")), InputError);
    EXPECT_THROW(io::complex_from_json(json::parse(R"({"simplices": {}})")), InputError);
    EXPECT_THROW(io::complex_from_json(json::parse(R"({"n_vertices": 2, "simplices": {"1": "no"}})")),
                 InputError);
}

TEST(IoFacets, RoundTrip)
{
    const SimplicialComplex x = two_triangle_complex();
    const json j = io::facets_to_json(x);
    const SimplicialComplex y = io::facets_from_json(j);
    EXPECT_EQ(io::complex_to_json(x), io::complex_to_json(y));
    EXPECT_THROW(io::facets_from_json(json::parse(R"({"facets": [[0,1]]})")), InputError);
    EXPECT_THROW(io::facets_from_json(json::parse(R"({"n_vertices": 2, "facets": [[0,5]]})")), InputError);
}

TEST(IoSignal, RoundTripIsExact)
{
    Vector s(4);
    s << 0.1, -1.0 / 3.0, 1e-300, 12345.678901234567;
    const std::string text = io::signal_to_csv(s);
    EXPECT_EQ(text.substr(0, 12), "index,value\n");
    const Vector t = io::signal_from_csv(text, 4);
    for (Index i = 0; i < 4; ++i)
        EXPECT_EQ(t(i), s(i));
}

TEST(IoSignal, Malformed)
{
    EXPECT_THROW(io::signal_from_csv("i,v\n0,1\n"), InputError);
    EXPECT_THROW(io::signal_from_csv("index,value\n1,1\n"), InputError);
    EXPECT_THROW(io::signal_from_csv("index,value\n0,abc\n"), InputError);
    EXPECT_THROW(io::signal_from_csv("index,value\n0,1,2\n"), InputError);
    EXPECT_THROW(io::signal_from_csv("index,value\n0,1\n", 2), InputError);
    EXPECT_EQ(io::signal_from_csv("index,value\r\n0, 2.5\r\n\n1,3\n").size(), 2);
}

TEST(IoLabels, RoundTrip)
{
    LabeledSignal l;
    l.size = 10;
    l.indices = {1, 2, 5};
    l.values = {-2.0, 4.0, 0.25};
    const std::string text = io::labels_to_csv(l, "edge_index");
    const LabeledSignal m = io::labels_from_csv(text, 10, "edge_index");
    EXPECT_EQ(m.indices, l.indices);
    EXPECT_EQ(m.values, l.values);
    EXPECT_THROW(io::labels_from_csv(text, 10, "vertex"), InputError);
    EXPECT_THROW(io::labels_from_csv("vertex,value\n12,1\n", 10, "vertex"), InputError);
}

TEST(IoMatrix, RoundTripAndCsv)
{
    Matrix m(2, 3);
    m << 1, 2, 3, 4, 5, 6.5;
    const json j = io::matrix_to_json(m);
    EXPECT_EQ(j["data"], json::parse("[1,2,3,4,5,6.5]"));
    EXPECT_EQ(io::matrix_from_json(j, "m"), m);
    EXPECT_EQ(io::matrix_to_csv(m), "1,2,3\n4,5,6.5\n");
    EXPECT_THROW(io::matrix_from_json(json::parse(R"({"rows":2,"cols":2,"data":[1]})"), "m"), InputError);
}

TEST(IoHypergraph, RoundTripAndDefaultWeight)
{
    const Hypergraph h(5, {{0, 1, 2}, {2, 3, 4}}, {1.0, 2.5});
    const json j = io::hypergraph_to_json(h);
    const Hypergraph g = io::hypergraph_from_json(json::parse(j.dump()));
    EXPECT_EQ(io::hypergraph_to_json(g), j);
    const Hypergraph d = io::hypergraph_from_json(json::parse(R"({"n_vertices": 3, "hyperedges": [{"nodes": [0,2]}]})"));
    EXPECT_EQ(d.weight(0), 1.0);
    EXPECT_THROW(io::hypergraph_from_json(json::parse(R"({"n_vertices": 2, "hyperedges": [{"nodes": [0,4]}]})")),
                 InputError);
}

TEST(IoTensor, RoundTripAndKeyRules)
{
    SymTensor<double> s(3, 4);
    s.set({0, 1, 2}, 0.5);
    s.set({1, 1, 3}, -2.0);
    const json j = io::tensor_to_json(s);
    const SymTensor<double> t = io::tensor_from_json(json::parse(j.dump()));
    EXPECT_EQ(t.get({2, 1, 0}), 0.5);
    EXPECT_EQ(t.get({3, 1, 1}), -2.0);
    EXPECT_EQ(io::tensor_to_json(t), j);
    EXPECT_THROW(io::tensor_from_json(json::parse(
                     R"({"order":2,"dim":3,"entries":[{"key":[1,0],"value":1}]})")),
                 InputError);
    EXPECT_THROW(io::tensor_from_json(json::parse(
                     R"({"order":2,"dim":3,"entries":[{"key":[0,1],"value":1},{"key":[0,1],"value":2}]})")),
                 InputError);
}

TEST(IoTrajectory, RoundTrip)
{
    const Trajectory t{{0, 2, 5, 6}};
    EXPECT_EQ(io::trajectory_from_json(io::trajectory_to_json(t)).vertices, t.vertices);
    EXPECT_THROW(io::trajectory_from_json(json::parse(R"({"path": []})")), InputError);
}

TEST(IoArchitecture, RoundTripAndDefaults)
{
    const json j = json::parse(R"({"depth": 2, "features": [2, 3, 1], "activation": "tanh",
                                   "weights": [[1,2,3,4,5,6],[0.5,-1,2]]})");
    const LayerStack s = io::architecture_from_json(j);
    ASSERT_EQ(s.weights.size(), 2u);
    EXPECT_EQ(s.weights[0](1, 2), 6.0);
    EXPECT_EQ(s.weights[1](2, 0), 2.0);
    const LayerStack r = io::architecture_from_json(io::architecture_to_json(s));
    EXPECT_EQ(r.weights[0], s.weights[0]);
    EXPECT_EQ(r.weights[1], s.weights[1]);

    const LayerStack id = io::architecture_from_json(json::parse(R"({"depth": 1, "features": [3, 3], "activation": "identity"})"));
    EXPECT_EQ(id.weights[0], Matrix::Identity(3, 3));

    EXPECT_THROW(io::architecture_from_json(json::parse(R"({"depth": 1, "features": [2, 3], "activation": "tanh"})")),
                 InputError);
    EXPECT_THROW(io::architecture_from_json(json::parse(R"({"depth": 2, "features": [2, 2], "activation": "tanh"})")),
                 InputError);
    EXPECT_THROW(io::architecture_from_json(json::parse(R"({"depth": 1, "features": [2, 2], "activation": "gelu"})")),
                 InputError);
}

TEST(IoDecomposition, RoundTrip)
{
    const HodgeDecomposition d = hodge_decompose(two_triangle_complex(), two_triangle_flow());
    const HodgeDecomposition e = io::decomposition_from_json(json::parse(io::decomposition_to_json(d).dump()));
    EXPECT_EQ(e.gradient, d.gradient);
    EXPECT_EQ(e.curl, d.curl);
    EXPECT_EQ(e.harmonic, d.harmonic);
    EXPECT_EQ(e.node_potentials, d.node_potentials);
    EXPECT_EQ(e.triangle_potentials, d.triangle_potentials);
    EXPECT_THROW(io::decomposition_from_json(json::parse(R"({"gradient": [1]})")), InputError);
}

TEST(IoMisc, MalformedJsonAndHash)
{
    EXPECT_THROW(io::parse_json("{", "x"), InputError);
    EXPECT_EQ(io::fnv1a64(""), "cbf29ce484222325");
    EXPECT_EQ(io::fnv1a64("a"), "af63dc4c8601ec8c");
    EXPECT_THROW(io::read_file("/nonexistent/definitely/not/here"), InputError);
}

TEST(IoMisc, AtomicWriteReplacesFile)
{
    const auto path = (std::filesystem::temp_directory_path() / "hosp_io_atomic.txt").string();
    io::write_file_atomic(path, "first");
    io::write_file_atomic(path, "second");
    EXPECT_EQ(io::read_file(path), "second");
    EXPECT_FALSE(std::filesystem::exists(path + ".tmp"));
    std::filesystem::remove(path);
}
