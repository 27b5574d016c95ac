#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hosp/complex.hpp"
#include "hosp/flow.hpp"
#include "hosp/hodge.hpp"
#include "hosp/hypergraph.hpp"
#include "hosp/snn.hpp"
#include "hosp/tensor.hpp"

namespace hosp::io {

using json = nlohmann::json;

/// 64-bit FNV-1a as 16 hex digits.
inline std::string fnv1a64(const std::string& bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Write through a sibling temporary and rename, so readers never see a
/// partial file.
inline void write_file_atomic(const std::string& path, const std::string& content)
{
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw InputError("cannot write '" + path + "'");
        out << content;
        out.flush();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw InputError("write failed for '" + path + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw InputError("cannot move output into place at '" + path + "'");
    }
}

inline json parse_json(const std::string& text, const std::string& what)
{
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(what + ": malformed JSON (" + e.what() + ")");
    }
}

namespace detail {

template <class T>
T get_as(const json& j, const char* key, const std::string& what)
{
    if (!j.is_object() || !j.contains(key))
        throw InputError(what + ": missing field '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw InputError(what + ": field '" + std::string(key) + "' has the wrong type");
    }
}

inline std::string fmt17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Splits CSV text into rows of trimmed cells, skipping blank lines.
inline std::vector<std::vector<std::string>> csv_rows(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos)
            continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) {
            const auto a = cell.find_first_not_of(" \t");
            const auto b = cell.find_last_not_of(" \t");
            cells.push_back(a == std::string::npos ? "" : cell.substr(a, b - a + 1));
        }
        rows.push_back(std::move(cells));
    }
    return rows;
}

inline double parse_double(const std::string& s, const std::string& what)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size())
            throw InputError(what + ": bad number '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        throw InputError(what + ": bad number '" + s + "'");
    }
}

inline long long parse_int(const std::string& s, const std::string& what)
{
    try {
        std::size_t used = 0;
        const long long v = std::stoll(s, &used);
        if (used != s.size())
            throw InputError(what + ": bad integer '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        throw InputError(what + ": bad integer '" + s + "'");
    }
}

}  // namespace detail

// ---- complexes ----------------------------------------------------------

inline json complex_to_json(const SimplicialComplex& x)
{
    json j;
    j["n_vertices"] = x.n_vertices();
    json s = json::object();
    for (int k = 1; k <= x.top_order(); ++k)
        s[std::to_string(k)] = x.simplices(k);
    j["simplices"] = s;
    return j;
}

/// Reads the complex format and checks it with validate().
inline SimplicialComplex complex_from_json(const json& j)
{
    const std::string what = "complex";
    const int n = detail::get_as<int>(j, "n_vertices", what);
    if (n < 0)
        throw InputError("complex: negative n_vertices");
    std::vector<std::vector<Simplex>> by_order(1);
    if (j.contains("simplices")) {
        const json& s = j.at("simplices");
        if (!s.is_object())
            throw InputError("complex: 'simplices' must be an object keyed by order");
        for (const auto& [key, list] : s.items()) {
            const long long k = detail::parse_int(key, what);
            if (k < 1 || k > 64)
                throw InputError("complex: bad order key '" + key + "'");
            if (by_order.size() <= static_cast<std::size_t>(k))
                by_order.resize(static_cast<std::size_t>(k) + 1);
            try {
                by_order[static_cast<std::size_t>(k)] = list.get<std::vector<Simplex>>();
            } catch (const json::exception&) {
                throw InputError("complex: order " + key + " is not a list of integer tuples");
            }
        }
    }
    SimplicialComplex x = SimplicialComplex::from_simplices(n, std::move(by_order));
    const ValidationReport r = validate(x);
    if (!r.ok)
        throw InputError("complex: " + r.message);
    return x;
}

inline json facets_to_json(const SimplicialComplex& x)
{
    return json{{"n_vertices", x.n_vertices()}, {"facets", x.facets()}};
}

inline SimplicialComplex facets_from_json(const json& j)
{
    const std::string what = "facet file";
    const int n = detail::get_as<int>(j, "n_vertices", what);
    const auto facets = detail::get_as<std::vector<std::vector<int>>>(j, "facets", what);
    return build_complex(facets, n);
}

// ---- signals ------------------------------------------------------------

inline std::string signal_to_csv(const Vector& s)
{
    std::string out = "index,value\n";
    for (Index i = 0; i < s.size(); ++i)
        out += std::to_string(i) + "," + detail::fmt17(s(i)) + "\n";
    return out;
}

/// Expects header index,value and indices 0..n-1 in order. With
/// expected >= 0 the length is checked as well.
inline Vector signal_from_csv(const std::string& text, Index expected = -1)
{
    const auto rows = detail::csv_rows(text);
    if (rows.empty() || rows[0].size() != 2 || rows[0][0] != "index" || rows[0][1] != "value")
        throw InputError("signal CSV: header must be 'index,value'");
    Vector s(static_cast<Index>(rows.size()) - 1);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != 2)
            throw InputError("signal CSV: line " + std::to_string(r + 1) + " needs two fields");
        if (detail::parse_int(rows[r][0], "signal CSV") != static_cast<long long>(r - 1))
            throw InputError("signal CSV: indices must run 0..n-1 in canonical order");
        s(static_cast<Index>(r - 1)) = detail::parse_double(rows[r][1], "signal CSV");
    }
    if (expected >= 0 && s.size() != expected)
        throw InputError("signal CSV: has " + std::to_string(s.size()) + " entries, expected " +
                         std::to_string(expected));
    return s;
}

inline std::string labels_to_csv(const LabeledSignal& l, const std::string& index_name)
{
    std::string out = index_name + ",value\n";
    for (std::size_t i = 0; i < l.indices.size(); ++i)
        out += std::to_string(l.indices[i]) + "," + detail::fmt17(l.values[i]) + "\n";
    return out;
}

/// Labels CSV with header '<index_name>,value' (edge_index or vertex).
inline LabeledSignal labels_from_csv(const std::string& text, Index size, const std::string& index_name)
{
    const auto rows = detail::csv_rows(text);
    if (rows.empty() || rows[0].size() != 2 || rows[0][0] != index_name || rows[0][1] != "value")
        throw InputError("labels CSV: header must be '" + index_name + ",value'");
    LabeledSignal l;
    l.size = size;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != 2)
            throw InputError("labels CSV: line " + std::to_string(r + 1) + " needs two fields");
        l.indices.push_back(static_cast<Index>(detail::parse_int(rows[r][0], "labels CSV")));
        l.values.push_back(detail::parse_double(rows[r][1], "labels CSV"));
    }
    l.check("labels CSV");
    return l;
}

inline json vector_to_json(const Vector& v)
{
    return json(std::vector<double>(v.data(), v.data() + v.size()));
}

inline Vector vector_from_json(const json& j, const std::string& what)
{
    try {
        const auto v = j.get<std::vector<double>>();
        return Eigen::Map<const Vector>(v.data(), static_cast<Index>(v.size()));
    } catch (const json::exception&) {
        throw InputError(what + ": expected an array of numbers");
    }
}

/// Dense matrix as {"rows", "cols", "data" (row-major)}.
inline json matrix_to_json(const Matrix& m)
{
    std::vector<double> data;
    data.reserve(static_cast<std::size_t>(m.size()));
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j)
            data.push_back(m(i, j));
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

inline Matrix matrix_from_json(const json& j, const std::string& what)
{
    const auto r = detail::get_as<Index>(j, "rows", what);
    const auto c = detail::get_as<Index>(j, "cols", what);
    const auto data = detail::get_as<std::vector<double>>(j, "data", what);
    if (r < 0 || c < 0 || static_cast<Index>(data.size()) != r * c)
        throw InputError(what + ": data length does not match rows*cols");
    Matrix m(r, c);
    for (Index i = 0; i < r; ++i)
        for (Index k = 0; k < c; ++k)
            m(i, k) = data[static_cast<std::size_t>(i * c + k)];
    return m;
}

inline std::string matrix_to_csv(const Matrix& m)
{
    std::string out;
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            if (j > 0)
                out += ",";
            out += detail::fmt17(m(i, j));
        }
        out += "\n";
    }
    return out;
}

// ---- trajectories and architectures --------------------------------------

inline json trajectory_to_json(const Trajectory& t)
{
    return json{{"vertices", t.vertices}};
}

inline Trajectory trajectory_from_json(const json& j)
{
    return Trajectory{detail::get_as<std::vector<int>>(j, "vertices", "trajectory")};
}

/// {"depth": K, "features": [F0..FK], "activation": tag,
///  "weights": [[row-major W_1], ...]}.
inline LayerStack architecture_from_json(const json& j)
{
    const std::string what = "architecture";
    const int depth = detail::get_as<int>(j, "depth", what);
    const auto feats = detail::get_as<std::vector<int>>(j, "features", what);
    const auto act = detail::get_as<std::string>(j, "activation", what);
    if (depth < 0 || static_cast<int>(feats.size()) != depth + 1)
        throw InputError("architecture: need depth + 1 feature sizes");
    for (int f : feats)
        if (f < 1)
            throw InputError("architecture: feature sizes must be positive");
    LayerStack stack;
    stack.activation = Activation(parse_activation(act));
    std::vector<std::vector<double>> weights;
    if (j.contains("weights"))
        weights = detail::get_as<std::vector<std::vector<double>>>(j, "weights", what);
    if (!weights.empty() && static_cast<int>(weights.size()) != depth)
        throw InputError("architecture: need one weight array per layer");
    for (int k = 0; k < depth; ++k) {
        const Index r = feats[static_cast<std::size_t>(k)];
        const Index c = feats[static_cast<std::size_t>(k) + 1];
        Matrix w;
        if (weights.empty()) {
            if (r != c)
                throw InputError("architecture: weights required when feature sizes change");
            w = Matrix::Identity(r, c);
        } else {
            const auto& data = weights[static_cast<std::size_t>(k)];
            if (static_cast<Index>(data.size()) != r * c)
                throw InputError("architecture: layer " + std::to_string(k + 1) + " weight size mismatch");
            w.resize(r, c);
            for (Index a = 0; a < r; ++a)
                for (Index b = 0; b < c; ++b)
                    w(a, b) = data[static_cast<std::size_t>(a * c + b)];
        }
        stack.weights.push_back(std::move(w));
    }
    return stack;
}

inline json architecture_to_json(const LayerStack& stack)
{
    json j;
    j["depth"] = stack.weights.size();
    std::vector<Index> feats;
    std::vector<std::vector<double>> weights;
    for (const auto& w : stack.weights) {
        if (feats.empty())
            feats.push_back(w.rows());
        feats.push_back(w.cols());
        std::vector<double> data;
        for (Index a = 0; a < w.rows(); ++a)
            for (Index b = 0; b < w.cols(); ++b)
                data.push_back(w(a, b));
        weights.push_back(std::move(data));
    }
    if (feats.empty())
        feats.push_back(1);
    j["features"] = feats;
    j["activation"] = to_string(stack.activation.kind());
    j["weights"] = weights;
    return j;
}

// ---- hypergraphs and tensors ----------------------------------------------

inline json hypergraph_to_json(const Hypergraph& h)
{
    json edges = json::array();
    for (Index e = 0; e < h.n_edges(); ++e)
        edges.push_back(json{{"nodes", h.edge(e)}, {"weight", h.weight(e)}});
    return json{{"n_vertices", h.n_vertices()}, {"hyperedges", edges}};
}

inline Hypergraph hypergraph_from_json(const json& j)
{
    const std::string what = "hypergraph";
    const int n = detail::get_as<int>(j, "n_vertices", what);
    const auto list = detail::get_as<std::vector<json>>(j, "hyperedges", what);
    std::vector<std::vector<int>> edges;
    std::vector<double> weights;
    for (const auto& e : list) {
        edges.push_back(detail::get_as<std::vector<int>>(e, "nodes", what));
        weights.push_back(e.contains("weight") ? detail::get_as<double>(e, "weight", what) : 1.0);
    }
    return Hypergraph(n, std::move(edges), std::move(weights));
}

inline json tensor_to_json(const SymTensor<double>& s)
{
    json entries = json::array();
    for (const auto& [key, v] : s.entries())
        entries.push_back(json{{"key", key}, {"value", v}});
    return json{{"order", s.order()}, {"dim", s.dim()}, {"entries", entries}};
}

inline SymTensor<double> tensor_from_json(const json& j)
{
    const std::string what = "tensor";
    SymTensor<double> s(detail::get_as<int>(j, "order", what), detail::get_as<int>(j, "dim", what));
    for (const auto& e : detail::get_as<std::vector<json>>(j, "entries", what)) {
        const auto key = detail::get_as<std::vector<int>>(e, "key", what);
        std::vector<int> sorted = key;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != key)
            throw InputError("tensor: keys must be sorted");
        if (s.get(key) != 0.0)
            throw InputError("tensor: duplicate key");
        s.set(key, detail::get_as<double>(e, "value", what));
    }
    return s;
}

inline json decomposition_to_json(const HodgeDecomposition& d)
{
    return json{{"gradient", vector_to_json(d.gradient)},
                {"curl", vector_to_json(d.curl)},
                {"harmonic", vector_to_json(d.harmonic)},
                {"node_potentials", vector_to_json(d.node_potentials)},
                {"triangle_potentials", vector_to_json(d.triangle_potentials)}};
}

inline HodgeDecomposition decomposition_from_json(const json& j)
{
    const std::string what = "decomposition";
    auto field = [&](const char* k) {
        if (!j.contains(k))
            throw InputError(what + ": missing field '" + k + "'");
        return vector_from_json(j.at(k), what);
    };
    return {field("gradient"), field("curl"), field("harmonic"), field("node_potentials"),
            field("triangle_potentials")};
}

}  // namespace hosp::io
