#pragma once

#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hosp/hosp.hpp"
#include "hosp/io.hpp"
#include "hosp/plot.hpp"

namespace hosp::cli {

using json = nlohmann::json;

enum ExitCode : int { ok = 0, user_error = 1, numerical_error = 2 };

struct Options {
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "json";

    std::string facets, complex_path, matrix_path, signal_path, flow_path, labels_path, points_path;
    std::string nodes_path, triangles_path, arch_path, flip_path, hypergraph_path, tensor_path, basis_path;
    std::string coefficients_path, input_path;
    std::vector<std::string> traj_paths;
    std::string holes;
    std::string op = "hodge";
    std::string kind;
    std::string normalization = "cooper";
    std::string laplacian_kind;
    std::string response = "lowpass";
    std::string reg = "quadratic";
    std::string activation = "tanh";
    std::string model = "gcn";
    int order = 1;
    int dims = 2;
    int depth = 1;
    int n_points = 400;
    Index rank = -1;
    double alpha = 1.0;
    bool triangles = false;
    bool normalized = false;
    bool inverse = false;
};

/// Payload of one command: JSON always, CSV when the result is a plain
/// vector or matrix, raw text for SVG.
struct Result {
    json body = json::object();
    std::optional<std::string> csv;
    std::optional<std::string> raw;
};

class Context {
public:
    Context(const Options& o, std::string command) : opt(o), command_(std::move(command)) {}

    const Options& opt;

    std::string read(const std::string& flag, const std::string& path)
    {
        if (path.empty())
            throw InputError("missing required input --" + flag);
        std::string text = io::read_file(path);
        inputs_[flag] = json{{"path", path}, {"fnv1a64", io::fnv1a64(text)}};
        return text;
    }

    json read_json(const std::string& flag, const std::string& path)
    {
        return io::parse_json(read(flag, path), flag);
    }

    SimplicialComplex complex(bool check = true)
    {
        json j = read_json("complex", opt.complex_path);
        return check ? io::complex_from_json(j) : unchecked_complex(j);
    }

    Hypergraph hypergraph() { return io::hypergraph_from_json(read_json("hypergraph", opt.hypergraph_path)); }

    json meta() const { return json{{"command", command_}, {"seed", opt.seed}, {"inputs", inputs_}}; }

private:
    static SimplicialComplex unchecked_complex(const json& j)
    {
        const int n = j.value("n_vertices", -1);
        if (n < 0)
            throw InputError("complex: missing or negative n_vertices");
        std::vector<std::vector<Simplex>> by_order(1);
        if (j.contains("simplices"))
            for (const auto& [key, list] : j.at("simplices").items()) {
                const long long k = io::detail::parse_int(key, "complex");
                if (k < 1 || k > 64)
                    throw InputError("complex: bad order key '" + key + "'");
                if (by_order.size() <= static_cast<std::size_t>(k))
                    by_order.resize(static_cast<std::size_t>(k) + 1);
                by_order[static_cast<std::size_t>(k)] = list.get<std::vector<Simplex>>();
            }
        return SimplicialComplex::from_simplices(n, std::move(by_order));
    }

    std::string command_;
    json inputs_ = json::object();
};

namespace detail {

inline Result vector_result(const char* name, const Vector& v)
{
    Result r;
    r.body[name] = io::vector_to_json(v);
    r.csv = io::signal_to_csv(v);
    return r;
}

inline Result matrix_result(const char* name, const Matrix& m)
{
    Result r;
    r.body[name] = io::matrix_to_json(m);
    r.csv = io::matrix_to_csv(m);
    return r;
}

inline FlowOperator parse_flow_operator(const std::string& s)
{
    if (s == "hodge")
        return FlowOperator::hodge;
    if (s == "edge")
        return FlowOperator::edge;
    if (s == "linegraph")
        return FlowOperator::linegraph;
    throw InputError("unknown operator '" + s + "' (hodge, edge, linegraph)");
}

inline ExpansionKind parse_expansion(const std::string& s)
{
    if (s == "star")
        return ExpansionKind::star;
    if (s == "clique")
        return ExpansionKind::clique;
    if (s == "line_graph" || s == "line-graph")
        return ExpansionKind::line_graph;
    if (s == "line_expansion" || s == "line-expansion")
        return ExpansionKind::line_expansion;
    throw InputError("unknown expansion '" + s + "'");
}

inline std::vector<Point2> parse_holes(const std::string& s)
{
    std::vector<Point2> out;
    if (s.empty())
        return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ';')) {
        const auto comma = item.find(',');
        if (comma == std::string::npos)
            throw InputError("holes: expected 'x,y;x,y'");
        out.push_back({io::detail::parse_double(item.substr(0, comma), "holes"),
                       io::detail::parse_double(item.substr(comma + 1), "holes")});
    }
    return out;
}

/// Operator from --matrix, or the order-k Hodge Laplacian of --complex.
inline Matrix operator_input(Context& c)
{
    if (!c.opt.matrix_path.empty())
        return io::matrix_from_json(c.read_json("matrix", c.opt.matrix_path), "matrix");
    return hodge_laplacian(c.complex(), c.opt.order);
}

inline json basis_json(const HgFourierBasis& b)
{
    std::vector<int> completed(b.completed.begin(), b.completed.end());
    return json{{"order", b.order},
                {"rank", b.rank},
                {"lambdas", io::vector_to_json(b.lambdas)},
                {"basis", io::matrix_to_json(b.basis)},
                {"completed", completed},
                {"residual", b.residual},
                {"converged", b.converged}};
}

inline HgFourierBasis basis_from_json(const json& j)
{
    HgFourierBasis b;
    b.order = io::detail::get_as<int>(j, "order", "basis");
    b.rank = io::detail::get_as<Index>(j, "rank", "basis");
    b.lambdas = io::vector_from_json(j.at("lambdas"), "basis");
    b.basis = io::matrix_from_json(j.at("basis"), "basis");
    for (int v : io::detail::get_as<std::vector<int>>(j, "completed", "basis"))
        b.completed.push_back(v != 0);
    b.residual = j.value("residual", 0.0);
    if (b.basis.rows() != b.basis.cols() || b.lambdas.size() != b.basis.cols())
        throw InputError("basis: inconsistent sizes");
    return b;
}

inline json denoise_json(const DenoiseResult& r)
{
    json j{{"signal", io::vector_to_json(r.x)},
           {"objective", r.objective},
           {"iterations", r.iterations},
           {"converged", r.converged},
           {"objective_trace_first", r.objective_trace.front()},
           {"objective_trace_last", r.objective_trace.back()}};
    if (!r.dual_trace.empty()) {
        j["dual_bound"] = r.dual_trace.back();
        j["gap"] = r.gap;
    }
    return j;
}

}  // namespace detail

using Handler = std::function<Result(Context&)>;

// ---- command handlers ------------------------------------------------------

inline Result complex_build(Context& c)
{
    Result r;
    r.body = io::complex_to_json(io::facets_from_json(c.read_json("facets", c.opt.facets)));
    return r;
}

inline Result complex_validate(Context& c)
{
    const ValidationReport rep = validate(c.complex(false));
    Result r;
    r.body = json{{"ok", rep.ok}, {"message", rep.message}, {"order", rep.order}, {"simplex", rep.simplex}};
    return r;
}

inline Result complex_boundary(Context& c)
{
    const BoundaryMatrix b = boundary_matrix(c.complex(), c.opt.order);
    Result r = detail::matrix_result("boundary", b.dense());
    r.body["order"] = b.order;
    return r;
}

inline Result complex_delaunay(Context& c)
{
    std::vector<Point2> pts;
    if (!c.opt.points_path.empty()) {
        const json j = c.read_json("points", c.opt.points_path);
        for (const auto& p : io::detail::get_as<std::vector<std::vector<double>>>(j, "points", "points")) {
            if (p.size() != 2)
                throw InputError("points: each point needs two coordinates");
            pts.push_back({p[0], p[1]});
        }
    } else {
        if (c.opt.n_points < 3)
            throw InputError("delaunay: --n must be at least 3");
        pts = uniform_points(c.opt.n_points, c.opt.seed);
    }
    const DelaunayComplex d = delaunay_complex(pts, detail::parse_holes(c.opt.holes));
    Result r;
    r.body = io::complex_to_json(d.complex);
    json coords = json::array();
    for (const auto& p : d.points)
        coords.push_back({p.x, p.y});
    r.body["points"] = coords;
    r.body["original_index"] = d.original_index;
    r.body["removed"] = d.removed;
    return r;
}

inline Result spectral_eig(Context& c)
{
    const SpectralBasis b = sym_eig(detail::operator_input(c));
    Result r;
    r.body["eigenvalues"] = io::vector_to_json(b.eigenvalues);
    r.body["eigenvectors"] = io::matrix_to_json(b.eigenvectors);
    r.csv = io::signal_to_csv(b.eigenvalues);
    return r;
}

inline Result spectral_gft(Context& c)
{
    const SpectralBasis b = sym_eig(detail::operator_input(c));
    const Vector s = io::signal_from_csv(c.read("signal", c.opt.signal_path), b.size());
    Result r = detail::vector_result("coefficients", gft(b, s));
    r.body["eigenvalues"] = io::vector_to_json(b.eigenvalues);
    return r;
}

inline Result spectral_filter(Context& c)
{
    const SpectralBasis b = sym_eig(detail::operator_input(c));
    const Vector s = io::signal_from_csv(c.read("signal", c.opt.signal_path), b.size());
    const double a = c.opt.alpha;
    FrequencyResponse h;
    if (c.opt.response == "lowpass")
        h = [a](double l) { return 1.0 / (1.0 + a * l); };
    else if (c.opt.response == "heat")
        h = [a](double l) { return std::exp(-a * l); };
    else if (c.opt.response == "highpass")
        h = [a](double l) { return a * l / (1.0 + a * l); };
    else
        throw InputError("unknown response '" + c.opt.response + "' (lowpass, heat, highpass)");
    return detail::vector_result("signal", apply_filter(b, h, s));
}

inline Result spectral_eigenmap(Context& c)
{
    const Matrix l = c.opt.matrix_path.empty() ? hodge_laplacian(c.complex(), 0) : detail::operator_input(c);
    return detail::matrix_result("coordinates", laplacian_eigenmap(l, c.opt.dims, c.opt.normalized));
}

inline Result hodge_laplacian_cmd(Context& c)
{
    const SimplicialComplex x = c.complex();
    if (c.opt.kind.empty() || c.opt.kind == "hodge")
        return detail::matrix_result("laplacian", hodge_laplacian(x, c.opt.order));
    return detail::matrix_result("laplacian", flow_operator(x, detail::parse_flow_operator(c.opt.kind)));
}

inline Result hodge_decompose_cmd(Context& c)
{
    const SimplicialComplex x = c.complex();
    const Vector f = io::signal_from_csv(c.read("flow", c.opt.flow_path), x.count(1));
    Result r;
    r.body = io::decomposition_to_json(hodge_decompose(x, f));
    return r;
}

inline Result hodge_basis_cmd(Context& c)
{
    const SimplicialComplex x = c.complex();
    const LabeledBasis lb = spectral_components(x);
    std::vector<std::string> tags;
    for (auto t : lb.tags)
        tags.push_back(to_string(t));
    Result r = detail::matrix_result("harmonic", harmonic_basis(x));
    r.body["eigenvalues"] = io::vector_to_json(lb.basis.eigenvalues);
    r.body["eigenvectors"] = io::matrix_to_json(lb.basis.eigenvectors);
    r.body["tags"] = tags;
    r.body["counts"] = json{{"gradient", lb.count(ModeKind::gradient)},
                            {"curl", lb.count(ModeKind::curl)},
                            {"harmonic", lb.count(ModeKind::harmonic)}};
    return r;
}

inline Result flow_denoise(Context& c)
{
    const SimplicialComplex x = c.complex();
    const Vector f = io::signal_from_csv(c.read("flow", c.opt.flow_path), x.count(1));
    return detail::vector_result("signal", denoise_flow(x, f, c.opt.alpha, detail::parse_flow_operator(c.opt.op)));
}

inline Result flow_interpolate(Context& c)
{
    const SimplicialComplex x = c.complex();
    const LabeledFlow l = io::labels_from_csv(c.read("labels", c.opt.labels_path), x.count(1), "edge_index");
    return detail::vector_result("signal", interpolate_flow(x, l, c.opt.alpha, c.opt.triangles));
}

inline Result flow_divergence(Context& c)
{
    const SimplicialComplex x = c.complex();
    const Vector f = io::signal_from_csv(c.read("flow", c.opt.flow_path), x.count(1));
    return detail::vector_result("divergence", divergence(x, f));
}

inline Result traj_flow(Context& c)
{
    const SimplicialComplex x = c.complex();
    if (c.opt.traj_paths.size() != 1)
        throw InputError("traj flow: give exactly one --traj");
    const Trajectory t = io::trajectory_from_json(c.read_json("traj", c.opt.traj_paths[0]));
    return detail::vector_result("flow", trajectory_flow(x, t));
}

inline Result traj_embed(Context& c)
{
    const SimplicialComplex x = c.complex();
    if (c.opt.traj_paths.empty())
        throw InputError("traj embed: give at least one --traj");
    const Matrix harm = harmonic_basis(x);
    Result r;
    json series = json::array();
    Matrix finals(static_cast<Index>(c.opt.traj_paths.size()), harm.cols());
    for (std::size_t i = 0; i < c.opt.traj_paths.size(); ++i) {
        const auto& path = c.opt.traj_paths[i];
        const Trajectory t = io::trajectory_from_json(c.read_json("traj" + std::to_string(i), path));
        const Matrix e = embed_trajectory(x, t, harm);
        json pts = json::array();
        for (Index k = 0; k < e.rows(); ++k)
            pts.push_back(io::vector_to_json(e.row(k).transpose()));
        series.push_back(json{{"name", path}, {"points", pts}});
        finals.row(static_cast<Index>(i)) = e.row(e.rows() - 1);
    }
    r.body["harmonic_dim"] = harm.cols();
    r.body["series"] = series;
    r.csv = io::matrix_to_csv(finals);
    return r;
}

inline Result snn_forward_cmd(Context& c)
{
    const SimplicialComplex x = c.complex();
    const SnnOperators ops = snn_operators(x);
    auto load = [&](const char* flag, const std::string& path, Index n) -> Matrix {
        if (path.empty())
            return Matrix::Zero(n, 1);
        return io::signal_from_csv(c.read(flag, path), n);
    };
    SnnSignals in{load("nodes", c.opt.nodes_path, ops.n0()), load("flow", c.opt.flow_path, ops.n1()),
                  load("triangles", c.opt.triangles_path, ops.n2())};
    const SnnSignals out = snn_forward(ops, in, c.opt.depth, Activation(parse_activation(c.opt.activation)));
    Result r;
    r.body["v"] = io::vector_to_json(out.v.col(0));
    r.body["f"] = io::vector_to_json(out.f.col(0));
    r.body["t"] = out.t.rows() > 0 ? io::vector_to_json(out.t.col(0)) : json::array();
    return r;
}

inline Result snn_check_cmd(Context& c)
{
    const SimplicialComplex x = c.complex();
    const SnnOperators ops = snn_operators(x);
    CounterRng rng(c.opt.seed);
    OrientationFlip flip;
    if (!c.opt.flip_path.empty()) {
        flip.theta = io::signal_from_csv(c.read("flip", c.opt.flip_path), ops.n1());
    } else {
        flip.theta.resize(ops.n1());
        for (Index i = 0; i < ops.n1(); ++i)
            flip.theta(i) = rng.below(2) == 0 ? 1.0 : -1.0;
    }
    Result r;
    double dev = 0.0;
    if (c.opt.model == "gcn") {
        const LayerStack stack = io::architecture_from_json(c.read_json("arch", c.opt.arch_path));
        const Index feats = stack.weights.empty() ? 1 : stack.weights.front().rows();
        Matrix f;
        if (!c.opt.flow_path.empty()) {
            if (feats != 1)
                throw InputError("check-equivariance: --flow gives one feature but the architecture expects " +
                                 std::to_string(feats));
            f = io::signal_from_csv(c.read("flow", c.opt.flow_path), ops.n1());
        } else {
            f.resize(ops.n1(), feats);
            for (Index i = 0; i < f.size(); ++i)
                f.data()[i] = rng.gaussian();
        }
        dev = check_orientation_equivariance(ops.l1, stack, f, flip);
        r.body["activation"] = to_string(stack.activation.kind());
    } else if (c.opt.model == "snn") {
        const Activation act(parse_activation(c.opt.activation));
        SnnSignals in{Matrix(rng.gaussian_vector(ops.n0())), Matrix(rng.gaussian_vector(ops.n1())),
                      Matrix(rng.gaussian_vector(ops.n2()))};
        if (!c.opt.flow_path.empty())
            in.f = io::signal_from_csv(c.read("flow", c.opt.flow_path), ops.n1());
        dev = check_orientation_equivariance(ops, in, c.opt.depth, act, flip);
        r.body["activation"] = c.opt.activation;
    } else {
        throw InputError("unknown model '" + c.opt.model + "' (gcn, snn)");
    }
    r.body["model"] = c.opt.model;
    r.body["deviation"] = dev;
    r.body["flip"] = io::vector_to_json(flip.theta);
    return r;
}

inline Result hg_expand(Context& c)
{
    const Hypergraph h = c.hypergraph();
    Result r;
    if (c.opt.kind == "dual") {
        r.body = io::hypergraph_to_json(dual(h));
        return r;
    }
    const ExpansionGraph g = expand(h, detail::parse_expansion(c.opt.kind));
    r = detail::matrix_result("adjacency", g.adjacency);
    json origin = json::array();
    for (const auto& o : g.origin) {
        const char* k = o.kind == NodeOrigin::Kind::vertex      ? "vertex"
                        : o.kind == NodeOrigin::Kind::hyperedge ? "hyperedge"
                                                                : "incidence";
        origin.push_back(json{{"kind", k}, {"vertex", o.vertex}, {"hyperedge", o.hyperedge}});
    }
    r.body["origin"] = origin;
    return r;
}

inline Result hg_laplacian(Context& c)
{
    const Hypergraph h = c.hypergraph();
    const ExpansionGraph g = expand(h, detail::parse_expansion(c.opt.kind.empty() ? "clique" : c.opt.kind));
    return detail::matrix_result("laplacian", expansion_laplacian(g, c.opt.normalized));
}

inline Result hg_tensor(Context& c)
{
    const Hypergraph h = c.hypergraph();
    SymTensor<double> a;
    const std::string& n = c.opt.normalization;
    if (n == "general")
        a = adjacency_tensor_general(h);
    else if (n == "none")
        a = adjacency_tensor(h, TensorKind::none);
    else if (n == "cooper")
        a = adjacency_tensor(h, TensorKind::cooper);
    else if (n == "hu")
        a = adjacency_tensor(h, TensorKind::hu);
    else
        throw InputError("unknown normalization '" + n + "' (none, cooper, hu, general)");
    if (!c.opt.laplacian_kind.empty()) {
        if (c.opt.laplacian_kind == "hu")
            a = laplacian_tensor(a, LaplacianTensorKind::hu, h);
        else if (c.opt.laplacian_kind == "general")
            a = laplacian_tensor(a, LaplacianTensorKind::general, h);
        else
            throw InputError("unknown Laplacian kind '" + c.opt.laplacian_kind + "' (hu, general)");
    }
    Result r;
    r.body = io::tensor_to_json(a);
    r.body["kind"] = to_string(a.kind());
    return r;
}

inline Result hg_shift_cmd(Context& c)
{
    const SymTensor<double> s = io::tensor_from_json(c.read_json("tensor", c.opt.tensor_path));
    const Vector y = io::signal_from_csv(c.read("signal", c.opt.signal_path), s.dim());
    return detail::vector_result("signal", hg_shift(s, y));
}

inline Result hg_cp(Context& c)
{
    const SymTensor<double> s = io::tensor_from_json(c.read_json("tensor", c.opt.tensor_path));
    const Index rank = c.opt.rank < 0 ? s.dim() : c.opt.rank;
    const HgFourierBasis b = sym_cp_decompose(s, rank, c.opt.seed);
    Result r;
    r.body = detail::basis_json(b);
    return r;
}

inline Result hg_hgft(Context& c)
{
    const HgFourierBasis b = detail::basis_from_json(c.read_json("basis", c.opt.basis_path));
    const int m = b.order;
    if (c.opt.inverse) {
        const json j = c.read_json("coefficients", c.opt.coefficients_path);
        HgftCoefficients coeff;
        coeff.values = io::vector_from_json(j.at("values"), "coefficients");
        if (j.contains("signs"))
            coeff.signs = io::vector_from_json(j.at("signs"), "coefficients");
        return detail::vector_result("signal", ihgft(b, coeff, m));
    }
    const Vector y = io::signal_from_csv(c.read("signal", c.opt.signal_path), b.basis.rows());
    const HgftCoefficients coeff = hgft(b, y, m);
    Result r = detail::vector_result("values", coeff.values);
    r.body["signs"] = io::vector_to_json(coeff.signs);
    r.body["sign_ambiguous"] = coeff.sign_ambiguous;
    r.body["order"] = m;
    return r;
}

inline RegularizerSpec reg_spec(const Context& c)
{
    RegularizerSpec spec;
    spec.kind = parse_regularizer(c.opt.reg);
    spec.alpha = c.opt.alpha;
    spec.seed = c.opt.seed;
    return spec;
}

inline Result hg_denoise(Context& c)
{
    const Hypergraph h = c.hypergraph();
    const Vector y = io::signal_from_csv(c.read("signal", c.opt.signal_path), h.n_vertices());
    const DenoiseResult d = denoise(h, y, reg_spec(c));
    Result r;
    r.body = detail::denoise_json(d);
    r.csv = io::signal_to_csv(d.x);
    return r;
}

inline Result hg_interpolate(Context& c)
{
    const Hypergraph h = c.hypergraph();
    const LabeledSignal l = io::labels_from_csv(c.read("labels", c.opt.labels_path), h.n_vertices(), "vertex");
    const DenoiseResult d = interpolate_hg(h, l, reg_spec(c));
    Result r;
    r.body = detail::denoise_json(d);
    r.csv = io::signal_to_csv(d.x);
    return r;
}

/// Input: {"series": [{"name": s, "points": [[x, y, ...], ...]}]}. One
/// coordinate per point plots against the step index.
inline Result plot_cmd(Context& c)
{
    const json j = c.read_json("input", c.opt.input_path);
    std::vector<PlotSeries> series;
    for (const auto& s : io::detail::get_as<std::vector<json>>(j, "series", "plot")) {
        PlotSeries ps;
        ps.name = s.value("name", "");
        const auto pts = io::detail::get_as<std::vector<std::vector<double>>>(s, "points", "plot");
        for (std::size_t k = 0; k < pts.size(); ++k) {
            if (pts[k].empty())
                throw InputError("plot: empty point");
            if (pts[k].size() == 1)
                ps.points.push_back({static_cast<double>(k), pts[k][0]});
            else
                ps.points.push_back({pts[k][0], pts[k][1]});
        }
        series.push_back(std::move(ps));
    }
    PlotKind kind;
    if (c.opt.kind.empty() || c.opt.kind == "line")
        kind = PlotKind::line;
    else if (c.opt.kind == "scatter")
        kind = PlotKind::scatter;
    else
        throw InputError("unknown plot kind '" + c.opt.kind + "' (line, scatter)");
    Result r;
    r.raw = render_svg(series, kind);
    return r;
}

// ---- dispatch --------------------------------------------------------------

/// Runs one command line (without the program name). Output goes to --out
/// when given, else to out.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Signal processing on simplicial complexes and hypergraphs", "hosp"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--seed", opt.seed, "64-bit seed for every random draw")->capture_default_str();
    app.add_option("-o,--out", opt.out, "output file (default: standard output)");
    app.add_option("--format", opt.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

    std::string chosen;
    Handler handler;
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, Handler h) {
        CLI::App* sub = parent->add_subcommand(name, help);
        sub->callback([&chosen, &handler, parent, name, h]() {
            chosen = parent->get_name() + " " + name;
            handler = h;
        });
        return sub;
    };
    auto complex_opt = [&](CLI::App* s) { s->add_option("--complex", opt.complex_path, "complex JSON"); };

    CLI::App* cx = app.add_subcommand("complex", "simplicial complexes")->require_subcommand(1);
    leaf(cx, "build", "closure of a facet file", complex_build)->add_option("--facets", opt.facets)->required();
    complex_opt(leaf(cx, "validate", "check ordering and closure", complex_validate));
    {
        auto* s = leaf(cx, "boundary", "boundary matrix B_k", complex_boundary);
        complex_opt(s);
        s->add_option("--order,-k", opt.order)->capture_default_str();
    }
    {
        auto* s = leaf(cx, "delaunay", "Delaunay complex with punched holes", complex_delaunay);
        s->add_option("--points", opt.points_path, "JSON {\"points\": [[x,y],...]}");
        s->add_option("--n", opt.n_points, "uniform random points when --points is absent")->capture_default_str();
        s->add_option("--holes", opt.holes, "hole centers 'x,y;x,y'");
    }

    auto op_opts = [&](CLI::App* s) {
        complex_opt(s);
        s->add_option("--matrix", opt.matrix_path, "symmetric matrix JSON");
        s->add_option("--order,-k", opt.order, "Hodge Laplacian order when using --complex")->capture_default_str();
    };
    CLI::App* sp = app.add_subcommand("spectral", "eigenbasis, Fourier transform, filters")->require_subcommand(1);
    op_opts(leaf(sp, "eig", "eigendecomposition", spectral_eig));
    {
        auto* s = leaf(sp, "gft", "Fourier coefficients", spectral_gft);
        op_opts(s);
        s->add_option("--signal", opt.signal_path)->required();
    }
    {
        auto* s = leaf(sp, "filter", "spectral filter", spectral_filter);
        op_opts(s);
        s->add_option("--signal", opt.signal_path)->required();
        s->add_option("--response", opt.response, "lowpass, heat or highpass")->capture_default_str();
        s->add_option("--alpha", opt.alpha)->capture_default_str();
    }
    {
        auto* s = leaf(sp, "eigenmap", "Laplacian eigenmap coordinates", spectral_eigenmap);
        complex_opt(s);
        s->add_option("--matrix", opt.matrix_path, "Laplacian JSON");
        s->add_option("--dims,-d", opt.dims)->capture_default_str();
        s->add_flag("--normalized", opt.normalized);
    }

    CLI::App* hd = app.add_subcommand("hodge", "Hodge Laplacians and decomposition")->require_subcommand(1);
    {
        auto* s = leaf(hd, "laplacian", "L_k, or an edge-space operator", hodge_laplacian_cmd);
        complex_opt(s);
        s->add_option("--order,-k", opt.order)->capture_default_str();
        s->add_option("--kind", opt.kind, "hodge, edge or linegraph");
    }
    {
        auto* s = leaf(hd, "decompose", "gradient/curl/harmonic split", hodge_decompose_cmd);
        complex_opt(s);
        s->add_option("--flow", opt.flow_path)->required();
    }
    complex_opt(leaf(hd, "basis", "harmonic basis and tagged eigenbasis", hodge_basis_cmd));

    CLI::App* fl = app.add_subcommand("flow", "edge flow processing")->require_subcommand(1);
    {
        auto* s = leaf(fl, "denoise", "(I + alpha Q)^-1 f", flow_denoise);
        complex_opt(s);
        s->add_option("--flow", opt.flow_path)->required();
        s->add_option("--op", opt.op, "hodge, edge or linegraph")->capture_default_str();
        s->add_option("--alpha", opt.alpha)->capture_default_str();
    }
    {
        auto* s = leaf(fl, "interpolate", "semi-supervised flow completion", flow_interpolate);
        complex_opt(s);
        s->add_option("--labels", opt.labels_path, "CSV edge_index,value")->required();
        s->add_option("--alpha", opt.alpha)->capture_default_str();
        s->add_flag("--triangles", opt.triangles, "also penalize curl");
    }
    {
        auto* s = leaf(fl, "divergence", "B_1 f", flow_divergence);
        complex_opt(s);
        s->add_option("--flow", opt.flow_path)->required();
    }

    CLI::App* tr = app.add_subcommand("traj", "trajectories")->require_subcommand(1);
    {
        auto* s = leaf(tr, "flow", "edge flow of a trajectory", traj_flow);
        complex_opt(s);
        s->add_option("--traj", opt.traj_paths)->required();
    }
    {
        auto* s = leaf(tr, "embed", "harmonic embedding", traj_embed);
        complex_opt(s);
        s->add_option("--traj", opt.traj_paths, "trajectory JSON (repeatable)")->required();
    }

    CLI::App* nn = app.add_subcommand("snn", "simplicial neural layers")->require_subcommand(1);
    {
        auto* s = leaf(nn, "forward", "three-level forward pass", snn_forward_cmd);
        complex_opt(s);
        s->add_option("--nodes", opt.nodes_path, "node signal CSV (default zeros)");
        s->add_option("--flow", opt.flow_path, "edge signal CSV (default zeros)");
        s->add_option("--triangles", opt.triangles_path, "triangle signal CSV (default zeros)");
        s->add_option("--depth", opt.depth)->capture_default_str();
        s->add_option("--activation", opt.activation, "identity, tanh or relu")->capture_default_str();
    }
    {
        auto* s = leaf(nn, "check-equivariance", "orientation equivariance deviation", snn_check_cmd);
        complex_opt(s);
        s->add_option("--model", opt.model, "gcn or snn")->capture_default_str();
        s->add_option("--arch", opt.arch_path, "architecture JSON (gcn)");
        s->add_option("--flow", opt.flow_path, "edge signal CSV (default: random from --seed)");
        s->add_option("--flip", opt.flip_path, "+-1 CSV over edges (default: random from --seed)");
        s->add_option("--depth", opt.depth, "snn depth")->capture_default_str();
        s->add_option("--activation", opt.activation, "snn activation")->capture_default_str();
    }

    CLI::App* hg = app.add_subcommand("hg", "hypergraphs")->require_subcommand(1);
    auto hg_opt = [&](CLI::App* s) { s->add_option("--hypergraph", opt.hypergraph_path, "hypergraph JSON"); };
    {
        auto* s = leaf(hg, "expand", "matrix expansion or dual", hg_expand);
        hg_opt(s);
        s->add_option("--kind", opt.kind, "star, clique, line_graph, line_expansion or dual")->required();
    }
    {
        auto* s = leaf(hg, "laplacian", "Laplacian of an expansion", hg_laplacian);
        hg_opt(s);
        s->add_option("--kind", opt.kind, "star, clique, line_graph or line_expansion");
        s->add_flag("--normalized", opt.normalized);
    }
    {
        auto* s = leaf(hg, "tensor", "adjacency or Laplacian tensor", hg_tensor);
        hg_opt(s);
        s->add_option("--normalization", opt.normalization, "none, cooper, hu or general")->capture_default_str();
        s->add_option("--laplacian", opt.laplacian_kind, "hu or general");
    }
    {
        auto* s = leaf(hg, "shift", "tensor shift of a signal", hg_shift_cmd);
        s->add_option("--tensor", opt.tensor_path)->required();
        s->add_option("--signal", opt.signal_path)->required();
    }
    {
        auto* s = leaf(hg, "cp", "orthogonal symmetric CP basis", hg_cp);
        s->add_option("--tensor", opt.tensor_path)->required();
        s->add_option("--rank,-R", opt.rank, "number of components (default: dim)");
    }
    {
        auto* s = leaf(hg, "hgft", "hypergraph Fourier transform", hg_hgft);
        s->add_option("--basis", opt.basis_path, "output of 'hg cp'")->required();
        s->add_option("--signal", opt.signal_path);
        s->add_flag("--inverse", opt.inverse);
        s->add_option("--coefficients", opt.coefficients_path, "output of 'hg hgft' (with --inverse)");
    }
    {
        auto* s = leaf(hg, "denoise", "regularized denoising", hg_denoise);
        hg_opt(s);
        s->add_option("--signal", opt.signal_path)->required();
        s->add_option("--reg", opt.reg, "quadratic, lovasz1, lovasz2 or tensor-tv")->capture_default_str();
        s->add_option("--alpha", opt.alpha)->capture_default_str();
    }
    {
        auto* s = leaf(hg, "interpolate", "label interpolation", hg_interpolate);
        hg_opt(s);
        s->add_option("--labels", opt.labels_path, "CSV vertex,value")->required();
        s->add_option("--reg", opt.reg, "quadratic, lovasz1, lovasz2 or tensor-tv")->capture_default_str();
    }
    {
        CLI::App* s = app.add_subcommand("plot", "SVG from series JSON");
        s->add_option("--input", opt.input_path)->required();
        s->add_option("--kind", opt.kind, "line or scatter");
        s->callback([&]() {
            chosen = "plot";
            handler = plot_cmd;
        });
    }

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return user_error;
    }
    if (!handler) {
        err << "error: no command given\n" << app.help();
        return user_error;
    }

    try {
        Context ctx(opt, chosen);
        Result r = handler(ctx);
        std::string text;
        if (r.raw) {
            text = *r.raw;
        } else if (opt.format == "csv") {
            if (!r.csv)
                throw InputError("'" + chosen + "' has no CSV form; use --format json");
            text = *r.csv;
        } else {
            r.body["meta"] = ctx.meta();
            text = r.body.dump(2) + "\n";
        }
        if (opt.out.empty())
            out << text;
        else
            io::write_file_atomic(opt.out, text);
        return ok;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << "\n";
        return numerical_error;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return user_error;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return user_error;
    } catch (const std::exception& e) {
        err << "numerical error: " << e.what() << "\n";
        return numerical_error;
    }
}

}  // namespace hosp::cli
