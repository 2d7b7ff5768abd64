#include "hyperdecay/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>

#include "hyperdecay/branching.hpp"
#include "hyperdecay/counting.hpp"
#include "hyperdecay/decay.hpp"
#include "hyperdecay/exact.hpp"
#include "hyperdecay/io.hpp"
#include "hyperdecay/saw_tree.hpp"

namespace hyperdecay::cli {

namespace {

using json = nlohmann::ordered_json;

// Shortest decimal that reads back to the same double.
std::string num(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

json jnum(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

struct Report {
    std::vector<std::pair<std::string, std::string>> lines;
    void add(const std::string& key, const std::string& value) { lines.emplace_back(key, value); }
    void print(std::ostream& out) const {
        for (const auto& [k, v] : lines) out << k << " = " << v << '\n';
    }
};

void print_table(std::ostream& out, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size(), 0);
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& r : rows)
        for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    auto line = [&](const std::vector<std::string>& r) {
        std::string s;
        for (std::size_t c = 0; c < r.size(); ++c) {
            s += r[c];
            if (c + 1 < r.size()) s += std::string(width[c] - r[c].size() + 2, ' ');
        }
        out << s << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
}

std::string join(const std::vector<Fraction>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
    return s + "]";
}

json fractions_json(const std::vector<Fraction>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

json edges_json(const std::vector<std::vector<Vertex>>& edges) {
    json a = json::array();
    for (const auto& e : edges) a.push_back(e);
    return a;
}

struct Flags {
    std::string input;
    std::string pin;
    std::string lambda = "1";
    std::string eps = "0.1";
    bool log = false;
    std::optional<std::size_t> depth;
    std::string order = "input";
    int d = 0;
    int k = 0;
    std::string matrices;
    std::size_t n = 0;
    std::size_t radius = 1;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::size_t threads = 1;
    bool json = false;
    std::optional<Vertex> vertex;
    int dmax = 8;
    int kmax = 8;
};

Rational positive_rational(const std::string& text, const char* name) {
    Rational r = parse_rational(text);
    if (r <= 0) throw InputError(std::string(name) + " must be positive");
    return r;
}

double positive_double(const std::string& text, const char* name) {
    double x = positive_rational(text, name).convert_to<double>();
    if (!std::isfinite(x) || x <= 0.0) throw InputError(std::string(name) + " is out of range");
    return x;
}

Pinning load_pinning(const Flags& f, const Hypergraph& h) {
    if (f.pin.empty()) return {};
    Pinning p = io::read_pinning(f.pin);
    p.validate_for(h);
    return p;
}

BranchingMatrices load_matrices(const Flags& f, bool seed_given_dk) {
    if (!f.matrices.empty()) return read_branching(f.matrices);
    if (!seed_given_dk) throw InputError("give --matrices, or --d and --k for the hat matrices");
    return hat_matrices(f.d, f.k);
}

int cmd_exact(const Flags& f, std::ostream& out) {
    Hypergraph h = io::read_hypergraph(f.input);
    Pinning pin = load_pinning(f, h);
    Rational lambda = positive_rational(f.lambda, "lambda");
    auto r = exact_partition_rational(h, lambda, {}, pin);
    double z = r.z.convert_to<double>();
    if (f.json) {
        json j;
        j["z"] = to_string(r.z);
        j["z_float"] = jnum(z);
        j["log_z"] = jnum(std::log(z));
        json m = json::array();
        for (Vertex v = 0; v < h.num_vertices(); ++v)
            m.push_back({{"vertex", v}, {"exact", to_string(r.marginals[v])}, {"float", r.marginals[v].convert_to<double>()}});
        j["marginals"] = m;
        out << j.dump(2) << '\n';
        return kOk;
    }
    Report rep;
    rep.add("Z", to_string(r.z));
    rep.add("Z_float", num(z));
    rep.add("log_Z", num(std::log(z)));
    rep.print(out);
    std::vector<std::vector<std::string>> rows;
    for (Vertex v = 0; v < h.num_vertices(); ++v)
        rows.push_back({std::to_string(v), to_string(r.marginals[v]), num(r.marginals[v].convert_to<double>())});
    if (!rows.empty()) print_table(out, {"vertex", "marginal", "marginal_float"}, rows);
    return kOk;
}

int cmd_count(const Flags& f, bool seed_given, std::ostream& out) {
    Hypergraph h = io::read_hypergraph(f.input);
    double lambda = positive_double(f.lambda, "lambda");
    double eps = positive_double(f.eps, "eps");
    CountOptions opts;
    opts.order = f.order == "mindeg" ? VertexOrder::MinDegree : VertexOrder::Input;
    opts.threads = std::max<std::size_t>(1, f.threads);
    opts.max_depth = f.depth;
    if (seed_given) opts.ordering_seed = f.seed;
    ApproxResult r = f.log ? approx_log_partition(h, lambda, eps, opts) : approx_partition(h, lambda, eps, opts);
    std::string guarantee = r.a_priori_guarantee ? "a-priori" : "no a-priori guarantee";
    std::string status = r.budget_met ? "ok" : "depth cap reached before the error budget was met";
    if (f.json) {
        json j;
        j["estimate"] = jnum(r.estimate);
        j["log_estimate"] = jnum(r.log_estimate);
        j["eps"] = eps;
        j["certified_error"] = jnum(r.certified_error);
        j["depth_max"] = r.depth_used;
        j["regime"] = to_string(r.regime);
        j["d"] = r.d;
        j["k"] = r.k;
        j["lambda_c"] = jnum(r.lambda_c);
        j["target"] = f.log ? "log_partition" : "partition";
        j["guarantee"] = guarantee;
        j["budget_met"] = r.budget_met;
        out << j.dump(2) << '\n';
    } else {
        Report rep;
        rep.add("target", f.log ? "log Z" : "Z");
        rep.add("estimate", num(r.estimate));
        rep.add("log_estimate", num(r.log_estimate));
        rep.add("eps", num(eps));
        rep.add("certified_error", num(r.certified_error));
        rep.add("depth_max", std::to_string(r.depth_used));
        rep.add("regime", to_string(r.regime));
        rep.add("d", std::to_string(r.d));
        rep.add("k", std::to_string(r.k));
        rep.add("lambda_c", num(r.lambda_c));
        rep.add("guarantee", guarantee);
        rep.add("status", status);
        rep.print(out);
    }
    return r.budget_met ? kOk : kGuaranteeNotMet;
}

EdgeOrdering make_ordering(const Hypergraph& h, const Flags& f, bool seed_given) {
    return seed_given ? EdgeOrdering::shuffled(h, f.seed) : EdgeOrdering::input_order(h);
}

int cmd_marginal(const Flags& f, bool seed_given, std::ostream& out) {
    Hypergraph h = io::read_hypergraph(f.input);
    Pinning pin = load_pinning(f, h);
    double lambda = positive_double(f.lambda, "lambda");
    EdgeOrdering ord = make_ordering(h, f, seed_given);
    std::size_t t = f.depth.value_or(h.num_vertices());
    std::vector<Vertex> targets;
    if (f.vertex) {
        if (*f.vertex >= h.num_vertices()) throw InputError("vertex out of range", *f.vertex);
        targets.push_back(*f.vertex);
    } else {
        for (Vertex v = 0; v < h.num_vertices(); ++v) targets.push_back(v);
    }
    ActivityVector activity(lambda);
    json arr = json::array();
    std::vector<std::vector<std::string>> rows;
    for (Vertex v : targets) {
        RatioInterval iv = truncated_marginal(h, v, pin, activity, t, {&ord});
        double lo = iv.probability_lo(), hi = iv.probability_hi(), mid = iv.probability_mid();
        arr.push_back({{"vertex", v}, {"lower", lo}, {"upper", hi}, {"estimate", mid}, {"exact", iv.is_exact()}});
        rows.push_back({std::to_string(v), num(lo), num(hi), num(mid), iv.is_exact() ? "yes" : "no"});
    }
    if (f.json) {
        json j;
        j["depth"] = t;
        j["marginals"] = arr;
        out << j.dump(2) << '\n';
    } else {
        out << "depth = " << t << '\n';
        print_table(out, {"vertex", "lower", "upper", "estimate", "exact"}, rows);
    }
    return kOk;
}

json saw_json(const SawNode& node, std::optional<EdgeId> group) {
    json j;
    j["vertex"] = node.vertex;
    j["pinned"] = node.pinned ? (*node.pinned == Spin::Occupied ? "O" : "U") : "-";
    j["group"] = group ? json(*group) : json(nullptr);
    if (node.frontier) j["frontier"] = true;
    json children = json::array();
    for (const auto& g : node.groups)
        for (const auto& c : g.children) children.push_back(saw_json(c, g.edge));
    j["children"] = children;
    return j;
}

int cmd_saw(const Flags& f, bool seed_given, std::ostream& out) {
    Hypergraph h = io::read_hypergraph(f.input);
    Pinning pin = load_pinning(f, h);
    Vertex root = f.vertex.value_or(0);
    if (root >= h.num_vertices()) throw InputError("vertex out of range", root);
    double lambda = positive_double(f.lambda, "lambda");
    EdgeOrdering ord = make_ordering(h, f, seed_given);
    SawTreeOptions opts;
    opts.depth_limit = f.depth;
    SawNode tree = build_saw_tree(h, root, ord, pin, ActivityVector(lambda), opts);
    if (f.json) {
        json j;
        j["nodes"] = count_nodes(tree);
        j["height"] = tree_height(tree);
        j["tree"] = saw_json(tree, std::nullopt);
        out << j.dump(2) << '\n';
    } else {
        dump_saw_tree(out, tree);
    }
    return kOk;
}

int cmd_threshold(const Flags& f, bool lambda_given, std::ostream& out) {
    if (f.d < 1 || f.k < 1) throw InputError("--d and --k must be at least 1");
    double lc = critical_activity(f.d, f.k);
    double hard = hardness_threshold(f.d, f.k);
    json j;
    Report rep;
    j["d"] = f.d;
    j["k"] = f.k;
    j["lambda_c"] = jnum(lc);
    j["hard_threshold"] = jnum(hard);
    rep.add("d", std::to_string(f.d));
    rep.add("k", std::to_string(f.k));
    rep.add("lambda_c", num(lc));
    rep.add("hard_threshold", num(hard));
    if (lambda_given) {
        double lambda = positive_double(f.lambda, "lambda");
        Regime regime = classify_regime(f.d, f.k, lambda);
        double x = fixed_point(f.d, f.k, lambda);
        double rate = contraction_ratio(f.d, f.k, lambda);
        auto roots = two_periodic_points(f.d, f.k, lambda);
        json jr = json::array();
        std::string rs;
        for (double r : roots) {
            jr.push_back(r);
            rs += (rs.empty() ? "" : ", ") + num(r);
        }
        j["lambda"] = lambda;
        j["regime"] = to_string(regime);
        j["fixed_point"] = x;
        j["contraction_ratio"] = rate;
        j["two_periodic_points"] = jr;
        rep.add("lambda", num(lambda));
        rep.add("regime", to_string(regime));
        rep.add("fixed_point", num(x));
        rep.add("contraction_ratio", num(rate));
        rep.add("two_periodic_points", "[" + rs + "]");
    }
    if (f.json)
        out << j.dump(2) << '\n';
    else
        rep.print(out);
    return kOk;
}

int cmd_regimes(const Flags& f, std::ostream& out) {
    double lambda = positive_double(f.lambda, "lambda");
    if (f.dmax < 1 || f.kmax < 1) throw InputError("--dmax and --kmax must be at least 1");
    if (f.json) {
        json cells = json::array();
        for (int d = 1; d <= f.dmax; ++d)
            for (int k = 1; k <= f.kmax; ++k)
                cells.push_back({{"d", d},
                                 {"k", k},
                                 {"regime", to_string(classify_regime(d, k, lambda))},
                                 {"lambda_c", jnum(critical_activity(d, k))},
                                 {"hard_threshold", jnum(hardness_threshold(d, k))}});
        json j;
        j["lambda"] = lambda;
        j["cells"] = cells;
        out << j.dump(2) << '\n';
        return kOk;
    }
    out << "lambda = " << num(lambda) << '\n';
    std::vector<std::string> header{"d\\k"};
    for (int k = 1; k <= f.kmax; ++k) header.push_back(std::to_string(k));
    std::vector<std::vector<std::string>> rows;
    for (int d = 1; d <= f.dmax; ++d) {
        std::vector<std::string> row{std::to_string(d)};
        for (int k = 1; k <= f.kmax; ++k) row.push_back(to_string(classify_regime(d, k, lambda)));
        rows.push_back(row);
    }
    print_table(out, header, rows);
    return kOk;
}

int cmd_gadget(const Flags& f, std::ostream& out) {
    if (f.k < 1) throw InputError("--k must be at least 1");
    Hypergraph g = io::read_hypergraph(f.input);
    GadgetResult r = gadget_reduce(g, static_cast<std::size_t>(f.k));
    if (f.json) {
        json j;
        j["copies"] = r.copies;
        j["n"] = r.hypergraph.num_vertices();
        j["edges"] = edges_json(r.hypergraph.edges());
        out << j.dump(2) << '\n';
    } else {
        out << "# copies = " << r.copies << '\n';
        io::write_hypergraph(out, r.hypergraph);
    }
    return kOk;
}

int cmd_dualize(const Flags& f, std::ostream& out) {
    Hypergraph dual = dualize(io::read_hypergraph(f.input));
    if (f.json) {
        json j;
        j["n"] = dual.num_vertices();
        j["edges"] = edges_json(dual.edges());
        out << j.dump(2) << '\n';
    } else {
        io::write_hypergraph(out, dual);
    }
    return kOk;
}

int cmd_branching_check(const Flags& f, bool dk_given, std::ostream& out) {
    BranchingMatrices b = load_matrices(f, dk_given);
    json j;
    Report rep;
    j["tau_v"] = b.tau_v();
    j["tau_e"] = b.tau_e();
    j["d"] = b.d;
    j["k"] = b.k;
    rep.add("tau_v", std::to_string(b.tau_v()));
    rep.add("tau_e", std::to_string(b.tau_e()));
    rep.add("d", std::to_string(b.d));
    rep.add("k", std::to_string(b.k));
    auto emit = [&] {
        if (f.json)
            out << j.dump(2) << '\n';
        else
            rep.print(out);
    };
    if (auto v = validate_branching(b)) {
        j["valid"] = false;
        j["violation"] = v->message;
        rep.add("valid", "no");
        rep.add("violation", v->message);
        emit();
        return kInputError;
    }
    j["valid"] = true;
    rep.add("valid", "yes");
    Reversibility r = reversibility(b);
    j["reversible"] = r.reversible;
    rep.add("reversible", r.reversible ? "yes" : "no");
    if (r.reversible) {
        auto s = stationary_distributions(b);
        Fraction sp(0), sq(0);
        for (const auto& x : r.p) sp = sp + x;
        for (const auto& x : r.q) sq = sq + x;
        j["p"] = fractions_json(r.p);
        j["q"] = fractions_json(r.q);
        j["p_over_q"] = (sp / sq).str();
        j["stationary_p"] = fractions_json(s.p);
        j["stationary_q"] = fractions_json(s.q);
        rep.add("p", join(r.p));
        rep.add("q", join(r.q));
        rep.add("p_over_q", (sp / sq).str());
        rep.add("stationary_p", join(s.p));
        rep.add("stationary_q", join(s.q));
    } else {
        const auto& w = *r.witness;
        j["witness"] = {{"vertex_type", w.i}, {"edge_type", w.j}, {"p_d", w.lhs.str()}, {"q_k", w.rhs.str()}};
        rep.add("witness", "vertex type " + std::to_string(w.i) + ", edge type " + std::to_string(w.j) +
                               ": p_i d_ij = " + w.lhs.str() + ", q_j k_ji = " + w.rhs.str());
    }
    emit();
    return kOk;
}

int cmd_branching_gen(const Flags& f, bool dk_given, std::ostream& out) {
    BranchingMatrices b = load_matrices(f, dk_given);
    io::HypergraphText h = generate_Hn(b, f.n, f.seed);
    if (f.json) {
        json j;
        j["n"] = h.n;
        j["edges"] = edges_json(h.edges);
        j["vertex_types"] = h.vertex_types;
        j["edge_types"] = h.edge_types;
        out << j.dump(2) << '\n';
    } else {
        io::write_hypergraph_text(out, h);
    }
    return kOk;
}

int cmd_branching_verify(const Flags& f, bool dk_given, std::ostream& out) {
    BranchingMatrices b = load_matrices(f, dk_given);
    io::HypergraphText h = f.input.empty() ? generate_Hn(b, f.n, f.seed) : io::read_hypergraph_text(f.input);
    LocalConvergence lc = local_convergence_rate(h, b, f.radius, f.samples, f.seed);
    if (f.json) {
        json types = json::array();
        for (std::size_t s = 0; s < lc.sampled.size(); ++s)
            types.push_back({{"type", s}, {"sampled", lc.sampled[s]}, {"matched", lc.matched[s]}, {"fraction", jnum(lc.fraction[s])}});
        json j;
        j["vertices"] = h.n;
        j["edges"] = h.edges.size();
        j["radius"] = f.radius;
        j["types"] = types;
        out << j.dump(2) << '\n';
        return kOk;
    }
    out << "vertices = " << h.n << '\n' << "edges = " << h.edges.size() << '\n' << "radius = " << f.radius << '\n';
    std::vector<std::vector<std::string>> rows;
    for (std::size_t s = 0; s < lc.sampled.size(); ++s)
        rows.push_back({std::to_string(s), std::to_string(lc.sampled[s]), std::to_string(lc.matched[s]),
                        lc.sampled[s] ? num(lc.fraction[s]) : "-"});
    print_table(out, {"type", "sampled", "matched", "fraction"}, rows);
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Correlation-decay counting for hypergraph independent sets and matchings", "hyperdecay"};
    app.require_subcommand(1);
    Flags f;

    auto input = [&](CLI::App* c, bool required) {
        auto* o = c->add_option("--input", f.input, "hypergraph file");
        if (required) o->required();
    };
    auto lambda = [&](CLI::App* c, bool required) {
        auto* o = c->add_option("--lambda", f.lambda, "activity (decimal or p/q, parsed exactly)");
        if (required) o->required();
        return o;
    };
    auto json_flag = [&](CLI::App* c) { c->add_flag("--json", f.json, "JSON output"); };
    auto seed = [&](CLI::App* c, const char* what) { return c->add_option("--seed", f.seed, what); };
    auto matrices = [&](CLI::App* c) {
        c->add_option("--matrices", f.matrices, "branching-matrix file");
        c->add_option("--d", f.d, "d for the hat matrices when --matrices is absent");
        c->add_option("--k", f.k, "k for the hat matrices when --matrices is absent");
    };

    auto* exact = app.add_subcommand("exact", "exact partition function and marginals by enumeration");
    input(exact, true);
    exact->add_option("--pin", f.pin, "pinning file");
    lambda(exact, true);
    json_flag(exact);

    auto* count = app.add_subcommand("count", "approximate Z or log Z by the telescoping product");
    input(count, true);
    lambda(count, true);
    count->add_option("--eps", f.eps, "relative error (decimal or p/q)")->required();
    count->add_flag("--log", f.log, "approximate log Z instead of Z");
    count->add_option("--depth", f.depth, "hard cap on the truncation depth");
    count->add_option("--order", f.order, "elimination order")->check(CLI::IsMember({"input", "mindeg"}));
    count->add_option("--threads", f.threads, "worker threads");
    auto* count_seed = seed(count, "shuffle the per-vertex edge ordering with this seed");
    json_flag(count);

    auto* marginal = app.add_subcommand("marginal", "certified marginal interval from the truncated SAW tree");
    input(marginal, true);
    marginal->add_option("--pin", f.pin, "pinning file");
    lambda(marginal, true);
    marginal->add_option("--vertex", f.vertex, "vertex (all vertices when absent)");
    marginal->add_option("--depth", f.depth, "truncation depth (full expansion when absent)");
    auto* marginal_seed = seed(marginal, "shuffle the per-vertex edge ordering with this seed");
    json_flag(marginal);

    auto* saw = app.add_subcommand("saw", "dump the self-avoiding-walk tree");
    input(saw, true);
    saw->add_option("--pin", f.pin, "pinning file");
    lambda(saw, false);
    saw->add_option("--vertex", f.vertex, "root vertex (default 0)");
    saw->add_option("--depth", f.depth, "depth limit");
    auto* saw_seed = seed(saw, "shuffle the per-vertex edge ordering with this seed");
    json_flag(saw);

    auto* threshold = app.add_subcommand("threshold", "uniqueness threshold and fixed-point data");
    threshold->add_option("--d", f.d, "d (degree minus one)")->required();
    threshold->add_option("--k", f.k, "k (edge size minus one)")->required();
    auto* threshold_lambda = lambda(threshold, false);
    json_flag(threshold);

    auto* regimes = app.add_subcommand("regimes", "regime grid over d and k at fixed lambda");
    lambda(regimes, true);
    regimes->add_option("--dmax", f.dmax, "largest d (default 8)");
    regimes->add_option("--kmax", f.kmax, "largest k (default 8)");
    json_flag(regimes);

    auto* gadget = app.add_subcommand("gadget", "hypergraph from a graph by the vertex-copy gadget");
    input(gadget, true);
    gadget->add_option("--k", f.k, "target k")->required();
    json_flag(gadget);

    auto* dual = app.add_subcommand("dualize", "transpose the incidence matrix");
    input(dual, true);
    json_flag(dual);

    auto* bcheck = app.add_subcommand("branching-check", "validate branching matrices and decide reversibility");
    matrices(bcheck);
    json_flag(bcheck);

    auto* bgen = app.add_subcommand("branching-gen", "generate a typed hypergraph from reversible matrices");
    matrices(bgen);
    bgen->add_option("--n", f.n, "size parameter (about #vertices + #edges)")->required();
    seed(bgen, "generator seed (default 0)");
    json_flag(bgen);

    auto* bverify = app.add_subcommand("branching-verify", "fraction of tree-like neighborhoods per vertex type");
    matrices(bverify);
    input(bverify, false);
    bverify->add_option("--n", f.n, "generate with this size when --input is absent");
    bverify->add_option("--radius", f.radius, "neighborhood radius (default 1)");
    bverify->add_option("--samples", f.samples, "samples with replacement (0 = every vertex)");
    seed(bverify, "seed for generation and sampling (default 0)");
    json_flag(bverify);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    auto given = [](CLI::App* c, const char* name) { return c->count(name) > 0; };
    try {
        if (exact->parsed()) return cmd_exact(f, out);
        if (count->parsed()) return cmd_count(f, count_seed->count() > 0, out);
        if (marginal->parsed()) return cmd_marginal(f, marginal_seed->count() > 0, out);
        if (saw->parsed()) return cmd_saw(f, saw_seed->count() > 0, out);
        if (threshold->parsed()) return cmd_threshold(f, threshold_lambda->count() > 0, out);
        if (regimes->parsed()) return cmd_regimes(f, out);
        if (gadget->parsed()) return cmd_gadget(f, out);
        if (dual->parsed()) return cmd_dualize(f, out);
        if (bcheck->parsed()) return cmd_branching_check(f, given(bcheck, "--d") && given(bcheck, "--k"), out);
        if (bgen->parsed()) return cmd_branching_gen(f, given(bgen, "--d") && given(bgen, "--k"), out);
        if (bverify->parsed()) {
            if (f.input.empty() && !given(bverify, "--n")) throw InputError("give --input or --n");
            return cmd_branching_verify(f, given(bverify, "--d") && given(bverify, "--k"), out);
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const ExpansionLimitError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::overflow_error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace hyperdecay::cli
