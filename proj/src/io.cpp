#include "hyperdecay/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace hyperdecay::io {

namespace {

struct LineReader {
    std::istream& in;
    std::size_t line_no = 0;

    // Next line that is neither blank nor a comment; false at EOF.
    bool next(std::string& line) {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            auto first = line.find_first_not_of(" \t");
            if (first == std::string::npos || line[first] == '#') continue;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw InputError("line " + std::to_string(line_no) + ": " + what, line_no);
    }
};

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) tokens.push_back(tok);
    return tokens;
}

template <class Int>
bool parse_int(const std::string& tok, Int& value) {
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    return ec == std::errc() && ptr == tok.data() + tok.size();
}

bool parse_type_token(const std::string& tok, int& type) {
    return tok.size() > 2 && tok[0] == 't' && tok[1] == '=' && parse_int(tok.substr(2), type) && type >= 0;
}

}  // namespace

HypergraphText parse_hypergraph_text(std::istream& in) {
    LineReader reader{in};
    std::string line;
    if (!reader.next(line)) reader.fail("missing header line 'n m'");
    HypergraphText text;
    std::size_t m = 0;
    {
        auto tokens = split(line);
        if (tokens.size() != 2 || !parse_int(tokens[0], text.n) || !parse_int(tokens[1], m)) {
            reader.fail("header must be 'n m'");
        }
    }
    bool typed = false;
    for (std::size_t e = 0; e < m; ++e) {
        if (!reader.next(line)) reader.fail("expected " + std::to_string(m) + " edge lines, got " + std::to_string(e));
        auto tokens = split(line);
        int type = -1;
        bool has_type = !tokens.empty() && parse_type_token(tokens.back(), type);
        if (e == 0) typed = has_type;
        if (has_type != typed) reader.fail("edge lines must all carry a type or none may");
        if (has_type) tokens.pop_back();
        std::vector<Vertex> members;
        if (!(tokens.size() == 1 && tokens[0] == "-")) {
            for (const auto& tok : tokens) {
                Vertex v = 0;
                if (!parse_int(tok, v)) reader.fail("bad vertex index '" + tok + "'");
                members.push_back(v);
            }
        }
        text.edges.push_back(std::move(members));
        if (typed) text.edge_types.push_back(type);
    }
    if (typed) {
        text.vertex_types.assign(text.n, -1);
        for (std::size_t i = 0; i < text.n; ++i) {
            if (!reader.next(line)) reader.fail("typed file needs " + std::to_string(text.n) + " vertex lines");
            auto tokens = split(line);
            Vertex v = 0;
            int type = -1;
            if (tokens.size() != 2 || !parse_int(tokens[0], v) || !parse_type_token(tokens[1], type)) {
                reader.fail("vertex line must be '<vertex> t=<type>'");
            }
            if (v >= text.n || text.vertex_types[v] != -1) reader.fail("bad or repeated vertex line");
            text.vertex_types[v] = type;
        }
    }
    if (reader.next(line)) reader.fail("unexpected trailing content");
    return text;
}

HypergraphText read_hypergraph_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return parse_hypergraph_text(in);
}

Hypergraph to_hypergraph(const HypergraphText& text) {
    Hypergraph h(text.n, text.edges);
    if (text.typed()) h.set_types(text.vertex_types, text.edge_types);
    return h;
}

Hypergraph parse_hypergraph(std::istream& in) { return to_hypergraph(parse_hypergraph_text(in)); }

Hypergraph read_hypergraph(const std::string& path) { return to_hypergraph(read_hypergraph_text(path)); }

void write_hypergraph_text(std::ostream& out, const HypergraphText& text) {
    out << text.n << ' ' << text.edges.size() << '\n';
    for (std::size_t e = 0; e < text.edges.size(); ++e) {
        const auto& members = text.edges[e];
        if (members.empty()) out << '-';
        for (std::size_t i = 0; i < members.size(); ++i) out << (i ? " " : "") << members[i];
        if (!text.edge_types.empty()) out << " t=" << text.edge_types[e];
        out << '\n';
    }
    if (text.typed()) {
        for (std::size_t v = 0; v < text.n; ++v) {
            out << v << " t=" << (text.vertex_types.empty() ? 0 : text.vertex_types[v]) << '\n';
        }
    }
}

void write_hypergraph(std::ostream& out, const Hypergraph& h) {
    HypergraphText text{h.num_vertices(), h.edges(), h.vertex_types(), h.edge_types()};
    if (text.typed()) {
        if (text.vertex_types.empty()) text.vertex_types.assign(text.n, 0);
        if (text.edge_types.empty()) text.edge_types.assign(text.edges.size(), 0);
    }
    write_hypergraph_text(out, text);
}

Pinning parse_pinning(std::istream& in) {
    LineReader reader{in};
    std::string line;
    Pinning pinning;
    while (reader.next(line)) {
        auto tokens = split(line);
        Vertex v = 0;
        int state = -1;
        if (tokens.size() != 2 || !parse_int(tokens[0], v) || !parse_int(tokens[1], state) ||
            (state != 0 && state != 1)) {
            reader.fail("pinning lines must be 'v 0' or 'v 1'");
        }
        if (pinning.get(v)) reader.fail("vertex " + std::to_string(v) + " pinned twice");
        pinning.pin(v, state == 1 ? Spin::Occupied : Spin::Unoccupied);
    }
    return pinning;
}

Pinning read_pinning(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return parse_pinning(in);
}

}  // namespace hyperdecay::io
