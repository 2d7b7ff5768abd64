#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hyperdecay/hypergraph.hpp"

namespace hyperdecay::io {

// Raw contents of a hypergraph text file, before validation. Edges may repeat a
// vertex here (multi-incidences from the typed generator); Hypergraph rejects that.
//
// Format (UTF-8):
//   # comment lines and blank lines are ignored anywhere
//   n m
//   m edge lines, space-separated vertex indices; "-" is an empty edge
// Typed variant: every edge line ends in "t=<type>", and the edge lines are
// followed by n vertex lines "<vertex> t=<type>".
struct HypergraphText {
    std::size_t n = 0;
    std::vector<std::vector<Vertex>> edges;
    std::vector<int> vertex_types;  // empty when untyped
    std::vector<int> edge_types;    // empty when untyped
    bool typed() const { return !edge_types.empty() || !vertex_types.empty(); }
};

HypergraphText parse_hypergraph_text(std::istream& in);
HypergraphText read_hypergraph_text(const std::string& path);

Hypergraph to_hypergraph(const HypergraphText& text);
Hypergraph read_hypergraph(const std::string& path);
Hypergraph parse_hypergraph(std::istream& in);

void write_hypergraph(std::ostream& out, const Hypergraph& h);
void write_hypergraph_text(std::ostream& out, const HypergraphText& text);

// Pinning file: lines "v 0" (unoccupied) or "v 1" (occupied); '#' comments.
Pinning parse_pinning(std::istream& in);
Pinning read_pinning(const std::string& path);

}  // namespace hyperdecay::io
