#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "ricci/graph.hpp"

namespace ricci {

// Graph plus the external string ids it was read with; internal ids are
// dense in first-appearance order.
struct NamedGraph {
    Graph graph;
    std::vector<std::string> names;
    std::unordered_map<std::string, Vertex> id_of;

    const std::string& name(Vertex v) const { return names[static_cast<size_t>(v)]; }
};

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_no, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

// Edge-list format: one `u v [weight]` per line, whitespace separated,
// `#` starts a comment; weight defaults to 1.
NamedGraph read_edge_list(std::istream& in);
NamedGraph read_edge_list_file(const std::string& path);

// Deterministic writer (edges sorted by endpoint names).
void write_edge_list(std::ostream& out, const NamedGraph& g);
void write_edge_list_file(const std::string& path, const NamedGraph& g);

// Wraps a generated graph with stringified vertex ids 0..n-1.
NamedGraph with_numeric_names(Graph g);

} // namespace ricci
