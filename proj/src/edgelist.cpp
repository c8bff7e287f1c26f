#include "ricci/edgelist.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace ricci {

NamedGraph read_edge_list(std::istream& in) {
    NamedGraph out;
    std::vector<EdgeSpec> edges;
    std::string line;
    int line_no = 0;
    auto intern = [&](const std::string& name) {
        auto [it, inserted] = out.id_of.try_emplace(name, static_cast<Vertex>(out.names.size()));
        if (inserted)
            out.names.push_back(name);
        return it->second;
    };
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream fields(line);
        std::string u, v, w, extra;
        if (!(fields >> u))
            continue; // blank or comment-only line
        if (!(fields >> v))
            throw ParseError(line_no, "expected 2 or 3 fields");
        double weight = 1.0;
        if (fields >> w) {
            size_t used = 0;
            try {
                weight = std::stod(w, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != w.size())
                throw ParseError(line_no, "bad weight '" + w + "'");
            if (!(weight > 0))
                throw ParseError(line_no, "weight must be positive");
        }
        if (fields >> extra)
            throw ParseError(line_no, "expected 2 or 3 fields");
        Vertex a = intern(u), b = intern(v);
        if (a == b)
            throw ParseError(line_no, "self-loop on '" + u + "'");
        edges.push_back({a, b, weight});
    }
    try {
        out.graph = Graph(static_cast<int>(out.names.size()), edges);
    } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, e.what());
    }
    return out;
}

NamedGraph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const NamedGraph& g) {
    std::vector<int> order(static_cast<size_t>(g.graph.edge_count()));
    for (int e = 0; e < g.graph.edge_count(); ++e)
        order[static_cast<size_t>(e)] = e;
    auto key = [&](int e) {
        return std::pair<const std::string&, const std::string&>(
            g.name(g.graph.edge_u(e)), g.name(g.graph.edge_v(e)));
    };
    std::sort(order.begin(), order.end(), [&](int a, int b) { return key(a) < key(b); });
    out.precision(17);
    for (int e : order) {
        out << g.name(g.graph.edge_u(e)) << ' ' << g.name(g.graph.edge_v(e));
        if (g.graph.edge_weight(e) != 1.0)
            out << ' ' << g.graph.edge_weight(e);
        out << '\n';
    }
}

void write_edge_list_file(const std::string& path, const NamedGraph& g) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    write_edge_list(out, g);
}

NamedGraph with_numeric_names(Graph g) {
    NamedGraph out;
    out.graph = std::move(g);
    out.names.reserve(static_cast<size_t>(out.graph.vertex_count()));
    for (Vertex v = 0; v < out.graph.vertex_count(); ++v) {
        out.names.push_back(std::to_string(v));
        out.id_of.emplace(out.names.back(), v);
    }
    return out;
}

} // namespace ricci
