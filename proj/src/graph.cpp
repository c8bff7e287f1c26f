#include "ricci/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace ricci {

namespace {

std::array<Vertex, 2> ordered(Vertex u, Vertex v) {
    return u < v ? std::array<Vertex, 2>{u, v} : std::array<Vertex, 2>{v, u};
}

struct PairHash {
    size_t operator()(const std::array<Vertex, 2>& e) const {
        return std::hash<uint64_t>()((static_cast<uint64_t>(e[0]) << 32) ^
                                     static_cast<uint32_t>(e[1]));
    }
};

} // namespace

Graph::Graph(int n, std::span<const EdgeSpec> edges) {
    build(n, edges, std::vector<double>(static_cast<size_t>(n), 1.0));
}

Graph::Graph(int n, std::span<const EdgeSpec> edges, std::vector<double> vertex_weights) {
    build(n, edges, std::move(vertex_weights));
}

void Graph::build(int n, std::span<const EdgeSpec> edges, std::vector<double> vertex_weights) {
    if (n < 0)
        throw std::invalid_argument("graph: negative vertex count");
    if (static_cast<int>(vertex_weights.size()) != n)
        throw std::invalid_argument("graph: vertex weight count mismatch");
    for (double w : vertex_weights)
        if (!(w > 0))
            throw std::invalid_argument("graph: vertex weights must be positive");

    vertex_weight_ = std::move(vertex_weights);
    edge_ends_.reserve(edges.size());
    edge_weight_.reserve(edges.size());

    std::unordered_map<std::array<Vertex, 2>, int, PairHash> seen;
    seen.reserve(edges.size() * 2);
    for (const EdgeSpec& e : edges) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
            throw std::invalid_argument("graph: edge endpoint out of range");
        if (e.u == e.v)
            throw std::invalid_argument("graph: self-loops are not allowed");
        if (!(e.w > 0))
            throw std::invalid_argument("graph: edge weights must be positive");
        auto key = ordered(e.u, e.v);
        if (!seen.emplace(key, static_cast<int>(edge_ends_.size())).second)
            throw std::invalid_argument("graph: parallel edge {" + std::to_string(e.u) +
                                        "," + std::to_string(e.v) + "}");
        edge_ends_.push_back(key);
        edge_weight_.push_back(e.w);
        if (e.w != 1.0)
            unit_edge_weights_ = false;
    }

    adj_index_.assign(static_cast<size_t>(n) + 1, 0);
    for (const auto& e : edge_ends_) {
        ++adj_index_[e[0] + 1];
        ++adj_index_[e[1] + 1];
    }
    for (int v = 0; v < n; ++v)
        adj_index_[v + 1] += adj_index_[v];
    arcs_.resize(static_cast<size_t>(adj_index_[n]));
    std::vector<int64_t> cursor(adj_index_.begin(), adj_index_.end() - 1);
    for (int e = 0; e < static_cast<int>(edge_ends_.size()); ++e) {
        auto [u, v] = edge_ends_[e];
        arcs_[cursor[u]++] = {v, edge_weight_[e], e};
        arcs_[cursor[v]++] = {u, edge_weight_[e], e};
    }
    for (int v = 0; v < n; ++v)
        std::sort(arcs_.begin() + adj_index_[v], arcs_.begin() + adj_index_[v + 1],
                  [](const Arc& a, const Arc& b) { return a.to < b.to; });
}

Graph Graph::with_edge_weights(std::span<const double> weights) const {
    if (static_cast<int>(weights.size()) != edge_count())
        throw std::invalid_argument("graph: edge weight count mismatch");
    Graph g;
    g.adj_index_ = adj_index_;
    g.arcs_ = arcs_;
    g.edge_ends_ = edge_ends_;
    g.edge_weight_.assign(weights.begin(), weights.end());
    g.vertex_weight_ = vertex_weight_;
    g.unit_edge_weights_ = true;
    for (double w : weights) {
        if (!(w > 0))
            throw std::invalid_argument("graph: edge weights must be positive");
        if (w != 1.0)
            g.unit_edge_weights_ = false;
    }
    for (Arc& a : g.arcs_)
        a.w = g.edge_weight_[a.edge];
    return g;
}

void Graph::check_vertex(Vertex v) const {
    if (v < 0 || v >= vertex_count())
        throw std::invalid_argument("graph: unknown vertex " + std::to_string(v));
}

int Graph::check_edge(int e) const {
    if (e < 0 || e >= edge_count())
        throw std::invalid_argument("graph: unknown edge id " + std::to_string(e));
    return e;
}

double Graph::degree(Vertex v) const {
    double d = 0;
    for (const Arc& a : arcs(v))
        d += a.w;
    return d;
}

int Graph::find_edge(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    if (u == v)
        return -1;
    if (neighbor_count(u) > neighbor_count(v))
        std::swap(u, v);
    auto span = arcs(u);
    auto it = std::lower_bound(span.begin(), span.end(), v,
                               [](const Arc& a, Vertex t) { return a.to < t; });
    if (it != span.end() && it->to == v)
        return it->edge;
    return -1;
}

std::vector<double> Graph::dijkstra(Vertex src) const {
    check_vertex(src);
    std::vector<double> dist(static_cast<size_t>(vertex_count()), kInfDistance);
    using Item = std::pair<double, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[src] = 0;
    heap.emplace(0.0, src);
    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (d > dist[v])
            continue;
        for (const Arc& a : arcs(v)) {
            double nd = d + a.w;
            if (nd < dist[a.to]) {
                dist[a.to] = nd;
                heap.emplace(nd, a.to);
            }
        }
    }
    return dist;
}

double Graph::shortest_path_distance(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    if (u == v)
        return 0.0;
    // Early-exit Dijkstra: stop once v is settled.
    std::vector<double> dist(static_cast<size_t>(vertex_count()), kInfDistance);
    using Item = std::pair<double, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[u] = 0;
    heap.emplace(0.0, u);
    while (!heap.empty()) {
        auto [d, x] = heap.top();
        heap.pop();
        if (d > dist[x])
            continue;
        if (x == v)
            return d;
        for (const Arc& a : arcs(x)) {
            double nd = d + a.w;
            if (nd < dist[a.to]) {
                dist[a.to] = nd;
                heap.emplace(nd, a.to);
            }
        }
    }
    return kInfDistance;
}

std::vector<int> Graph::components(int* count) const {
    int n = vertex_count();
    std::vector<int> comp(static_cast<size_t>(n), -1);
    int c = 0;
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < n; ++s) {
        if (comp[s] >= 0)
            continue;
        comp[s] = c;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (const Arc& a : arcs(v)) {
                if (comp[a.to] < 0) {
                    comp[a.to] = c;
                    stack.push_back(a.to);
                }
            }
        }
        ++c;
    }
    if (count)
        *count = c;
    return comp;
}

int Graph::triangle_count(int e) const {
    check_edge(e);
    auto [u, v] = edge_ends_[e];
    auto au = arcs(u);
    auto av = arcs(v);
    int count = 0;
    auto i = au.begin();
    auto j = av.begin();
    while (i != au.end() && j != av.end()) {
        if (i->to < j->to)
            ++i;
        else if (j->to < i->to)
            ++j;
        else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

double Graph::clustering_coefficient(Vertex u) const {
    int d = neighbor_count(u);
    if (d < 2)
        return 0.0;
    long triangles2 = 0; // Σ_{v~u} #(u,v)
    for (const Arc& a : arcs(u))
        triangles2 += triangle_count(a.edge);
    return static_cast<double>(triangles2) / (static_cast<double>(d) * (d - 1));
}

std::vector<Graph::Quad> Graph::quadrangles_through(int e) const {
    check_edge(e);
    auto [u, v] = edge_ends_[e];
    std::vector<Quad> quads;
    std::unordered_map<std::array<Vertex, 2>, bool, PairHash> seen;
    for (const Arc& aw : arcs(v)) {
        Vertex w = aw.to;
        if (w == u)
            continue;
        for (const Arc& ax : arcs(u)) {
            Vertex x = ax.to;
            if (x == v || x == w)
                continue;
            int wx = find_edge(w, x);
            if (wx < 0)
                continue;
            if (!seen.emplace(ordered(w, x), true).second)
                continue;
            quads.push_back({w, x, {e, aw.edge, wx, ax.edge}});
        }
    }
    return quads;
}

namespace {

LineGraphMap build_line_graph(const Graph& g, bool sqrt_weights) {
    int m = g.edge_count();
    std::vector<EdgeSpec> line_edges;
    std::vector<Vertex> shared;
    // Every pair of distinct edges at a common vertex is adjacent in L.
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        auto span = g.arcs(v);
        for (size_t i = 0; i < span.size(); ++i) {
            for (size_t j = i + 1; j < span.size(); ++j) {
                int e1 = span[i].edge;
                int e2 = span[j].edge;
                double w = 1.0;
                if (sqrt_weights)
                    w = std::sqrt(g.edge_weight(e1) * g.edge_weight(e2));
                line_edges.push_back({std::min(e1, e2), std::max(e1, e2), w});
                shared.push_back(v);
            }
        }
    }
    std::vector<double> vertex_weights(g.edge_weights().begin(), g.edge_weights().end());
    if (m == 0)
        vertex_weights.clear();
    LineGraphMap lg;
    lg.line = Graph(m, line_edges, std::move(vertex_weights));
    lg.base_endpoints.reserve(m);
    for (int e = 0; e < m; ++e)
        lg.base_endpoints.push_back({g.edge_u(e), g.edge_v(e)});
    // Reorder by the line graph's edge ids.
    lg.shared_vertex.assign(shared.size(), -1);
    for (size_t i = 0; i < line_edges.size(); ++i) {
        int id = lg.line.find_edge(line_edges[i].u, line_edges[i].v);
        lg.shared_vertex[id] = shared[i];
    }
    return lg;
}

} // namespace

LineGraphMap line_graph(const Graph& g) { return build_line_graph(g, false); }

LineGraphMap line_graph_weighted(const Graph& g) { return build_line_graph(g, true); }

double NeighborhoodMeasure::total() const {
    double t = 0;
    for (const auto& [v, m] : mass)
        t += m;
    return t;
}

double NeighborhoodMeasure::at(Vertex v) const {
    auto it = std::lower_bound(mass.begin(), mass.end(), v,
                               [](const auto& a, Vertex t) { return a.first < t; });
    if (it != mass.end() && it->first == v)
        return it->second;
    return 0.0;
}

NeighborhoodMeasure node_measure(const Graph& g, Vertex u, double alpha, double p) {
    if (alpha < 0 || alpha > 1)
        throw std::invalid_argument("node_measure: alpha must lie in [0,1]");
    if (p < 0)
        throw std::invalid_argument("node_measure: p must be nonnegative");
    auto span = g.arcs(u);
    if (span.empty() && alpha < 1)
        throw std::invalid_argument("node_measure: isolated vertex " + std::to_string(u) +
                                    " with alpha < 1");
    NeighborhoodMeasure m;
    m.center = u;
    m.alpha = alpha;
    m.p = p;
    double c = 0;
    for (const Graph::Arc& a : span)
        c += std::exp(-std::pow(a.w, p));
    if (alpha > 0)
        m.mass.emplace_back(u, alpha);
    if (alpha < 1) {
        for (const Graph::Arc& a : span)
            m.mass.emplace_back(a.to, (1 - alpha) * std::exp(-std::pow(a.w, p)) / c);
    }
    std::sort(m.mass.begin(), m.mass.end());
    return m;
}

NeighborhoodMeasure line_node_measure(const LineGraphMap& lg, Vertex line_vertex,
                                      double alpha, double p) {
    if (alpha < 0 || alpha > 1)
        throw std::invalid_argument("line_node_measure: alpha must lie in [0,1]");
    if (p < 0)
        throw std::invalid_argument("line_node_measure: p must be nonnegative");
    const Graph& l = lg.line;
    auto span = l.arcs(line_vertex);
    if (span.empty() && alpha < 1)
        throw std::invalid_argument("line_node_measure: isolated line vertex with alpha < 1");
    // Mass on a line-neighbor e' is proportional to
    // exp(-w_{e'}^{p/2} w_e^{p/2}), with base edge weights stored as line
    // vertex weights.
    double we = l.vertex_weight(line_vertex);
    NeighborhoodMeasure m;
    m.center = line_vertex;
    m.alpha = alpha;
    m.p = p;
    double c = 0;
    auto term = [&](Vertex other) {
        return std::exp(-std::pow(l.vertex_weight(other), p / 2) * std::pow(we, p / 2));
    };
    for (const Graph::Arc& a : span)
        c += term(a.to);
    if (alpha > 0)
        m.mass.emplace_back(line_vertex, alpha);
    if (alpha < 1) {
        for (const Graph::Arc& a : span)
            m.mass.emplace_back(a.to, (1 - alpha) * term(a.to) / c);
    }
    std::sort(m.mass.begin(), m.mass.end());
    return m;
}

} // namespace ricci
