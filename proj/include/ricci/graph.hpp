#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace ricci {

using Vertex = int32_t;

inline constexpr double kInfDistance = std::numeric_limits<double>::infinity();

struct EdgeSpec {
    Vertex u = 0;
    Vertex v = 0;
    double w = 1.0;
};

// Weighted undirected simple graph over dense vertex ids 0..n-1.
// Immutable after construction; all read operations are safe to call
// concurrently.
class Graph {
public:
    struct Arc {
        Vertex to;
        double w;
        int32_t edge;  // edge id
    };

    Graph() = default;
    Graph(int n, std::span<const EdgeSpec> edges);
    Graph(int n, std::span<const EdgeSpec> edges, std::vector<double> vertex_weights);

    // Same topology, new edge weights (indexed by edge id).
    Graph with_edge_weights(std::span<const double> weights) const;

    int vertex_count() const { return static_cast<int>(adj_index_.size()) - 1; }
    int edge_count() const { return static_cast<int>(edge_ends_.size()); }

    std::span<const Arc> arcs(Vertex v) const {
        check_vertex(v);
        return {arcs_.data() + adj_index_[v], arcs_.data() + adj_index_[v + 1]};
    }

    // Weighted degree: sum of incident edge weights.
    double degree(Vertex v) const;
    // Number of neighbors.
    int neighbor_count(Vertex v) const {
        check_vertex(v);
        return static_cast<int>(adj_index_[v + 1] - adj_index_[v]);
    }

    Vertex edge_u(int e) const { return edge_ends_[check_edge(e)][0]; }
    Vertex edge_v(int e) const { return edge_ends_[check_edge(e)][1]; }
    double edge_weight(int e) const { return edge_weight_[check_edge(e)]; }
    std::span<const double> edge_weights() const { return edge_weight_; }
    double vertex_weight(Vertex v) const {
        check_vertex(v);
        return vertex_weight_[v];
    }

    // Edge id of {u,v}, or -1 when absent.
    int find_edge(Vertex u, Vertex v) const;
    bool has_edge(Vertex u, Vertex v) const { return find_edge(u, v) >= 0; }

    // True when every edge weight is exactly 1.
    bool unit_edge_weights() const { return unit_edge_weights_; }

    // Single-source shortest paths; unreachable entries are kInfDistance.
    std::vector<double> dijkstra(Vertex src) const;
    // Weighted shortest-path distance; kInfDistance when disconnected.
    double shortest_path_distance(Vertex u, Vertex v) const;

    // Connected components; returns component id per vertex, dense 0..c-1.
    std::vector<int> components(int* count = nullptr) const;

    // |N(u) ∩ N(v)| for edge e = {u,v}.
    int triangle_count(int e) const;

    // Σ_{v~u} #(u,v) / (d_u (d_u - 1)) with unweighted degrees; 0 when
    // fewer than two neighbors.
    double clustering_coefficient(Vertex u) const;

    // Vertex-distinct 4-cycles (u,v,w,x) through edge e = {u,v}, i.e.
    // {v,w}, {w,x}, {x,u} in E. Cycles are deduplicated by vertex set;
    // chords are permitted.
    struct Quad {
        Vertex w, x;             // cycle u - v - w - x - u
        std::array<int, 4> edge; // {u,v}, {v,w}, {w,x}, {x,u}
    };
    std::vector<Quad> quadrangles_through(int e) const;

private:
    void check_vertex(Vertex v) const;
    int check_edge(int e) const;
    void build(int n, std::span<const EdgeSpec> edges, std::vector<double> vertex_weights);

    std::vector<int64_t> adj_index_;               // size n+1
    std::vector<Arc> arcs_;                        // grouped by vertex, sorted by `to`
    std::vector<std::array<Vertex, 2>> edge_ends_; // u < v
    std::vector<double> edge_weight_;
    std::vector<double> vertex_weight_;
    bool unit_edge_weights_ = true;
};

// Line graph L(G) with bookkeeping back to the base graph. Line vertex
// ids coincide with base edge ids.
struct LineGraphMap {
    Graph line;
    std::vector<std::array<Vertex, 2>> base_endpoints; // per line vertex
    std::vector<Vertex> shared_vertex;                 // per line edge: common base vertex
};

// Unweighted line graph: unit edge weights, vertex weights inherited from
// base edge weights. Degree identity d_{uv} = d_u + d_v - 2 holds for
// unit-weight base graphs.
LineGraphMap line_graph(const Graph& g);

// Line graph with edge weights sqrt(w_e1 * w_e2).
LineGraphMap line_graph_weighted(const Graph& g);

// Probability mass on a closed vertex neighborhood.
struct NeighborhoodMeasure {
    Vertex center = -1;
    double alpha = 0.0;
    double p = 1.0;
    std::vector<std::pair<Vertex, double>> mass; // sorted by vertex

    double total() const;
    double at(Vertex v) const;
};

// m_u^{α,p}: mass α at u, mass (1-α) exp(-w_{u,z}^p)/C on each neighbor z,
// C = Σ_{z~u} exp(-w_{u,z}^p).
NeighborhoodMeasure node_measure(const Graph& g, Vertex u, double alpha, double p);

// Neighborhood measure of a line vertex, mass on line-neighbors
// proportional to exp(-w_{e'}^{p/2} w_e^{p/2}).
NeighborhoodMeasure line_node_measure(const LineGraphMap& lg, Vertex line_vertex,
                                      double alpha, double p);

} // namespace ricci
