#pragma once

#include <optional>

#include "ricci/graph.hpp"
#include "ricci/transport.hpp"

namespace ricci {

// Mass distribution placed on node neighborhoods for ORC.
struct MeasureMode {
    enum class Kind {
        Uniform,            // 1/|N(u)| on neighbors
        DegreeProportional, // w_{uv}/d_u on neighbors
        Exponential,        // alpha at u, (1-alpha) exp(-w^p)/C on neighbors
        LazyUniform,        // alpha at u, (1-alpha)/|N(u)| on neighbors
    };
    Kind kind = Kind::Exponential;
    double alpha = 0.0;
    double p = 1.0;

    static MeasureMode uniform() { return {Kind::Uniform, 0, 0}; }
    static MeasureMode degree_proportional() { return {Kind::DegreeProportional, 0, 0}; }
    static MeasureMode exponential(double alpha, double p) {
        return {Kind::Exponential, alpha, p};
    }
    static MeasureMode lazy_uniform(double alpha) { return {Kind::LazyUniform, alpha, 0}; }
};

NeighborhoodMeasure measure_for(const Graph& g, Vertex v, const MeasureMode& mode);

// Lazily filled all-sources shortest path table. row() is not thread-safe;
// call prefetch_all() first when reading from several threads.
class DistanceCache {
public:
    explicit DistanceCache(const Graph& g)
        : g_(&g), rows_(static_cast<size_t>(g.vertex_count())) {}
    const std::vector<double>& row(Vertex v);
    double dist(Vertex u, Vertex v) { return row(u)[v]; }
    void prefetch_all();

private:
    const Graph* g_;
    std::vector<std::vector<double>> rows_;
};

struct OrcBounds {
    double lower = 0;
    double upper = 0;
};

// Ric_O(e) = 1 - W_1(m_u, m_v)/d_G(u,v) with the exact transport cost.
double orc_edge_exact(const Graph& g, int e, const MeasureMode& mode,
                      DistanceCache* cache = nullptr);

// Sinkhorn-approximated variant of the above.
double orc_edge_sinkhorn(const Graph& g, int e, const MeasureMode& mode,
                         const SinkhornParams& params = {}, DistanceCache* cache = nullptr);

// Sum of adjacent-edge ORC values.
double orc_vertex(const Graph& g, Vertex v, const MeasureMode& mode,
                  DistanceCache* cache = nullptr);

// Combinatorial degree/triangle bounds for unit edge weights (uniform
// measure).
OrcBounds orc_bounds_unweighted(const Graph& g, int e);

// Combinatorial bounds for weighted graphs under the exponential(alpha, p)
// measure. Distance-to-set terms use early-terminated multi-source
// Dijkstra, so per-edge work stays local to the edge's metric ball.
OrcBounds orc_bounds_weighted(const Graph& g, int e, double alpha, double p,
                              std::optional<double> dist_uv = std::nullopt);

// Arithmetic mean of the two bounds; falls back to the unweighted bounds
// when all edge weights are 1 and alpha = 0.
double orc_approx(const Graph& g, int e, double alpha, double p,
                  std::optional<double> dist_uv = std::nullopt);

// (1 + lower)/2: upper bound replaced by the trivial bound 1.
double orc_approx_a1(const Graph& g, int e, double alpha, double p,
                     std::optional<double> dist_uv = std::nullopt);

// Bounds for the ORC of the line-graph edge {e1,e2} computed from base
// degrees and the indicator of {u,w} only; never constructs L(G).
OrcBounds line_orc_bounds_base(const Graph& g, int e1, int e2);

// Weighted line-graph bounds under the sqrt edge-weight scheme, evaluated
// on a local patch of L(G) built around the two line vertices.
OrcBounds line_orc_bounds_weighted(const Graph& g, int e1, int e2, double alpha, double p);

} // namespace ricci
