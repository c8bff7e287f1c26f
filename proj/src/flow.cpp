#include "ricci/flow.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "ricci/parallel.hpp"

namespace ricci {

const char* curvature_name(CurvatureKind k) {
    switch (k) {
    case CurvatureKind::OrcExact: return "ORC-E";
    case CurvatureKind::OrcSinkhorn: return "ORC-S";
    case CurvatureKind::OrcApprox: return "ORC-A";
    case CurvatureKind::OrcApproxA1: return "ORC-A1";
    case CurvatureKind::Frc1: return "FRC-1";
    case CurvatureKind::Frc2: return "FRC-2";
    case CurvatureKind::Frc3: return "FRC-3";
    }
    return "?";
}

bool is_orc(CurvatureKind k) {
    return k == CurvatureKind::OrcExact || k == CurvatureKind::OrcSinkhorn ||
           k == CurvatureKind::OrcApprox || k == CurvatureKind::OrcApproxA1;
}

FlowConfig FlowConfig::with_curvature(CurvatureKind k) {
    FlowConfig cfg;
    cfg.curvature = k;
    if (!is_orc(k)) {
        cfg.adaptive_nu = true;
        cfg.cutoff = CutoffScheme::FrcQuantile;
    }
    return cfg;
}

LineFaceTable LineFaceTable::build(const LineGraphMap& lg, const Graph& base) {
    LineFaceTable t;
    t.per_edge.resize(static_cast<size_t>(lg.line.edge_count()));
    parallel_for(lg.line.edge_count(), [&](int64_t id) {
        int e1 = lg.line.edge_u(static_cast<int>(id));
        int e2 = lg.line.edge_v(static_cast<int>(id));
        t.per_edge[static_cast<size_t>(id)] = line_face_ids(lg, base, e1, e2);
    });
    return t;
}

namespace {

// d_G(u,v) for every edge via per-vertex Dijkstra that stops once all
// higher-id neighbors are settled.
std::vector<double> edge_distances(const Graph& g) {
    std::vector<double> d(static_cast<size_t>(g.edge_count()), 0.0);
    parallel_for(g.vertex_count(), [&](int64_t uu) {
        Vertex u = static_cast<Vertex>(uu);
        auto span = g.arcs(u);
        int pending = 0;
        for (const Graph::Arc& a : span)
            if (a.to > u)
                ++pending;
        if (pending == 0)
            return;
        std::vector<double> dist(static_cast<size_t>(g.vertex_count()), kInfDistance);
        std::vector<char> settled(static_cast<size_t>(g.vertex_count()), 0);
        using Item = std::pair<double, Vertex>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        dist[u] = 0;
        heap.emplace(0.0, u);
        while (!heap.empty() && pending > 0) {
            auto [dv, v] = heap.top();
            heap.pop();
            if (settled[v])
                continue;
            settled[v] = 1;
            if (v != u && v > u && g.find_edge(u, v) >= 0)
                --pending;
            for (const Graph::Arc& a : g.arcs(v)) {
                double nd = dv + a.w;
                if (nd < dist[a.to]) {
                    dist[a.to] = nd;
                    heap.emplace(nd, a.to);
                }
            }
        }
        for (const Graph::Arc& a : span)
            if (a.to > u)
                d[static_cast<size_t>(a.edge)] = dist[a.to];
    });
    return d;
}

using FaceIds = std::vector<std::vector<std::vector<int>>>;

// Static per-edge face sets for the FRC flows (topology never changes
// during a run, only the weights do).
FaceIds collect_face_ids(const Graph& g, CurvatureKind kind, const LineFaceTable* line_faces) {
    FaceIds ids;
    if (kind == CurvatureKind::Frc3 && line_faces)
        return line_faces->per_edge;
    if (kind != CurvatureKind::Frc2 && kind != CurvatureKind::Frc3)
        return ids;
    ids.resize(static_cast<size_t>(g.edge_count()));
    parallel_for(g.edge_count(), [&](int64_t ee) {
        int e = static_cast<int>(ee);
        auto& faces = ids[static_cast<size_t>(ee)];
        Vertex u = g.edge_u(e), v = g.edge_v(e);
        auto au = g.arcs(u);
        auto av = g.arcs(v);
        auto i = au.begin();
        auto j = av.begin();
        while (i != au.end() && j != av.end()) {
            if (i->to < j->to)
                ++i;
            else if (j->to < i->to)
                ++j;
            else {
                faces.push_back({e, i->edge, j->edge});
                ++i;
                ++j;
            }
        }
        if (kind == CurvatureKind::Frc3)
            for (const Graph::Quad& q : g.quadrangles_through(e))
                faces.push_back({q.edge[0], q.edge[1], q.edge[2], q.edge[3]});
    });
    return ids;
}

// Faces for one edge under the current weights. Unweighted pipelines keep
// the unit-case face weights (sqrt(3)/4 triangles, unit quadrangles) for
// the whole flow; weighted inputs re-evaluate Heron/trapezoid weights and
// drop faces that are no longer realizable.
std::vector<Face> faces_for(const Graph& g, const std::vector<std::vector<int>>& ids,
                            bool constant_faces) {
    if (!constant_faces)
        return build_faces(g, ids, {}, true);
    static const double kUnitTriangle = std::sqrt(3.0) / 4;
    std::vector<Face> faces;
    faces.reserve(ids.size());
    for (const auto& f : ids)
        faces.push_back({f, f.size() == 3 ? kUnitTriangle : 1.0});
    return faces;
}

std::vector<double> evaluate_curvature(const Graph& g, const FlowConfig& cfg,
                                       const FaceIds* face_ids, bool constant_faces,
                                       const std::vector<double>* edge_dist,
                                       DistanceCache* cache) {
    std::vector<double> kappa(static_cast<size_t>(g.edge_count()), 0.0);
    switch (cfg.curvature) {
    case CurvatureKind::OrcExact:
        parallel_for(g.edge_count(), [&](int64_t e) {
            kappa[e] = orc_edge_exact(g, static_cast<int>(e), cfg.measure, cache);
        });
        break;
    case CurvatureKind::OrcSinkhorn:
        parallel_for(g.edge_count(), [&](int64_t e) {
            kappa[e] = orc_edge_sinkhorn(g, static_cast<int>(e), cfg.measure, cfg.sinkhorn,
                                         cache);
        });
        break;
    case CurvatureKind::OrcApprox:
        parallel_for(g.edge_count(), [&](int64_t e) {
            kappa[e] = orc_approx(g, static_cast<int>(e), cfg.measure.alpha, cfg.measure.p,
                                  (*edge_dist)[e]);
        });
        break;
    case CurvatureKind::OrcApproxA1:
        parallel_for(g.edge_count(), [&](int64_t e) {
            kappa[e] = orc_approx_a1(g, static_cast<int>(e), cfg.measure.alpha, cfg.measure.p,
                                     (*edge_dist)[e]);
        });
        break;
    case CurvatureKind::Frc1:
        parallel_for(g.edge_count(),
                     [&](int64_t e) { kappa[e] = frc1_edge(g, static_cast<int>(e)); });
        break;
    case CurvatureKind::Frc2:
    case CurvatureKind::Frc3:
        parallel_for(g.edge_count(), [&](int64_t e) {
            auto faces = faces_for(g, (*face_ids)[static_cast<size_t>(e)], constant_faces);
            kappa[e] = frc_2complex_edge(g, static_cast<int>(e), faces);
        });
        break;
    }
    return kappa;
}

std::pair<std::vector<double>, std::vector<double>>
flow_step_impl(const Graph& g_t, const FlowConfig& cfg, const FaceIds* face_ids,
               bool constant_faces) {
    const int m = g_t.edge_count();
    std::vector<double> dist;
    std::optional<DistanceCache> cache;
    bool needs_cache =
        cfg.curvature == CurvatureKind::OrcExact || cfg.curvature == CurvatureKind::OrcSinkhorn;
    if (needs_cache) {
        cache.emplace(g_t);
        cache->prefetch_all();
        dist.resize(static_cast<size_t>(m));
        for (int e = 0; e < m; ++e)
            dist[static_cast<size_t>(e)] = cache->dist(g_t.edge_u(e), g_t.edge_v(e));
    } else {
        dist = edge_distances(g_t);
    }

    std::vector<double> kappa =
        evaluate_curvature(g_t, cfg, face_ids, constant_faces, &dist, cache ? &*cache : nullptr);

    double nu = cfg.nu;
    if (cfg.adaptive_nu) {
        double max_abs = 0;
        for (double k : kappa)
            max_abs = std::max(max_abs, std::abs(k));
        nu = max_abs > 0 ? 1.0 / (1.1 * max_abs) : 1.0;
    }

    std::vector<double> next(static_cast<size_t>(m));
    for (int e = 0; e < m; ++e) {
        double w = (1.0 - nu * kappa[static_cast<size_t>(e)]) * dist[static_cast<size_t>(e)];
        if (!(w > 0))
            throw std::runtime_error(
                "flow: nonpositive weight on edge {" + std::to_string(g_t.edge_u(e)) + "," +
                std::to_string(g_t.edge_v(e)) + "} (curvature >= 1/nu)");
        next[static_cast<size_t>(e)] = w;
    }
    if (cfg.renormalize && m > 0) {
        double total = std::accumulate(next.begin(), next.end(), 0.0);
        double scale = static_cast<double>(m) / total;
        for (double& w : next)
            w *= scale;
    }
    return {std::move(kappa), std::move(next)};
}

} // namespace

std::pair<std::vector<double>, std::vector<double>>
flow_step(const Graph& g_t, const FlowConfig& cfg, const LineFaceTable* line_faces) {
    FaceIds ids = collect_face_ids(g_t, cfg.curvature, line_faces);
    return flow_step_impl(g_t, cfg, &ids, g_t.unit_edge_weights());
}

FlowState run_flow(const Graph& g, const FlowConfig& cfg, const LineFaceTable* line_faces) {
    if (cfg.iterations < 1)
        throw std::invalid_argument("flow: iteration count must be >= 1");
    FaceIds ids = collect_face_ids(g, cfg.curvature, line_faces);
    const bool constant_faces = g.unit_edge_weights();
    FlowState state;
    state.weights.push_back(
        std::vector<double>(g.edge_weights().begin(), g.edge_weights().end()));
    Graph current = g;
    for (int t = 1; t <= cfg.iterations; ++t) {
        auto [kappa, next] = flow_step_impl(current, cfg, &ids, constant_faces);
        state.curvature.push_back(std::move(kappa));
        state.weights.push_back(next);
        current = current.with_edge_weights(next);
    }
    return state;
}

std::vector<double> cutoffs_orc(std::span<const double> final_weights) {
    if (final_weights.empty())
        return {};
    double x0 = *std::max_element(final_weights.begin(), final_weights.end());
    constexpr double delta = 0.025;
    // (x0 - 1) mod delta + 1, computed through the step count so that an
    // exact multiple of delta lands on 1 instead of wrapping.
    long steps = x0 >= 1.0 ? static_cast<long>(std::floor((x0 - 1.0) / delta + 1e-9)) : 0;
    std::vector<double> cutoffs;
    cutoffs.reserve(static_cast<size_t>(steps) + 1);
    for (long i = 0; i <= steps; ++i)
        cutoffs.push_back(x0 - static_cast<double>(i) * delta);
    return cutoffs;
}

std::vector<double> cutoffs_frc(std::span<const double> final_weights) {
    if (final_weights.empty())
        return {};
    std::vector<double> sorted(final_weights.begin(), final_weights.end());
    std::sort(sorted.begin(), sorted.end());
    const size_t m = sorted.size();
    constexpr double q = 0.999;
    constexpr double delta = 0.25;
    size_t rank = static_cast<size_t>(std::ceil(q * static_cast<double>(m)));
    rank = std::min(std::max<size_t>(rank, 1), m);
    double wq = sorted[rank - 1];
    double wmin = sorted.front();

    std::vector<double> cutoffs;
    // Phase 1: distinct weights from the max down to the quantile.
    for (size_t i = m; i-- > 0;) {
        double w = sorted[i];
        if (w < wq - 1e-12)
            break;
        if (cutoffs.empty() || w < cutoffs.back() - 1e-12)
            cutoffs.push_back(w);
    }
    // Phase 2: arithmetic descent toward 1.1 * w_min.
    double floor_val = 1.1 * wmin;
    if (wq > floor_val) {
        long steps = static_cast<long>(std::floor((wq - floor_val) / delta + 1e-9));
        for (long i = 1; i <= steps; ++i)
            cutoffs.push_back(wq - static_cast<double>(i) * delta);
    }
    return cutoffs;
}

double modularity(const Graph& g, const Labeling& l) {
    if (static_cast<int>(l.label.size()) != g.vertex_count())
        throw std::invalid_argument("modularity: labeling size mismatch");
    int k = 0;
    for (int c : l.label) {
        if (c < 0)
            throw std::invalid_argument("modularity: negative label");
        k = std::max(k, c + 1);
    }
    double two_w = 0;
    std::vector<double> intra(static_cast<size_t>(k), 0.0);
    std::vector<double> deg(static_cast<size_t>(k), 0.0);
    for (int e = 0; e < g.edge_count(); ++e) {
        double w = g.edge_weight(e);
        int cu = l.label[static_cast<size_t>(g.edge_u(e))];
        int cv = l.label[static_cast<size_t>(g.edge_v(e))];
        two_w += 2 * w;
        deg[static_cast<size_t>(cu)] += w;
        deg[static_cast<size_t>(cv)] += w;
        if (cu == cv)
            intra[static_cast<size_t>(cu)] += 2 * w;
    }
    if (two_w == 0)
        return 0.0;
    double q = 0;
    for (int c = 0; c < k; ++c)
        q += intra[static_cast<size_t>(c)] / two_w -
             (deg[static_cast<size_t>(c)] / two_w) * (deg[static_cast<size_t>(c)] / two_w);
    return q;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

Labeling labels_from_roots(UnionFind& uf, int n) {
    Labeling l;
    l.label.assign(static_cast<size_t>(n), -1);
    std::vector<int> id_of_root(static_cast<size_t>(n), -1);
    int next = 0;
    for (int v = 0; v < n; ++v) {
        int r = uf.find(v);
        if (id_of_root[static_cast<size_t>(r)] < 0)
            id_of_root[static_cast<size_t>(r)] = next++;
        l.label[static_cast<size_t>(v)] = id_of_root[static_cast<size_t>(r)];
    }
    l.k = next;
    return l;
}

} // namespace

CutSelection cut_and_select(const Graph& original, std::span<const double> final_weights,
                            std::span<const double> cutoffs, const FlowConfig& cfg) {
    CutSelection sel;
    sel.q_best = cfg.epsilon;
    double q_prev = cfg.epsilon;
    const int n = original.vertex_count();
    for (size_t i = 0; i < cutoffs.size(); ++i) {
        double x = cutoffs[i];
        UnionFind uf(n);
        for (int e = 0; e < original.edge_count(); ++e)
            if (final_weights[static_cast<size_t>(e)] <= x)
                uf.unite(original.edge_u(e), original.edge_v(e));
        Labeling cand = labels_from_roots(uf, n);
        double q = modularity(original, cand);
        if (q > sel.q_best && (i == 0 || (q - q_prev) / q > cfg.epsilon_drop)) {
            sel.labels = std::move(cand);
            sel.q_best = q;
            sel.cutoff = x;
        }
        q_prev = q;
    }
    if (!sel.labels)
        sel.q_best = cfg.epsilon;
    return sel;
}

namespace {

struct ComponentSplit {
    std::vector<Graph> graphs;
    std::vector<std::vector<Vertex>> to_global;    // per component: local -> global vertex
    std::vector<int> comp_of;                      // global vertex -> component
    std::vector<std::pair<int, int>> edge_loc;     // global edge -> (component, local edge)
};

ComponentSplit split_components(const Graph& g) {
    ComponentSplit s;
    int count = 0;
    s.comp_of = g.components(&count);
    s.to_global.resize(static_cast<size_t>(count));
    std::vector<Vertex> local_id(static_cast<size_t>(g.vertex_count()));
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        auto& vs = s.to_global[static_cast<size_t>(s.comp_of[static_cast<size_t>(v)])];
        local_id[static_cast<size_t>(v)] = static_cast<Vertex>(vs.size());
        vs.push_back(v);
    }
    std::vector<std::vector<EdgeSpec>> edges(static_cast<size_t>(count));
    s.edge_loc.resize(static_cast<size_t>(g.edge_count()));
    for (int e = 0; e < g.edge_count(); ++e) {
        int c = s.comp_of[static_cast<size_t>(g.edge_u(e))];
        auto& es = edges[static_cast<size_t>(c)];
        s.edge_loc[static_cast<size_t>(e)] = {c, static_cast<int>(es.size())};
        es.push_back({local_id[static_cast<size_t>(g.edge_u(e))],
                      local_id[static_cast<size_t>(g.edge_v(e))], g.edge_weight(e)});
    }
    s.graphs.reserve(static_cast<size_t>(count));
    for (int c = 0; c < count; ++c) {
        std::vector<double> vw;
        vw.reserve(s.to_global[static_cast<size_t>(c)].size());
        for (Vertex v : s.to_global[static_cast<size_t>(c)])
            vw.push_back(g.vertex_weight(v));
        s.graphs.emplace_back(static_cast<int>(s.to_global[static_cast<size_t>(c)].size()),
                              edges[static_cast<size_t>(c)], std::move(vw));
    }
    return s;
}

std::optional<SingleResult> cluster_connected(const Graph& g, const FlowConfig& cfg,
                                              const LineFaceTable* faces) {
    if (g.edge_count() == 0)
        return std::nullopt;
    FlowState flow = run_flow(g, cfg, faces);
    std::vector<double> cutoffs = cfg.cutoff == CutoffScheme::OrcUniform
                                      ? cutoffs_orc(flow.final_weights())
                                      : cutoffs_frc(flow.final_weights());
    CutSelection sel = cut_and_select(g, flow.final_weights(), cutoffs, cfg);
    if (!sel.labels)
        return std::nullopt;
    SingleResult r;
    r.labels = std::move(*sel.labels);
    r.q_best = sel.q_best;
    r.cutoff = sel.cutoff;
    r.flow = std::move(flow);
    return r;
}

std::optional<SingleResult> cluster_graph(const Graph& g, const FlowConfig& cfg,
                                          const LineFaceTable* faces) {
    if (g.vertex_count() == 0)
        return std::nullopt;
    ComponentSplit split = split_components(g);
    if (split.graphs.size() == 1)
        return cluster_connected(g, cfg, faces);

    // Disconnected input: run per component, offset the labels.
    SingleResult merged;
    merged.labels.label.assign(static_cast<size_t>(g.vertex_count()), -1);
    int offset = 0;
    size_t largest = 0;
    for (size_t c = 0; c < split.graphs.size(); ++c) {
        const Graph& comp = split.graphs[c];
        std::optional<LineFaceTable> local_faces;
        if (faces) {
            local_faces.emplace();
            local_faces->per_edge.resize(static_cast<size_t>(comp.edge_count()));
            for (int e = 0; e < g.edge_count(); ++e) {
                auto [ec, le] = split.edge_loc[static_cast<size_t>(e)];
                if (ec != static_cast<int>(c))
                    continue;
                auto remapped = faces->per_edge[static_cast<size_t>(e)];
                for (auto& face : remapped)
                    for (int& id : face)
                        id = split.edge_loc[static_cast<size_t>(id)].second;
                local_faces->per_edge[static_cast<size_t>(le)] = std::move(remapped);
            }
        }
        auto res = cluster_connected(comp, cfg, faces ? &*local_faces : nullptr);
        int local_k = 1;
        if (res) {
            local_k = res->labels.k;
            for (size_t v = 0; v < split.to_global[c].size(); ++v)
                merged.labels.label[static_cast<size_t>(split.to_global[c][v])] =
                    offset + res->labels.label[v];
            if (comp.vertex_count() > static_cast<int>(split.to_global[largest].size()) ||
                !merged.flow.weights.size())
                merged.flow = res->flow;
        } else {
            for (Vertex v : split.to_global[c])
                merged.labels.label[static_cast<size_t>(v)] = offset;
        }
        if (comp.vertex_count() > split.graphs[largest].vertex_count())
            largest = c;
        offset += local_k;
    }
    merged.labels.k = offset;
    merged.q_best = modularity(g, merged.labels);
    if (merged.q_best <= cfg.epsilon)
        return std::nullopt;
    return merged;
}

} // namespace

std::optional<SingleResult> cluster_single(const Graph& g, const FlowConfig& cfg) {
    return cluster_graph(g, cfg, nullptr);
}

std::optional<MixedResult> cluster_mixed(const Graph& g, const FlowConfig& cfg) {
    if (g.edge_count() == 0)
        return std::nullopt;
    LineGraphMap lg = line_graph(g);
    std::optional<LineFaceTable> faces;
    if (cfg.curvature == CurvatureKind::Frc3)
        faces = LineFaceTable::build(lg, g);
    auto res = cluster_graph(lg.line, cfg, faces ? &*faces : nullptr);
    if (!res)
        return std::nullopt;

    MixedResult out;
    out.edge_labels = res->labels;
    out.q_best = res->q_best;
    const int k = res->labels.k;
    out.labels.k = k;
    out.labels.y.assign(static_cast<size_t>(g.vertex_count()),
                        std::vector<double>(static_cast<size_t>(k), 0.0));
    out.labels.members.resize(static_cast<size_t>(g.vertex_count()));
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        auto span = g.arcs(v);
        if (span.empty())
            continue;
        auto& y = out.labels.y[static_cast<size_t>(v)];
        for (const Graph::Arc& a : span)
            y[static_cast<size_t>(res->labels.label[static_cast<size_t>(a.edge)])] +=
                1.0 / static_cast<double>(span.size());
        double norm = 0;
        for (double x : y)
            norm += x * x;
        norm = std::sqrt(norm);
        for (int l = 0; l < k; ++l)
            if (y[static_cast<size_t>(l)] / norm > 0.8 / static_cast<double>(k))
                out.labels.members[static_cast<size_t>(v)].push_back(l);
    }
    return out;
}

} // namespace ricci
