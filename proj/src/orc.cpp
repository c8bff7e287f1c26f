#include "ricci/orc.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "ricci/parallel.hpp"

namespace ricci {

NeighborhoodMeasure measure_for(const Graph& g, Vertex v, const MeasureMode& mode) {
    switch (mode.kind) {
    case MeasureMode::Kind::Exponential:
        return node_measure(g, v, mode.alpha, mode.p);
    case MeasureMode::Kind::LazyUniform: {
        auto span = g.arcs(v);
        if (span.empty() && mode.alpha < 1)
            throw std::invalid_argument("measure: isolated vertex with alpha < 1");
        NeighborhoodMeasure m;
        m.center = v;
        m.alpha = mode.alpha;
        if (mode.alpha > 0)
            m.mass.emplace_back(v, mode.alpha);
        if (mode.alpha < 1)
            for (const Graph::Arc& a : span)
                m.mass.emplace_back(a.to, (1 - mode.alpha) / static_cast<double>(span.size()));
        std::sort(m.mass.begin(), m.mass.end());
        return m;
    }
    case MeasureMode::Kind::Uniform: {
        MeasureMode u = MeasureMode::lazy_uniform(0.0);
        return measure_for(g, v, u);
    }
    case MeasureMode::Kind::DegreeProportional: {
        auto span = g.arcs(v);
        if (span.empty())
            throw std::invalid_argument("measure: isolated vertex");
        NeighborhoodMeasure m;
        m.center = v;
        double d = g.degree(v);
        for (const Graph::Arc& a : span)
            m.mass.emplace_back(a.to, a.w / d);
        std::sort(m.mass.begin(), m.mass.end());
        return m;
    }
    }
    throw std::logic_error("measure: unknown kind");
}

const std::vector<double>& DistanceCache::row(Vertex v) {
    auto& r = rows_[static_cast<size_t>(v)];
    if (r.empty())
        r = g_->dijkstra(v);
    return r;
}

void DistanceCache::prefetch_all() {
    parallel_for(g_->vertex_count(), [&](int64_t v) {
        auto& r = rows_[static_cast<size_t>(v)];
        if (r.empty())
            r = g_->dijkstra(static_cast<Vertex>(v));
    });
}

namespace {

// Remove the shared mass min(mu, nu) pointwise; with metric costs the
// transport cost between the reduced measures equals W_1(mu, nu).
std::pair<NeighborhoodMeasure, NeighborhoodMeasure>
cancel_common_mass(const NeighborhoodMeasure& mu, const NeighborhoodMeasure& nu) {
    NeighborhoodMeasure a, b;
    a.center = mu.center;
    b.center = nu.center;
    auto i = mu.mass.begin();
    auto j = nu.mass.begin();
    while (i != mu.mass.end() || j != nu.mass.end()) {
        if (j == nu.mass.end() || (i != mu.mass.end() && i->first < j->first)) {
            a.mass.push_back(*i++);
        } else if (i == mu.mass.end() || j->first < i->first) {
            b.mass.push_back(*j++);
        } else {
            double common = std::min(i->second, j->second);
            if (i->second - common > 0)
                a.mass.emplace_back(i->first, i->second - common);
            if (j->second - common > 0)
                b.mass.emplace_back(j->first, j->second - common);
            ++i;
            ++j;
        }
    }
    return {std::move(a), std::move(b)};
}

double edge_distance(const Graph& g, int e, DistanceCache* cache) {
    Vertex u = g.edge_u(e), v = g.edge_v(e);
    return cache ? cache->dist(u, v) : g.shortest_path_distance(u, v);
}

double w1_between(const Graph& g, const NeighborhoodMeasure& mu, const NeighborhoodMeasure& nu,
                  DistanceCache* cache, const SinkhornParams* sinkhorn) {
    auto [a, b] = cancel_common_mass(mu, nu);
    if (a.mass.empty())
        return 0.0;
    double total = a.total();
    // Rescale to probability measures for the solver, undo afterwards.
    TransportProblem p;
    std::vector<Vertex> sv, dv;
    for (auto& [v, m] : a.mass) {
        sv.push_back(v);
        p.supply.push_back(m / total);
    }
    for (auto& [v, m] : b.mass) {
        dv.push_back(v);
        p.demand.push_back(m / total);
    }
    p.cost.assign(sv.size(), std::vector<double>(dv.size(), 0.0));
    for (size_t i = 0; i < sv.size(); ++i) {
        if (cache) {
            const auto& row = cache->row(sv[i]);
            for (size_t j = 0; j < dv.size(); ++j)
                p.cost[i][j] = row[dv[j]];
        } else {
            auto dist = g.dijkstra(sv[i]);
            for (size_t j = 0; j < dv.size(); ++j)
                p.cost[i][j] = dist[dv[j]];
        }
    }
    for (const auto& row : p.cost)
        for (double c : row)
            if (!std::isfinite(c))
                throw std::runtime_error("orc: measure supports are disconnected");
    double cost = sinkhorn ? w1_sinkhorn(p, *sinkhorn) : w1_exact(p).cost;
    return cost * total;
}

} // namespace

double orc_edge_exact(const Graph& g, int e, const MeasureMode& mode, DistanceCache* cache) {
    Vertex u = g.edge_u(e), v = g.edge_v(e);
    auto mu = measure_for(g, u, mode);
    auto nu = measure_for(g, v, mode);
    double w1 = w1_between(g, mu, nu, cache, nullptr);
    return 1.0 - w1 / edge_distance(g, e, cache);
}

double orc_edge_sinkhorn(const Graph& g, int e, const MeasureMode& mode,
                         const SinkhornParams& params, DistanceCache* cache) {
    Vertex u = g.edge_u(e), v = g.edge_v(e);
    auto mu = measure_for(g, u, mode);
    auto nu = measure_for(g, v, mode);
    double w1 = w1_between(g, mu, nu, cache, &params);
    return 1.0 - w1 / edge_distance(g, e, cache);
}

double orc_vertex(const Graph& g, Vertex v, const MeasureMode& mode, DistanceCache* cache) {
    auto span = g.arcs(v);
    if (span.empty())
        throw std::invalid_argument("orc_vertex: isolated vertex");
    double sum = 0;
    for (const Graph::Arc& a : span)
        sum += orc_edge_exact(g, a.edge, mode, cache);
    return sum;
}

namespace {

double positive_part(double x) { return x > 0 ? x : 0.0; }

} // namespace

OrcBounds orc_bounds_unweighted(const Graph& g, int e) {
    double du = g.neighbor_count(g.edge_u(e));
    double dv = g.neighbor_count(g.edge_v(e));
    double tri = g.triangle_count(e);
    double dmin = std::min(du, dv), dmax = std::max(du, dv);
    double upper = tri / dmax;
    double lower = -positive_part(1 - 1 / du - 1 / dv - tri / dmin) -
                   positive_part(1 - 1 / du - 1 / dv - tri / dmax) + tri / dmax;
    return {lower, upper};
}

namespace {

// Multi-source Dijkstra from `sources`, stopping once every vertex in
// `targets` is settled. Returns the distances of the targets, in order.
std::vector<double> distance_to_set(const Graph& g, const std::vector<Vertex>& sources,
                                    const std::vector<Vertex>& targets) {
    std::unordered_map<Vertex, double> dist;
    std::unordered_set<Vertex> pending(targets.begin(), targets.end());
    using Item = std::pair<double, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (Vertex s : sources) {
        dist[s] = 0;
        heap.emplace(0.0, s);
    }
    for (Vertex s : sources)
        pending.erase(s);
    std::unordered_map<Vertex, double> settled;
    while (!heap.empty() && !pending.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        auto it = dist.find(v);
        if (it == dist.end() || d > it->second)
            continue;
        if (settled.count(v))
            continue;
        settled[v] = d;
        pending.erase(v);
        for (const Graph::Arc& a : g.arcs(v)) {
            double nd = d + a.w;
            auto [slot, inserted] = dist.try_emplace(a.to, nd);
            if (!inserted && nd >= slot->second)
                continue;
            slot->second = nd;
            heap.emplace(nd, a.to);
        }
    }
    std::vector<double> out;
    out.reserve(targets.size());
    for (Vertex t : targets) {
        auto it = settled.find(t);
        if (it != settled.end()) {
            out.push_back(it->second);
        } else {
            auto d = dist.find(t);
            out.push_back(d == dist.end() ? kInfDistance : d->second);
        }
    }
    return out;
}

// Shared machinery for the weighted curvature bounds; works on any graph,
// including line-graph patches.
OrcBounds weighted_bounds_core(const Graph& g, Vertex x, Vertex y,
                               const NeighborhoodMeasure& mx, const NeighborhoodMeasure& my,
                               std::optional<double> dist_xy) {
    int exy = g.find_edge(x, y);
    if (exy < 0)
        throw std::invalid_argument("orc bounds: vertices are not adjacent");
    double wxy = g.edge_weight(exy);
    double dxy = dist_xy ? *dist_xy : g.shortest_path_distance(x, y);

    // Classify neighbors: exclusive to x (l), exclusive to y (r), common (c).
    auto weight_to = [&](Vertex from, Vertex to) -> const double* {
        auto span = g.arcs(from);
        auto it = std::lower_bound(span.begin(), span.end(), to,
                                   [](const Graph::Arc& a, Vertex t) { return a.to < t; });
        if (it != span.end() && it->to == to)
            return &it->w;
        return nullptr;
    };

    double upper_cost = 0; // transport-plan bound on W1
    double lx = 0;         // total m_x mass on exclusive neighbors of x
    double common_deficit = 0;
    for (const Graph::Arc& a : g.arcs(x)) {
        if (a.to == y)
            continue;
        const double* wy = weight_to(y, a.to);
        if (!wy) {
            double m = mx.at(a.to);
            upper_cost += a.w * m;
            lx += m;
        } else {
            double diff = mx.at(a.to) - my.at(a.to);
            if (diff > 0)
                upper_cost += *wy * diff; // send surplus from c toward y
            else {
                upper_cost += a.w * (-diff); // fill deficit from x
                common_deficit += -diff;
            }
        }
    }
    for (const Graph::Arc& a : g.arcs(y)) {
        if (a.to == x)
            continue;
        if (!weight_to(x, a.to))
            upper_cost += a.w * my.at(a.to);
    }
    double residual = lx + mx.at(x) - my.at(x) - common_deficit;
    upper_cost += std::abs(residual) * wxy;

    // Lipschitz bound on W1 through distance-to-set terms.
    std::vector<Vertex> pos, neg;
    std::vector<double> pos_mass, neg_mass;
    std::vector<Vertex> support;
    for (const auto& [v, m] : mx.mass)
        support.push_back(v);
    for (const auto& [v, m] : my.mass)
        support.push_back(v);
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    for (Vertex v : support) {
        double diff = mx.at(v) - my.at(v);
        if (diff > 0) {
            pos.push_back(v);
            pos_mass.push_back(diff);
        } else if (diff < 0) {
            neg.push_back(v);
            neg_mass.push_back(-diff);
        }
    }
    double lower_cost = 0;
    if (!pos.empty()) {
        auto d_pos = distance_to_set(g, neg, pos);
        auto d_neg = distance_to_set(g, pos, neg);
        double sum_pos = 0, sum_neg = 0;
        for (size_t i = 0; i < pos.size(); ++i)
            sum_pos += d_pos[i] * pos_mass[i];
        for (size_t i = 0; i < neg.size(); ++i)
            sum_neg += d_neg[i] * neg_mass[i];
        lower_cost = std::max(sum_pos, sum_neg);
    }

    return {1.0 - upper_cost / dxy, 1.0 - lower_cost / dxy};
}

} // namespace

OrcBounds orc_bounds_weighted(const Graph& g, int e, double alpha, double p,
                              std::optional<double> dist_uv) {
    // On unit weights with no center mass the exponential measure is
    // uniform and the tighter unweighted bounds apply directly.
    if (g.unit_edge_weights() && alpha == 0)
        return orc_bounds_unweighted(g, e);
    Vertex u = g.edge_u(e), v = g.edge_v(e);
    auto mu = node_measure(g, u, alpha, p);
    auto mv = node_measure(g, v, alpha, p);
    return weighted_bounds_core(g, u, v, mu, mv, dist_uv);
}

double orc_approx(const Graph& g, int e, double alpha, double p,
                  std::optional<double> dist_uv) {
    OrcBounds b = orc_bounds_weighted(g, e, alpha, p, dist_uv);
    return 0.5 * (b.lower + b.upper);
}

double orc_approx_a1(const Graph& g, int e, double alpha, double p,
                     std::optional<double> dist_uv) {
    OrcBounds b = orc_bounds_weighted(g, e, alpha, p, dist_uv);
    return 0.5 * (1.0 + b.lower);
}

namespace {

// Shared base vertex of two adjacent edges; throws when |e1 ∩ e2| != 1.
Vertex shared_endpoint(const Graph& g, int e1, int e2) {
    if (e1 == e2)
        throw std::invalid_argument("line orc: edges must be distinct");
    Vertex a = g.edge_u(e1), b = g.edge_v(e1);
    Vertex c = g.edge_u(e2), d = g.edge_v(e2);
    Vertex shared = -1;
    int count = 0;
    for (Vertex s : {a, b})
        if (s == c || s == d) {
            shared = s;
            ++count;
        }
    if (count != 1)
        throw std::invalid_argument("line orc: edges do not share exactly one vertex");
    return shared;
}

} // namespace

OrcBounds line_orc_bounds_base(const Graph& g, int e1, int e2) {
    Vertex v = shared_endpoint(g, e1, e2);
    Vertex u = g.edge_u(e1) == v ? g.edge_v(e1) : g.edge_u(e1);
    Vertex w = g.edge_u(e2) == v ? g.edge_v(e2) : g.edge_u(e2);
    double du = g.neighbor_count(u);
    double dv = g.neighbor_count(v);
    double dw = g.neighbor_count(w);
    double ind = g.has_edge(u, w) ? 1.0 : 0.0;
    double d1 = du + dv - 2; // line degree of e1
    double d2 = dv + dw - 2; // line degree of e2
    double tri = dv - 2 + ind;
    double dmin = std::min(du, dw) + dv - 2;
    double dmax = std::max(du, dw) + dv - 2;
    double upper = tri / dmax;
    double lower = -positive_part(1 - 1 / d1 - 1 / d2 - tri / dmin) -
                   positive_part(1 - 1 / d1 - 1 / d2 - tri / dmax) + tri / dmax;
    return {lower, upper};
}

OrcBounds line_orc_bounds_weighted(const Graph& g, int e1, int e2, double alpha, double p) {
    shared_endpoint(g, e1, e2); // validates adjacency
    if (g.unit_edge_weights() && alpha == 0)
        return line_orc_bounds_base(g, e1, e2);

    // Local patch of L(G): line vertices within two hops of {e1,e2} are
    // exactly the base edges meeting T = {u,v,w} ∪ N(u) ∪ N(v) ∪ N(w).
    std::unordered_set<Vertex> t;
    for (int e : {e1, e2})
        for (Vertex s : {g.edge_u(e), g.edge_v(e)}) {
            t.insert(s);
            for (const Graph::Arc& a : g.arcs(s))
                t.insert(a.to);
        }
    std::unordered_map<int, Vertex> local_of; // base edge id -> patch vertex
    std::vector<int> base_of;
    auto local_id = [&](int e) {
        auto [it, inserted] = local_of.try_emplace(e, static_cast<Vertex>(base_of.size()));
        if (inserted)
            base_of.push_back(e);
        return it->second;
    };
    std::vector<EdgeSpec> patch_edges;
    std::unordered_set<uint64_t> seen;
    for (Vertex z : t) {
        auto span = g.arcs(z);
        for (size_t i = 0; i < span.size(); ++i)
            local_id(span[i].edge);
        for (size_t i = 0; i < span.size(); ++i)
            for (size_t j = i + 1; j < span.size(); ++j) {
                Vertex a = local_id(span[i].edge);
                Vertex b = local_id(span[j].edge);
                if (a > b)
                    std::swap(a, b);
                if (!seen.insert((static_cast<uint64_t>(a) << 32) | static_cast<uint32_t>(b))
                         .second)
                    continue;
                patch_edges.push_back(
                    {a, b, std::sqrt(g.edge_weight(span[i].edge) * g.edge_weight(span[j].edge))});
            }
    }
    // Adjacencies at base vertices outside T between two patch edges.
    for (int idx = 0; idx < static_cast<int>(base_of.size()); ++idx) {
        int e = base_of[static_cast<size_t>(idx)];
        for (Vertex z : {g.edge_u(e), g.edge_v(e)}) {
            if (t.count(z))
                continue;
            auto span = g.arcs(z);
            for (size_t i = 0; i < span.size(); ++i) {
                auto it1 = local_of.find(span[i].edge);
                if (it1 == local_of.end())
                    continue;
                for (size_t j = i + 1; j < span.size(); ++j) {
                    auto it2 = local_of.find(span[j].edge);
                    if (it2 == local_of.end())
                        continue;
                    Vertex a = it1->second, b = it2->second;
                    if (a > b)
                        std::swap(a, b);
                    if (!seen.insert((static_cast<uint64_t>(a) << 32) | static_cast<uint32_t>(b))
                             .second)
                        continue;
                    patch_edges.push_back({a, b,
                                           std::sqrt(g.edge_weight(span[i].edge) *
                                                     g.edge_weight(span[j].edge))});
                }
            }
        }
    }
    std::vector<double> vertex_weights(base_of.size());
    for (size_t i = 0; i < base_of.size(); ++i)
        vertex_weights[i] = g.edge_weight(base_of[i]);
    Graph patch(static_cast<int>(base_of.size()), patch_edges, std::move(vertex_weights));

    Vertex x = local_of.at(e1);
    Vertex y = local_of.at(e2);
    // The sqrt edge-weight scheme makes node_measure on the patch coincide
    // with the line-graph neighborhood measure.
    auto mx = node_measure(patch, x, alpha, p);
    auto my = node_measure(patch, y, alpha, p);
    return weighted_bounds_core(patch, x, y, mx, my, std::nullopt);
}

} // namespace ricci
