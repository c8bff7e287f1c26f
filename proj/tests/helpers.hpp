#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "ricci/eval.hpp"
#include "ricci/flow.hpp"
#include "ricci/graph.hpp"
#include "ricci/rng.hpp"

namespace ricci::test {

inline Graph make_graph(int n, std::vector<EdgeSpec> edges) { return Graph(n, edges); }

// --- small fixtures -------------------------------------------------------

inline Graph k2() { return make_graph(2, {{0, 1}}); }
inline Graph k3() { return make_graph(3, {{0, 1}, {0, 2}, {1, 2}}); }
inline Graph k4() {
    return make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}
inline Graph p3() { return make_graph(3, {{0, 1}, {1, 2}}); }
inline Graph p4() { return make_graph(4, {{0, 1}, {1, 2}, {2, 3}}); }
inline Graph c4() { return make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}); }
inline Graph c5() { return make_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}); }
inline Graph star(int leaves) {
    std::vector<EdgeSpec> e;
    for (int i = 1; i <= leaves; ++i)
        e.push_back({0, i});
    return make_graph(leaves + 1, e);
}

// Weighted graph on which the classical degree-measure curvature bound
// fails; vertices l=0, x=1, c=2, y=3.
inline Graph degree_measure_counterexample() {
    return make_graph(4, {{0, 1, 3.0}, {1, 2, 2.0}, {2, 3, 2.0}, {0, 2, 0.2}, {1, 3, 1.0}});
}

// --- random graphs for property tests -------------------------------------

inline Graph erdos_renyi(int n, double p, uint64_t seed, bool random_weights = false) {
    std::vector<EdgeSpec> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            uint64_t h = rng::mix(seed, static_cast<uint64_t>(i), static_cast<uint64_t>(j));
            if (rng::u01(h) < p) {
                double w = 1.0;
                if (random_weights)
                    w = 0.25 + 1.75 * rng::u01(rng::splitmix64(h));
                edges.push_back({i, j, w});
            }
        }
    return make_graph(n, std::move(edges));
}

// --- independent oracles ---------------------------------------------------

// Modularity straight from the definition: ordered-pair double loop.
inline double modularity_oracle(const Graph& g, const std::vector<int>& label) {
    int n = g.vertex_count();
    double two_w = 0;
    for (int e = 0; e < g.edge_count(); ++e)
        two_w += 2 * g.edge_weight(e);
    if (two_w == 0)
        return 0.0;
    double q = 0;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (label[static_cast<size_t>(u)] != label[static_cast<size_t>(v)])
                continue;
            int e = u == v ? -1 : g.find_edge(u, v);
            double a = e >= 0 ? g.edge_weight(e) : 0.0;
            q += a - g.degree(u) * g.degree(v) / two_w;
        }
    return q / two_w;
}

// W1 between uniform measures on k source and k sink points by exhaustive
// assignment search (Birkhoff extreme points).
inline double w1_assignment_oracle(const std::vector<std::vector<double>>& cost) {
    int k = static_cast<int>(cost.size());
    std::vector<int> perm(static_cast<size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double total = 0;
        for (int i = 0; i < k; ++i)
            total += cost[static_cast<size_t>(i)][static_cast<size_t>(perm[static_cast<size_t>(i)])];
        best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best / static_cast<double>(k);
}

// Extended NMI straight from the written definition, with explicitly
// materialized joint probability tables.
inline double onmi_oracle(const BinaryMembership& za, const BinaryMembership& yb) {
    const int n = za.n;
    auto indicator = [&](const std::vector<int>& community) {
        std::vector<int> z(static_cast<size_t>(n), 0);
        for (int v : community)
            z[static_cast<size_t>(v)] = 1;
        return z;
    };
    auto hp = [](double p) { return p > 0 ? -p * std::log2(p) : 0.0; };
    auto entropy_of = [&](const std::vector<int>& z) {
        double p1 = std::accumulate(z.begin(), z.end(), 0.0) / n;
        return hp(p1) + hp(1 - p1);
    };
    auto side = [&](const BinaryMembership& zs, const BinaryMembership& ys) {
        double total = 0;
        for (const auto& zc : zs.communities) {
            auto z = indicator(zc);
            double hz = entropy_of(z);
            if (hz == 0)
                continue;
            double best = std::numeric_limits<double>::infinity();
            for (const auto& yc : ys.communities) {
                auto y = indicator(yc);
                double p[2][2] = {{0, 0}, {0, 0}};
                for (int v = 0; v < n; ++v)
                    p[z[static_cast<size_t>(v)]][y[static_cast<size_t>(v)]] += 1.0 / n;
                double joint = hp(p[0][0]) + hp(p[0][1]) + hp(p[1][0]) + hp(p[1][1]);
                // positive-correlation requirement of the construction
                if (hp(p[0][0]) + hp(p[1][1]) < hp(p[0][1]) + hp(p[1][0]))
                    continue;
                double hy = entropy_of(y);
                best = std::min(best, joint - hy);
            }
            if (!std::isfinite(best))
                best = hz;
            total += best / hz;
        }
        return total / static_cast<double>(zs.communities.size());
    };
    return 1.0 - (side(za, yb) + side(yb, za)) / 2.0;
}

// Backtracking graph isomorphism for small graphs (degree-pruned).
inline bool isomorphic(const Graph& a, const Graph& b) {
    int n = a.vertex_count();
    if (n != b.vertex_count() || a.edge_count() != b.edge_count())
        return false;
    std::vector<int> da, db;
    for (int v = 0; v < n; ++v) {
        da.push_back(a.neighbor_count(v));
        db.push_back(b.neighbor_count(v));
    }
    auto sa = da, sb = db;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb)
        return false;
    std::vector<int> map(static_cast<size_t>(n), -1);
    std::vector<char> used(static_cast<size_t>(n), 0);
    // Order vertices by decreasing degree for early pruning.
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return da[static_cast<size_t>(x)] > da[static_cast<size_t>(y)]; });
    std::function<bool(size_t)> place = [&](size_t idx) {
        if (idx == order.size())
            return true;
        int u = order[idx];
        for (int cand = 0; cand < n; ++cand) {
            if (used[static_cast<size_t>(cand)] ||
                db[static_cast<size_t>(cand)] != da[static_cast<size_t>(u)])
                continue;
            bool ok = true;
            for (size_t prev = 0; prev < idx && ok; ++prev) {
                int w = order[prev];
                bool ea = a.has_edge(u, w);
                bool eb = b.has_edge(cand, map[static_cast<size_t>(w)]);
                if (ea != eb)
                    ok = false;
            }
            if (!ok)
                continue;
            map[static_cast<size_t>(u)] = cand;
            used[static_cast<size_t>(cand)] = 1;
            if (place(idx + 1))
                return true;
            used[static_cast<size_t>(cand)] = 0;
            map[static_cast<size_t>(u)] = -1;
        }
        return false;
    };
    return place(0);
}

// Line graph materialized with product edge weights w_{e1} w_{e2}
// (weighted FRC identity scheme) and unit vertex weights.
inline Graph product_weight_line_graph(const Graph& g, const LineGraphMap& lg) {
    std::vector<EdgeSpec> edges;
    for (int e = 0; e < lg.line.edge_count(); ++e) {
        int a = lg.line.edge_u(e), b = lg.line.edge_v(e);
        edges.push_back({a, b, g.edge_weight(a) * g.edge_weight(b)});
    }
    std::vector<double> vertex_weights(g.edge_weights().begin(), g.edge_weights().end());
    return Graph(lg.line.vertex_count(), edges, std::move(vertex_weights));
}

} // namespace ricci::test
