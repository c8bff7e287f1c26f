#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "ricci/graph.hpp"

using namespace ricci;
using namespace ricci::test;

TEST_CASE("construction rejects malformed graphs") {
    CHECK_THROWS_AS(make_graph(2, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(make_graph(2, {{0, 1}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(make_graph(2, {{0, 1, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(make_graph(2, {{0, 1, -1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(make_graph(1, {{0, 1}}), std::invalid_argument);
}

TEST_CASE("degree") {
    Graph g = k3();
    for (Vertex v = 0; v < 3; ++v)
        CHECK(g.degree(v) == doctest::Approx(2));

    Graph s = make_graph(4, {{0, 1, 1.0}, {0, 2, 2.0}, {0, 3, 3.0}});
    CHECK(s.degree(0) == doctest::Approx(6));

    Graph iso = make_graph(2, {});
    CHECK(iso.degree(1) == 0);
    CHECK_THROWS_AS(iso.degree(5), std::invalid_argument);
}

TEST_CASE("shortest path distance") {
    Graph path = make_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}});
    CHECK(path.shortest_path_distance(0, 2) == doctest::Approx(2));
    CHECK(path.shortest_path_distance(0, 0) == 0);

    // Triangle with a heavy edge: both a-b routes enumerated by hand, the
    // two-hop one wins.
    Graph tri = make_graph(3, {{0, 1, 3.0}, {0, 2, 1.0}, {2, 1, 1.0}});
    CHECK(tri.shortest_path_distance(0, 1) == doctest::Approx(2));

    Graph split = make_graph(4, {{0, 1}, {2, 3}});
    CHECK(split.shortest_path_distance(0, 3) == kInfDistance);
    CHECK_THROWS_AS(split.shortest_path_distance(0, 9), std::invalid_argument);
}

TEST_CASE("shortest paths satisfy metric axioms on random weighted graphs") {
    for (uint64_t seed = 0; seed < 5; ++seed) {
        Graph g = erdos_renyi(12, 0.45, seed, true);
        std::vector<std::vector<double>> d;
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            d.push_back(g.dijkstra(v));
        for (int u = 0; u < 12; ++u)
            for (int v = 0; v < 12; ++v) {
                CHECK(d[u][v] == doctest::Approx(d[v][u]));
                for (int w = 0; w < 12; ++w) {
                    if (std::isfinite(d[u][w]) && std::isfinite(d[w][v]))
                        CHECK(d[u][v] <= d[u][w] + d[w][v] + 1e-12);
                }
            }
    }
}

TEST_CASE("line graph of small fixtures") {
    auto lp3 = line_graph(p3());
    CHECK(lp3.line.vertex_count() == 2);
    CHECK(lp3.line.edge_count() == 1);

    auto lk3 = line_graph(k3());
    CHECK(isomorphic(lk3.line, k3()));

    auto lstar = line_graph(star(3));
    CHECK(isomorphic(lstar.line, k3()));
}

TEST_CASE("line graph identities on random graphs") {
    for (uint64_t seed = 0; seed < 6; ++seed) {
        Graph g = erdos_renyi(14, 0.3, seed);
        auto lg = line_graph(g);
        // |E(L)| = sum_v C(d_v, 2)
        long expected = 0;
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            long d = g.neighbor_count(v);
            expected += d * (d - 1) / 2;
        }
        CHECK(lg.line.edge_count() == expected);
        // degree identity and vertex-weight inheritance
        for (int e = 0; e < g.edge_count(); ++e) {
            int du = g.neighbor_count(g.edge_u(e));
            int dv = g.neighbor_count(g.edge_v(e));
            CHECK(lg.line.neighbor_count(e) == du + dv - 2);
            CHECK(lg.line.vertex_weight(e) == doctest::Approx(g.edge_weight(e)));
        }
        // adjacency is exactly "share one endpoint"
        for (int e1 = 0; e1 < g.edge_count(); ++e1)
            for (int e2 = e1 + 1; e2 < g.edge_count(); ++e2) {
                std::set<Vertex> ends{g.edge_u(e1), g.edge_v(e1), g.edge_u(e2), g.edge_v(e2)};
                CHECK(lg.line.has_edge(e1, e2) == (ends.size() == 3));
            }
    }
}

TEST_CASE("weighted line graph uses geometric means") {
    Graph g = make_graph(3, {{0, 1, 4.0}, {1, 2, 9.0}});
    auto lg = line_graph_weighted(g);
    REQUIRE(lg.line.edge_count() == 1);
    CHECK(lg.line.edge_weight(0) == doctest::Approx(6.0));

    Graph tri = make_graph(3, {{0, 1, 1.0}, {0, 2, 4.0}, {1, 2, 9.0}});
    auto lt = line_graph_weighted(tri);
    std::multiset<double> weights;
    for (int e = 0; e < lt.line.edge_count(); ++e)
        weights.insert(lt.line.edge_weight(e));
    std::multiset<double> expected{2.0, 3.0, 6.0};
    REQUIRE(weights.size() == 3);
    auto it = weights.begin();
    for (double w : expected)
        CHECK(*it++ == doctest::Approx(w));

    auto lu = line_graph_weighted(k3());
    for (int e = 0; e < lu.line.edge_count(); ++e)
        CHECK(lu.line.edge_weight(e) == doctest::Approx(1.0));
}

TEST_CASE("node measure") {
    Graph s = star(3);
    auto m = node_measure(s, 0, 0.0, 1.0);
    CHECK(m.total() == doctest::Approx(1.0));
    for (Vertex leaf = 1; leaf <= 3; ++leaf)
        CHECK(m.at(leaf) == doctest::Approx(1.0 / 3));
    CHECK(m.at(0) == 0);

    auto lazy = node_measure(s, 0, 0.5, 1.0);
    CHECK(lazy.at(0) == doctest::Approx(0.5));
    for (Vertex leaf = 1; leaf <= 3; ++leaf)
        CHECK(lazy.at(leaf) == doctest::Approx(1.0 / 6));

    Graph w = make_graph(3, {{0, 1, 1.0}, {0, 2, 2.0}});
    auto mw = node_measure(w, 0, 0.0, 1.0);
    double c = std::exp(-1.0) + std::exp(-2.0);
    CHECK(mw.at(1) == doctest::Approx(std::exp(-1.0) / c).epsilon(1e-9));
    CHECK(mw.at(2) == doctest::Approx(std::exp(-2.0) / c).epsilon(1e-9));
    CHECK(mw.at(1) == doctest::Approx(0.73105857863).epsilon(1e-6));

    Graph iso = make_graph(2, {});
    CHECK_THROWS_AS(node_measure(iso, 0, 0.5, 1.0), std::invalid_argument);
    auto point = node_measure(iso, 0, 1.0, 1.0);
    CHECK(point.at(0) == doctest::Approx(1.0));

    // p = 0 flattens any weights to the uniform measure
    auto flat = node_measure(w, 0, 0.0, 0.0);
    CHECK(flat.at(1) == doctest::Approx(0.5));
    CHECK(flat.at(2) == doctest::Approx(0.5));
}

TEST_CASE("node measure sums to one on random graphs for all alpha and p") {
    for (uint64_t seed = 0; seed < 4; ++seed) {
        Graph g = erdos_renyi(10, 0.5, seed, true);
        for (double alpha : {0.0, 0.3, 1.0})
            for (double p : {0.0, 0.5, 1.0, 2.0})
                for (Vertex v = 0; v < g.vertex_count(); ++v) {
                    if (g.neighbor_count(v) == 0 && alpha < 1)
                        continue;
                    auto m = node_measure(g, v, alpha, p);
                    CHECK(std::abs(m.total() - 1.0) < 1e-12);
                    for (const auto& [z, mass] : m.mass)
                        CHECK((z == v || g.has_edge(v, z)));
                }
    }
}

TEST_CASE("line node measure") {
    // Unit-weight base, p=1: uniform over line neighbors.
    Graph g = p3();
    auto lg = line_graph(g);
    auto m = line_node_measure(lg, 0, 0.0, 1.0);
    CHECK(m.at(1) == doctest::Approx(1.0));

    // K_3 with weights (1,4,9): masses at the weight-1 edge's vertex are
    // proportional to exp(-2), exp(-3).
    Graph tri = make_graph(3, {{0, 1, 1.0}, {0, 2, 4.0}, {1, 2, 9.0}});
    auto lt = line_graph_weighted(tri);
    int e1 = tri.find_edge(0, 1);
    auto mt = line_node_measure(lt, e1, 0.0, 1.0);
    double z = std::exp(-2.0) + std::exp(-3.0);
    CHECK(mt.at(tri.find_edge(0, 2)) == doctest::Approx(std::exp(-2.0) / z));
    CHECK(mt.at(tri.find_edge(1, 2)) == doctest::Approx(std::exp(-3.0) / z));

    // Consistency: equals node_measure on the sqrt-weighted line graph.
    for (uint64_t seed = 0; seed < 3; ++seed) {
        Graph r = erdos_renyi(9, 0.4, seed, true);
        auto lr = line_graph_weighted(r);
        for (Vertex e = 0; e < lr.line.vertex_count(); ++e) {
            if (lr.line.neighbor_count(e) == 0)
                continue;
            auto a = line_node_measure(lr, e, 0.2, 1.3);
            auto b = node_measure(lr.line, e, 0.2, 1.3);
            REQUIRE(a.mass.size() == b.mass.size());
            for (size_t i = 0; i < a.mass.size(); ++i) {
                CHECK(a.mass[i].first == b.mass[i].first);
                CHECK(a.mass[i].second == doctest::Approx(b.mass[i].second).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("triangle count") {
    CHECK(k3().triangle_count(0) == 1);
    Graph g4 = k4();
    for (int e = 0; e < g4.edge_count(); ++e)
        CHECK(g4.triangle_count(e) == 2);
    Graph tree = p4();
    for (int e = 0; e < tree.edge_count(); ++e)
        CHECK(tree.triangle_count(e) == 0);
}

TEST_CASE("triangle count agrees with brute-force 3-subset scan") {
    for (uint64_t seed = 0; seed < 4; ++seed) {
        Graph g = erdos_renyi(11, 0.4, seed);
        for (int e = 0; e < g.edge_count(); ++e) {
            Vertex u = g.edge_u(e), v = g.edge_v(e);
            int brute = 0;
            for (Vertex z = 0; z < g.vertex_count(); ++z)
                if (z != u && z != v && g.has_edge(u, z) && g.has_edge(v, z))
                    ++brute;
            CHECK(g.triangle_count(e) == brute);
        }
    }
}

TEST_CASE("quadrangle enumeration") {
    Graph cyc = c4();
    CHECK(cyc.quadrangles_through(0).size() == 1);
    Graph g4 = k4();
    for (int e = 0; e < g4.edge_count(); ++e)
        CHECK(g4.quadrangles_through(e).size() == 1);
    Graph tree = p4();
    for (int e = 0; e < tree.edge_count(); ++e)
        CHECK(tree.quadrangles_through(e).empty());

    // Every reported cycle is vertex-distinct and closed.
    for (uint64_t seed = 0; seed < 4; ++seed) {
        Graph g = erdos_renyi(10, 0.4, seed);
        for (int e = 0; e < g.edge_count(); ++e) {
            for (const auto& q : g.quadrangles_through(e)) {
                Vertex u = g.edge_u(e), v = g.edge_v(e);
                std::set<Vertex> vs{u, v, q.w, q.x};
                CHECK(vs.size() == 4);
                CHECK(g.has_edge(v, q.w));
                CHECK(g.has_edge(q.w, q.x));
                CHECK(g.has_edge(q.x, u));
            }
        }
    }
}

TEST_CASE("clustering coefficient") {
    Graph g4 = k4();
    for (Vertex v = 0; v < 4; ++v)
        CHECK(g4.clustering_coefficient(v) == doctest::Approx(1.0));
    CHECK(star(4).clustering_coefficient(0) == 0.0);
    Graph cyc = c5();
    for (Vertex v = 0; v < 5; ++v)
        CHECK(cyc.clustering_coefficient(v) == 0.0);
    CHECK(p3().clustering_coefficient(0) == 0.0); // degree 1 convention
}

TEST_CASE("components") {
    Graph g = make_graph(5, {{0, 1}, {1, 2}, {3, 4}});
    int count = 0;
    auto comp = g.components(&count);
    CHECK(count == 2);
    CHECK(comp[0] == comp[2]);
    CHECK(comp[3] == comp[4]);
    CHECK(comp[0] != comp[3]);
}
