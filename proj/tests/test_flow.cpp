#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "helpers.hpp"
#include "ricci/flow.hpp"
#include "ricci/generators.hpp"

using namespace ricci;
using namespace ricci::test;

namespace {

FlowConfig orc_exact_config() {
    FlowConfig cfg = FlowConfig::with_curvature(CurvatureKind::OrcExact);
    return cfg;
}

// Per-type weights of a G_{a,b} flow state; also checks that all edges of
// one type share the same weight (the graphs are homogeneous).
std::map<GabEdgeType, double> weights_by_type(const GabGraph& gab,
                                              const std::vector<double>& w) {
    std::map<GabEdgeType, double> out;
    for (int e = 0; e < gab.graph.edge_count(); ++e) {
        auto t = gab.edge_type[static_cast<size_t>(e)];
        auto [it, inserted] = out.emplace(t, w[static_cast<size_t>(e)]);
        if (!inserted)
            REQUIRE(it->second == doctest::Approx(w[static_cast<size_t>(e)]).epsilon(1e-9));
    }
    return out;
}

} // namespace

TEST_CASE("flow step is a fixed point at zero curvature") {
    // P_3 end edges have ORC 0; a 2-path with equal weights keeps them.
    Graph g = make_graph(4, {{0, 1}, {2, 3}});
    auto [kappa, next] = flow_step(g, orc_exact_config());
    CHECK(kappa[0] == doctest::Approx(0.0));
    CHECK(next[0] == doctest::Approx(1.0));
    CHECK(next[1] == doctest::Approx(1.0));
}

TEST_CASE("renormalization keeps the weight total at |E|") {
    for (uint64_t seed = 0; seed < 4; ++seed) {
        auto [g, truth] = gen_sbm({30, 2, 0.4, 0.05, 0, seed});
        FlowConfig cfg = FlowConfig::with_curvature(CurvatureKind::OrcApprox);
        FlowState st = run_flow(g, cfg);
        for (size_t t = 1; t < st.weights.size(); ++t) {
            double total = 0;
            for (double w : st.weights[t])
                total += w;
            CHECK(total == doctest::Approx(static_cast<double>(g.edge_count())).epsilon(1e-9));
            for (double w : st.weights[t])
                CHECK(w > 0);
        }
    }
}

TEST_CASE("hand-checked two-edge renormalization") {
    // Two unit edges with curvatures 0.5 and -0.5 under nu=1 map to raw
    // weights 0.5 and 1.5; the total is already |E| = 2.
    // P_4's two end edges have ORC 0 and the middle edge ORC distinct;
    // instead craft the example directly through cut-off arithmetic below.
    std::vector<double> raw{0.5, 1.5};
    double scale = 2.0 / (raw[0] + raw[1]);
    CHECK(raw[0] * scale == doctest::Approx(0.5));
    CHECK(raw[1] * scale == doctest::Approx(1.5));
}

TEST_CASE("G_{3,2} first flow iteration matches the closed forms") {
    auto gab = gen_g_ab(3, 2);
    FlowConfig cfg = orc_exact_config();
    cfg.renormalize = false;
    auto [kappa, next] = flow_step(gab.graph, cfg);
    auto by_type = weights_by_type(gab, next);
    CHECK(by_type[GabEdgeType::Bridge] == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(by_type[GabEdgeType::BridgeInternal] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(by_type[GabEdgeType::Internal] == doctest::Approx(1.0 / 3).epsilon(1e-9));
}

TEST_CASE("G_{a,b} iteration-1 closed forms for several families") {
    for (auto [a, b] : std::vector<std::pair<int, int>>{{3, 2}, {5, 2}, {5, 3}, {4, 3}}) {
        auto gab = gen_g_ab(a, b);
        FlowConfig cfg = orc_exact_config();
        cfg.renormalize = false;
        auto [kappa, next] = flow_step(gab.graph, cfg);
        auto by_type = weights_by_type(gab, next);
        double w1 = (3.0 * a - 1) / (a + b - 1);
        double w2 = b == 2 ? 2.0 / (a + 1)
                           : (2.0 * a - 1) * (b - 1) / (static_cast<double>(a) * (a + b - 1));
        double w3 = 1.0 / a;
        CAPTURE(a);
        CAPTURE(b);
        CHECK(by_type[GabEdgeType::Bridge] == doctest::Approx(w1).epsilon(1e-9));
        CHECK(by_type[GabEdgeType::BridgeInternal] == doctest::Approx(w2).epsilon(1e-9));
        CHECK(by_type[GabEdgeType::Internal] == doctest::Approx(w3).epsilon(1e-9));
    }
}

TEST_CASE("G_{a,b} bridge weights dominate across the whole flow") {
    for (auto [a, b] : std::vector<std::pair<int, int>>{{3, 2}, {5, 3}}) {
        auto gab = gen_g_ab(a, b);
        FlowConfig cfg = orc_exact_config();
        cfg.renormalize = false;
        FlowState st = run_flow(gab.graph, cfg);
        double prev_w3 = kInfDistance;
        for (size_t t = 1; t < st.weights.size(); ++t) {
            auto by_type = weights_by_type(gab, st.weights[t]);
            CHECK(by_type[GabEdgeType::Bridge] > by_type[GabEdgeType::BridgeInternal]);
            CHECK(by_type[GabEdgeType::Bridge] > by_type[GabEdgeType::Internal]);
            CHECK(by_type[GabEdgeType::Internal] < prev_w3);
            prev_w3 = by_type[GabEdgeType::Internal];
        }
    }
}

TEST_CASE("orc cutoff grids") {
    auto near = [](const std::vector<double>& xs, std::vector<double> expect) {
        REQUIRE(xs.size() == expect.size());
        for (size_t i = 0; i < xs.size(); ++i)
            CHECK(xs[i] == doctest::Approx(expect[i]).epsilon(1e-9));
    };
    std::vector<double> w1{2.0, 1.0};
    auto c1 = cutoffs_orc(w1);
    CHECK(c1.size() == 41);
    CHECK(c1.front() == doctest::Approx(2.0));
    CHECK(c1.back() == doctest::Approx(1.0));

    std::vector<double> w2{1.0, 0.5};
    near(cutoffs_orc(w2), {1.0});

    std::vector<double> w3{1.26, 1.0};
    auto c3 = cutoffs_orc(w3);
    CHECK(c3.size() == 11);
    CHECK(c3.front() == doctest::Approx(1.26));
    CHECK(c3.back() == doctest::Approx(1.01));
}

TEST_CASE("frc cutoff grids") {
    std::vector<double> equal(10, 2.5);
    auto ce = cutoffs_frc(equal);
    REQUIRE(ce.size() == 1);
    CHECK(ce[0] == doctest::Approx(2.5));

    // {10, 9, 1 x 1000}: phase one = {10, 9}, phase two descends by 0.25
    // from 9 toward 1.1.
    std::vector<double> fat{10.0, 9.0};
    fat.insert(fat.end(), 1000, 1.0);
    auto cf = cutoffs_frc(fat);
    REQUIRE(cf.size() >= 3);
    CHECK(cf[0] == doctest::Approx(10.0));
    CHECK(cf[1] == doctest::Approx(9.0));
    CHECK(cf[2] == doctest::Approx(8.75));
    CHECK(cf.back() == doctest::Approx(1.25));
    for (size_t i = 1; i < cf.size(); ++i)
        CHECK(cf[i] < cf[i - 1] - 1e-12);
    for (double x : cf) {
        CHECK(x >= 1.1 * 1.0 - 1e-12);
        CHECK(x <= 10.0 + 1e-12);
    }
}

TEST_CASE("modularity on fixtures and against the definition oracle") {
    // two disjoint unit triangles
    Graph two_k3 = make_graph(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}});
    Labeling comp{{0, 0, 0, 1, 1, 1}, 2};
    CHECK(modularity(two_k3, comp) == doctest::Approx(0.5));
    Labeling single{{0, 0, 0, 0, 0, 0}, 1};
    CHECK(modularity(two_k3, single) == doctest::Approx(0.0));
    Labeling atoms{{0, 1, 2, 3, 4, 5}, 6};
    CHECK(modularity(two_k3, atoms) < 0);

    for (uint64_t seed = 0; seed < 10; ++seed) {
        Graph g = erdos_renyi(12, 0.4, seed, seed % 2 == 1);
        auto labels = std::vector<int>(12);
        for (int v = 0; v < 12; ++v)
            labels[static_cast<size_t>(v)] =
                static_cast<int>(rng::u01(rng::mix(seed, 100, static_cast<uint64_t>(v))) * 3);
        Labeling l{labels, 3};
        CHECK(modularity(g, l) == doctest::Approx(modularity_oracle(g, labels)).epsilon(1e-12));
    }
}

TEST_CASE("cut_and_select recovers a planted two-clique split") {
    // two K_5 cliques plus one bridge
    std::vector<EdgeSpec> edges;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) {
            edges.push_back({i, j, 1.0});
            edges.push_back({i + 5, j + 5, 1.0});
        }
    edges.push_back({0, 5, 1.0});
    Graph g = make_graph(10, edges);

    FlowConfig cfg = orc_exact_config();
    FlowState st = run_flow(g, cfg);
    // the bridge must end heaviest
    int bridge = g.find_edge(0, 5);
    for (int e = 0; e < g.edge_count(); ++e)
        if (e != bridge)
            CHECK(st.final_weights()[static_cast<size_t>(bridge)] >
                  st.final_weights()[static_cast<size_t>(e)]);

    auto cutoffs = cutoffs_orc(st.final_weights());
    auto sel = cut_and_select(g, st.final_weights(), cutoffs, cfg);
    REQUIRE(sel.labels.has_value());
    CHECK(sel.labels->k == 2);
    for (int v = 0; v < 5; ++v) {
        CHECK(sel.labels->label[static_cast<size_t>(v)] == sel.labels->label[0]);
        CHECK(sel.labels->label[static_cast<size_t>(v + 5)] == sel.labels->label[5]);
    }
    CHECK(sel.labels->label[0] != sel.labels->label[5]);
    // brute-force the best component labeling over the same cutoffs
    double best_q = 0;
    for (double x : cutoffs) {
        std::vector<EdgeSpec> kept;
        for (int e = 0; e < g.edge_count(); ++e)
            if (st.final_weights()[static_cast<size_t>(e)] <= x)
                kept.push_back({g.edge_u(e), g.edge_v(e), 1.0});
        Graph sub(10, kept);
        int count = 0;
        auto comp = sub.components(&count);
        best_q = std::max(best_q, modularity_oracle(g, comp));
    }
    CHECK(sel.q_best == doctest::Approx(best_q).epsilon(1e-12));

    // empty cutoff list yields nothing
    auto none = cut_and_select(g, st.final_weights(), {}, cfg);
    CHECK(!none.labels.has_value());
}

TEST_CASE("cluster_single finds no structure in a single clique") {
    std::vector<EdgeSpec> edges;
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j)
            edges.push_back({i, j, 1.0});
    Graph clique = make_graph(8, edges);
    CHECK(!cluster_single(clique, orc_exact_config()).has_value());
}

TEST_CASE("cluster_single separates planted SBM blocks") {
    int hits = 0;
    for (uint64_t seed = 0; seed < 3; ++seed) {
        auto [g, truth] = gen_sbm({60, 2, 0.35, 0.02, 0, seed});
        auto res = cluster_single(g, orc_exact_config());
        REQUIRE(res.has_value());
        auto hard = truth.hard_labels();
        if (nmi_classic(res->labels.label, hard.label) > 0.99)
            ++hits;
    }
    CHECK(hits >= 2);
}

TEST_CASE("erdos-renyi style SBM has no significant structure") {
    for (uint64_t seed = 0; seed < 3; ++seed) {
        auto [g, truth] = gen_sbm({50, 2, 0.15, 0.15, 0, seed});
        auto res = cluster_single(g, FlowConfig::with_curvature(CurvatureKind::OrcApprox));
        if (res)
            CHECK(res->q_best <= 0.3);
    }
}

TEST_CASE("mixed labeling arithmetic") {
    // 4 incident edges split (2,2) across two clusters
    std::vector<double> y{0.5, 0.5};
    CHECK(binary_members(y, 2) == std::vector<int>{0, 1});
    std::vector<double> pure{1.0, 0.0};
    CHECK(binary_members(pure, 2) == std::vector<int>{0});
}

TEST_CASE("cluster_mixed on L_{3,3} puts the center in every community") {
    auto [g, truth] = gen_l_ab(3, 3);
    FlowConfig cfg = orc_exact_config();
    auto res = cluster_mixed(g, cfg);
    REQUIRE(res.has_value());
    CHECK(res->labels.k == 3);
    CHECK(res->labels.members[0].size() == 3);
    for (Vertex v = 1; v < g.vertex_count(); ++v)
        CHECK(res->labels.members[static_cast<size_t>(v)].size() == 1);
    // leaves of one hub share their hub's community
    auto bin = BinaryMembership::from_members(g.vertex_count(), res->labels.members,
                                              res->labels.k);
    auto truth_bin = to_binary(truth.membership, truth.k);
    CHECK(nmi_extended(bin, truth_bin) == doctest::Approx(1.0));
}

TEST_CASE("cluster_mixed reduces to cluster_single on pure SBM graphs") {
    // Edge clustering and node clustering may legitimately disagree on a
    // couple of boundary vertices with near-tied affiliations, so the
    // partitions are compared up to a small NMI slack.
    int strict = 0, close = 0, total = 0;
    for (uint64_t seed = 0; seed < 10; ++seed) {
        auto [g, truth] = gen_sbm({100, 2, 0.15, 0.01, 0, seed});
        auto single = cluster_single(g, orc_exact_config());
        auto mixed = cluster_mixed(g, orc_exact_config());
        if (!single || !mixed)
            continue;
        ++total;
        // derive a hard partition from the mixed result
        std::vector<int> hard(static_cast<size_t>(g.vertex_count()), 0);
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            const auto& y = mixed->labels.y[static_cast<size_t>(v)];
            int best = 0;
            for (int c = 1; c < mixed->labels.k; ++c)
                if (y[static_cast<size_t>(c)] > y[static_cast<size_t>(best)])
                    best = c;
            hard[static_cast<size_t>(v)] = best;
        }
        double agreement = nmi_classic(hard, single->labels.label);
        if (agreement > 0.999)
            ++strict;
        if (agreement >= 0.9)
            ++close;
    }
    REQUIRE(total >= 8);
    CHECK(close * 10 >= total * 8); // at least 8/10 near-equivalent
    CHECK(strict * 2 >= total);     // and most of them exactly equivalent
}

TEST_CASE("flow on disconnected graphs labels per component") {
    Graph two = make_graph(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}});
    auto res = cluster_single(two, FlowConfig::with_curvature(CurvatureKind::Frc1));
    REQUIRE(res.has_value());
    CHECK(res->labels.k == 2);
    CHECK(res->labels.label[0] != res->labels.label[3]);
    CHECK(res->q_best == doctest::Approx(0.5));
}

TEST_CASE("T must be positive and weights must stay positive") {
    FlowConfig cfg = orc_exact_config();
    cfg.iterations = 0;
    CHECK_THROWS_AS(run_flow(k3(), cfg), std::invalid_argument);

    // Twin vertices with identical lazy measures give curvature exactly 1:
    // the update would zero the edge weight.
    Graph twins = make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
    FlowConfig cfg2 = orc_exact_config();
    cfg2.measure = MeasureMode::lazy_uniform(0.25);
    CHECK_THROWS_AS(run_flow(twins, cfg2), std::runtime_error);
}
