#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ricci/flow.hpp"
#include "ricci/graph.hpp"

namespace ricci {

struct PlantedParams {
    int n = 0;
    int k = 2;
    double p_in = 0;
    double p_out = 0;
    int n_mixed = 0; // MMB only
    uint64_t seed = 0;
};

struct GroundTruth {
    std::vector<std::vector<double>> membership; // rows sum to 1
    int k = 0;

    // Argmax affiliation, ties resolved toward the lowest community id.
    Labeling hard_labels() const;
};

// Planted SBM with near-equal blocks and unit edge weights.
std::pair<Graph, GroundTruth> gen_sbm(const PlantedParams& params);

// Planted mixed-membership block model; the first n_mixed vertices carry
// uniform affiliation 1/k, edge probabilities follow E[A] = X B X^T.
std::pair<Graph, GroundTruth> gen_mmb(const PlantedParams& params);

// Random geometric graph on the unit cube; edge iff Euclidean distance
// < r, optionally weighted by that distance.
Graph gen_rgg(int n, int dim, double r, uint64_t seed, bool distance_weights = false);

// Edge roles in the deterministic family G_{a,b}.
enum class GabEdgeType { Bridge = 1, BridgeInternal = 2, Internal = 3 };

struct GabGraph {
    Graph graph;
    GroundTruth truth;
    std::vector<GabEdgeType> edge_type; // per edge id
};

// b copies of K_{a+1} sharing their distinguished vertices in a central K_b.
GabGraph gen_g_ab(int a, int b);

// b stars with a+1 vertices joined through one common center (the dual
// family: line_graph(L_{a,b}) is isomorphic to G_{a,b}).
std::pair<Graph, GroundTruth> gen_l_ab(int a, int b);

// Detectability filter: ground-truth modularity above 0.4.
bool admissible(const Graph& g, const GroundTruth& truth);

} // namespace ricci
