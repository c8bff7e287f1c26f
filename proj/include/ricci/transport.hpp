#pragma once

#include <stdexcept>
#include <vector>

#include "ricci/graph.hpp"

namespace ricci {

// Discrete mass transport instance between two probability measures whose
// supports are indexed 0..ns-1 and 0..nd-1. cost[i][j] holds the pairwise
// (metric) distance between supply point i and demand point j.
struct TransportProblem {
    std::vector<double> supply;
    std::vector<double> demand;
    std::vector<std::vector<double>> cost;

    static TransportProblem between(const Graph& g, const NeighborhoodMeasure& mu,
                                    const NeighborhoodMeasure& nu);
};

struct TransportResult {
    double cost = 0;
    // (supply index, demand index, mass) for strictly positive entries.
    std::vector<std::tuple<int, int, double>> plan;
    // Dual potentials certifying optimality:
    //   cost(i,j) + potential_supply[i] - potential_demand[j] >= 0, and
    //   Σ_j potential_demand[j] d_j - Σ_i potential_supply[i] s_i = cost.
    std::vector<double> potential_supply;
    std::vector<double> potential_demand;
};

// Exact Wasserstein-1 distance (optimal transport cost) by successive
// shortest augmenting paths on the dense bipartite support.
TransportResult w1_exact(const TransportProblem& p);

struct SinkhornParams {
    double reg = 0;        // <= 0 selects 0.1 * median cost entry
    int max_iter = 10000;
    double tol = 1e-6;
};

struct SinkhornError : std::runtime_error {
    int iterations;
    explicit SinkhornError(int iters)
        : std::runtime_error("sinkhorn: no convergence after " + std::to_string(iters) +
                             " iterations"),
          iterations(iters) {}
};

// Entropically regularized estimate. The returned value is the cost of the
// plan after rounding to the feasibility polytope, so it always upper-bounds
// the exact optimum.
double w1_sinkhorn(const TransportProblem& p, const SinkhornParams& params = {});

} // namespace ricci
