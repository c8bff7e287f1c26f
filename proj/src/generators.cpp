#include "ricci/generators.hpp"

#include <cmath>
#include <stdexcept>

#include "ricci/rng.hpp"

namespace ricci {

Labeling GroundTruth::hard_labels() const {
    Labeling l;
    l.k = k;
    l.label.reserve(membership.size());
    for (const auto& row : membership) {
        int best = 0;
        for (int c = 1; c < static_cast<int>(row.size()); ++c)
            if (row[static_cast<size_t>(c)] > row[static_cast<size_t>(best)])
                best = c;
        l.label.push_back(best);
    }
    return l;
}

namespace {

// Near-equal contiguous blocks; the first n % k blocks take the extra
// vertex.
std::vector<int> block_of(int n, int k) {
    std::vector<int> sigma(static_cast<size_t>(n));
    int base = n / k, rem = n % k;
    int v = 0;
    for (int b = 0; b < k; ++b) {
        int size = base + (b < rem ? 1 : 0);
        for (int i = 0; i < size; ++i)
            sigma[static_cast<size_t>(v++)] = b;
    }
    return sigma;
}

void check_params(const PlantedParams& p) {
    if (p.n < 0 || p.k < 1)
        throw std::invalid_argument("generator: need n >= 0 and k >= 1");
    for (double q : {p.p_in, p.p_out})
        if (q < 0 || q > 1)
            throw std::invalid_argument("generator: probabilities must lie in [0,1]");
}

} // namespace

std::pair<Graph, GroundTruth> gen_sbm(const PlantedParams& params) {
    check_params(params);
    auto sigma = block_of(params.n, params.k);
    std::vector<EdgeSpec> edges;
    for (int i = 0; i < params.n; ++i)
        for (int j = i + 1; j < params.n; ++j) {
            double p = sigma[static_cast<size_t>(i)] == sigma[static_cast<size_t>(j)]
                           ? params.p_in
                           : params.p_out;
            if (rng::u01(rng::mix(params.seed, static_cast<uint64_t>(i),
                                  static_cast<uint64_t>(j))) < p)
                edges.push_back({i, j, 1.0});
        }
    GroundTruth truth;
    truth.k = params.k;
    truth.membership.assign(static_cast<size_t>(params.n),
                            std::vector<double>(static_cast<size_t>(params.k), 0.0));
    for (int i = 0; i < params.n; ++i)
        truth.membership[static_cast<size_t>(i)][static_cast<size_t>(sigma[static_cast<size_t>(i)])] = 1.0;
    return {Graph(params.n, edges), std::move(truth)};
}

std::pair<Graph, GroundTruth> gen_mmb(const PlantedParams& params) {
    check_params(params);
    if (params.n_mixed < 0 || params.n_mixed > params.n)
        throw std::invalid_argument("generator: n_mixed out of range");
    const int n = params.n, k = params.k;
    GroundTruth truth;
    truth.k = k;
    truth.membership.assign(static_cast<size_t>(n),
                            std::vector<double>(static_cast<size_t>(k), 0.0));
    for (int i = 0; i < params.n_mixed; ++i)
        for (int c = 0; c < k; ++c)
            truth.membership[static_cast<size_t>(i)][static_cast<size_t>(c)] =
                1.0 / static_cast<double>(k);
    auto pure_sigma = block_of(n - params.n_mixed, k);
    for (int i = params.n_mixed; i < n; ++i)
        truth.membership[static_cast<size_t>(i)]
                        [static_cast<size_t>(pure_sigma[static_cast<size_t>(i - params.n_mixed)])] = 1.0;

    std::vector<EdgeSpec> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double overlap = 0;
            for (int c = 0; c < k; ++c)
                overlap += truth.membership[static_cast<size_t>(i)][static_cast<size_t>(c)] *
                           truth.membership[static_cast<size_t>(j)][static_cast<size_t>(c)];
            double p = params.p_out + (params.p_in - params.p_out) * overlap;
            if (rng::u01(rng::mix(params.seed, static_cast<uint64_t>(i),
                                  static_cast<uint64_t>(j))) < p)
                edges.push_back({i, j, 1.0});
        }
    return {Graph(n, edges), std::move(truth)};
}

Graph gen_rgg(int n, int dim, double r, uint64_t seed, bool distance_weights) {
    if (dim < 1)
        throw std::invalid_argument("gen_rgg: dim must be >= 1");
    if (!(r > 0) || r >= 1)
        throw std::invalid_argument("gen_rgg: radius must lie in (0,1)");
    std::vector<std::vector<double>> pos(static_cast<size_t>(n),
                                         std::vector<double>(static_cast<size_t>(dim)));
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < dim; ++c)
            pos[static_cast<size_t>(i)][static_cast<size_t>(c)] =
                rng::u01(rng::mix(seed, static_cast<uint64_t>(i), 0x7a9e0000ull + c));
    std::vector<EdgeSpec> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double d2 = 0;
            for (int c = 0; c < dim; ++c) {
                double diff = pos[static_cast<size_t>(i)][static_cast<size_t>(c)] -
                              pos[static_cast<size_t>(j)][static_cast<size_t>(c)];
                d2 += diff * diff;
            }
            double d = std::sqrt(d2);
            if (d < r)
                edges.push_back({i, j, distance_weights ? std::max(d, 1e-12) : 1.0});
        }
    return Graph(n, edges);
}

GabGraph gen_g_ab(int a, int b) {
    if (b < 2 || a < b)
        throw std::invalid_argument("gen_g_ab: need a >= b >= 2");
    const int n = b + a * b;
    std::vector<EdgeSpec> edges;
    std::vector<GabEdgeType> types;
    for (int i = 0; i < b; ++i)
        for (int j = i + 1; j < b; ++j) {
            edges.push_back({i, j, 1.0});
            types.push_back(GabEdgeType::Bridge);
        }
    auto internal = [&](int block, int idx) { return b + block * a + idx; };
    for (int block = 0; block < b; ++block) {
        for (int i = 0; i < a; ++i) {
            edges.push_back({block, internal(block, i), 1.0});
            types.push_back(GabEdgeType::BridgeInternal);
        }
        for (int i = 0; i < a; ++i)
            for (int j = i + 1; j < a; ++j) {
                edges.push_back({internal(block, i), internal(block, j), 1.0});
                types.push_back(GabEdgeType::Internal);
            }
    }
    GabGraph out;
    out.graph = Graph(n, edges);
    out.truth.k = b;
    out.truth.membership.assign(static_cast<size_t>(n),
                                std::vector<double>(static_cast<size_t>(b), 0.0));
    for (int i = 0; i < b; ++i)
        out.truth.membership[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1.0;
    for (int block = 0; block < b; ++block)
        for (int i = 0; i < a; ++i)
            out.truth.membership[static_cast<size_t>(internal(block, i))]
                                [static_cast<size_t>(block)] = 1.0;
    // Edge ids follow construction order because all endpoints are added
    // in sorted pairs; map types through the graph's ids to stay safe.
    out.edge_type.assign(edges.size(), GabEdgeType::Internal);
    for (size_t i = 0; i < edges.size(); ++i) {
        int id = out.graph.find_edge(edges[i].u, edges[i].v);
        out.edge_type[static_cast<size_t>(id)] = types[i];
    }
    return out;
}

std::pair<Graph, GroundTruth> gen_l_ab(int a, int b) {
    if (b < 2 || a < b)
        throw std::invalid_argument("gen_l_ab: need a >= b >= 2");
    const int n = 1 + b * (a + 1);
    std::vector<EdgeSpec> edges;
    GroundTruth truth;
    truth.k = b;
    truth.membership.assign(static_cast<size_t>(n),
                            std::vector<double>(static_cast<size_t>(b), 0.0));
    for (int c = 0; c < b; ++c)
        truth.membership[0][static_cast<size_t>(c)] = 1.0 / static_cast<double>(b);
    for (int block = 0; block < b; ++block) {
        int hub = 1 + block * (a + 1);
        edges.push_back({0, hub, 1.0});
        truth.membership[static_cast<size_t>(hub)][static_cast<size_t>(block)] = 1.0;
        for (int i = 1; i <= a; ++i) {
            edges.push_back({hub, hub + i, 1.0});
            truth.membership[static_cast<size_t>(hub + i)][static_cast<size_t>(block)] = 1.0;
        }
    }
    return {Graph(n, edges), std::move(truth)};
}

bool admissible(const Graph& g, const GroundTruth& truth) {
    return modularity(g, truth.hard_labels()) > 0.4;
}

} // namespace ricci
