#include "ricci/transport.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ricci {

namespace {

constexpr double kMassEps = 1e-15;

void validate(const TransportProblem& p) {
    double ts = std::accumulate(p.supply.begin(), p.supply.end(), 0.0);
    double td = std::accumulate(p.demand.begin(), p.demand.end(), 0.0);
    if (std::abs(ts - 1.0) > 1e-12 || std::abs(td - 1.0) > 1e-12)
        throw std::invalid_argument("transport: masses must each sum to 1");
    if (p.cost.size() != p.supply.size())
        throw std::invalid_argument("transport: cost row count mismatch");
    for (const auto& row : p.cost) {
        if (row.size() != p.demand.size())
            throw std::invalid_argument("transport: cost column count mismatch");
        for (double c : row)
            if (!(c >= 0) || !std::isfinite(c))
                throw std::invalid_argument(
                    "transport: cost entries must be finite and nonnegative "
                    "(disconnected supports?)");
    }
}

} // namespace

TransportProblem TransportProblem::between(const Graph& g, const NeighborhoodMeasure& mu,
                                           const NeighborhoodMeasure& nu) {
    TransportProblem p;
    p.supply.reserve(mu.mass.size());
    p.demand.reserve(nu.mass.size());
    std::vector<Vertex> sv, dv;
    for (const auto& [v, m] : mu.mass) {
        sv.push_back(v);
        p.supply.push_back(m);
    }
    for (const auto& [v, m] : nu.mass) {
        dv.push_back(v);
        p.demand.push_back(m);
    }
    p.cost.assign(sv.size(), std::vector<double>(dv.size(), 0.0));
    for (size_t i = 0; i < sv.size(); ++i) {
        auto dist = g.dijkstra(sv[i]);
        for (size_t j = 0; j < dv.size(); ++j)
            p.cost[i][j] = dist[dv[j]];
    }
    return p;
}

TransportResult w1_exact(const TransportProblem& p) {
    validate(p);
    const int ns = static_cast<int>(p.supply.size());
    const int nd = static_cast<int>(p.demand.size());
    std::vector<double> rem_s = p.supply;
    std::vector<double> rem_d = p.demand;
    std::vector<std::vector<double>> flow(ns, std::vector<double>(nd, 0.0));
    std::vector<double> pi_s(ns, 0.0), pi_d(nd, 0.0);

    double remaining = std::accumulate(rem_s.begin(), rem_s.end(), 0.0);
    const int max_augment = 64 * (ns + nd) + 64;
    int augments = 0;

    // Node ids: supplies 0..ns-1, demands ns..ns+nd-1.
    const int nv = ns + nd;
    std::vector<double> dist(nv);
    std::vector<int> parent(nv);
    std::vector<char> done(nv);

    while (remaining > 1e-12) {
        if (++augments > max_augment)
            throw std::runtime_error("transport: augmentation limit exceeded");
        std::fill(dist.begin(), dist.end(), kInfDistance);
        std::fill(parent.begin(), parent.end(), -1);
        std::fill(done.begin(), done.end(), 0);
        for (int i = 0; i < ns; ++i)
            if (rem_s[i] > kMassEps)
                dist[i] = 0;

        int sink = -1;
        // Dense Dijkstra over reduced costs.
        for (int round = 0; round < nv; ++round) {
            int best = -1;
            double bd = kInfDistance;
            for (int v = 0; v < nv; ++v)
                if (!done[v] && dist[v] < bd) {
                    bd = dist[v];
                    best = v;
                }
            if (best < 0)
                break;
            done[best] = 1;
            if (best >= ns && rem_d[best - ns] > kMassEps) {
                sink = best - ns;
                break;
            }
            if (best < ns) {
                int i = best;
                for (int j = 0; j < nd; ++j) {
                    double rc = p.cost[i][j] + pi_s[i] - pi_d[j];
                    if (rc < 0)
                        rc = 0; // numeric slack on tight arcs
                    if (dist[i] + rc < dist[ns + j]) {
                        dist[ns + j] = dist[i] + rc;
                        parent[ns + j] = i;
                    }
                }
            } else {
                int j = best - ns;
                for (int i = 0; i < ns; ++i) {
                    if (flow[i][j] <= kMassEps)
                        continue;
                    double rc = -(p.cost[i][j] + pi_s[i] - pi_d[j]);
                    if (rc < 0)
                        rc = 0;
                    if (dist[ns + j] + rc < dist[i]) {
                        dist[i] = dist[ns + j] + rc;
                        parent[i] = ns + j;
                    }
                }
            }
        }
        if (sink < 0)
            throw std::runtime_error("transport: no augmenting path found");

        double limit = dist[ns + sink];
        for (int v = 0; v < nv; ++v) {
            double d = std::min(dist[v], limit);
            if (v < ns)
                pi_s[v] += d;
            else
                pi_d[v - ns] += d;
        }

        // Bottleneck along the augmenting path.
        double delta = rem_d[sink];
        int src = -1;
        for (int v = ns + sink; parent[v] >= 0; v = parent[v]) {
            int u = parent[v];
            if (v >= ns)
                src = u; // last supply node seen is the path's origin
            else
                delta = std::min(delta, flow[v][u - ns]); // backward arc
        }
        delta = std::min(delta, rem_s[src]);

        for (int v = ns + sink; parent[v] >= 0; v = parent[v]) {
            int u = parent[v];
            if (v >= ns)
                flow[u][v - ns] += delta;
            else
                flow[v][u - ns] -= delta;
        }
        rem_s[src] -= delta;
        rem_d[sink] -= delta;
        remaining -= delta;
    }

    TransportResult r;
    r.potential_supply = std::move(pi_s);
    r.potential_demand = std::move(pi_d);
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < nd; ++j)
            if (flow[i][j] > kMassEps) {
                r.cost += flow[i][j] * p.cost[i][j];
                r.plan.emplace_back(i, j, flow[i][j]);
            }
    return r;
}

namespace {

double log_sum_exp(const std::vector<double>& terms) {
    double m = -kInfDistance;
    for (double t : terms)
        m = std::max(m, t);
    if (!std::isfinite(m))
        return m;
    double s = 0;
    for (double t : terms)
        s += std::exp(t - m);
    return m + std::log(s);
}

} // namespace

double w1_sinkhorn(const TransportProblem& p, const SinkhornParams& params) {
    validate(p);
    const int ns = static_cast<int>(p.supply.size());
    const int nd = static_cast<int>(p.demand.size());

    double reg = params.reg;
    if (reg <= 0) {
        std::vector<double> entries;
        entries.reserve(static_cast<size_t>(ns) * nd);
        for (const auto& row : p.cost)
            entries.insert(entries.end(), row.begin(), row.end());
        std::nth_element(entries.begin(), entries.begin() + entries.size() / 2, entries.end());
        reg = 0.1 * entries[entries.size() / 2];
        if (reg <= 0)
            reg = 1e-9;
    }

    std::vector<double> f(ns, 0.0), g(nd, 0.0), buf;
    std::vector<std::vector<double>> plan(ns, std::vector<double>(nd, 0.0));
    bool converged = false;
    int iter = 0;
    for (; iter < params.max_iter; ++iter) {
        for (int i = 0; i < ns; ++i) {
            buf.assign(nd, 0.0);
            for (int j = 0; j < nd; ++j)
                buf[j] = (g[j] - p.cost[i][j]) / reg;
            f[i] = reg * (std::log(p.supply[i]) - log_sum_exp(buf));
        }
        for (int j = 0; j < nd; ++j) {
            buf.assign(ns, 0.0);
            for (int i = 0; i < ns; ++i)
                buf[i] = (f[i] - p.cost[i][j]) / reg;
            g[j] = reg * (std::log(p.demand[j]) - log_sum_exp(buf));
        }
        double err = 0;
        for (int i = 0; i < ns; ++i) {
            double row = 0;
            for (int j = 0; j < nd; ++j) {
                plan[i][j] = std::exp((f[i] + g[j] - p.cost[i][j]) / reg);
                row += plan[i][j];
            }
            err += std::abs(row - p.supply[i]);
        }
        for (int j = 0; j < nd; ++j) {
            double col = 0;
            for (int i = 0; i < ns; ++i)
                col += plan[i][j];
            err += std::abs(col - p.demand[j]);
        }
        if (err <= params.tol) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw SinkhornError(iter);

    // Round to a feasible plan: scale rows then columns down to their
    // marginals and spread the residual mass proportionally.
    for (int i = 0; i < ns; ++i) {
        double row = std::accumulate(plan[i].begin(), plan[i].end(), 0.0);
        double scale = row > 0 ? std::min(1.0, p.supply[i] / row) : 0.0;
        for (double& x : plan[i])
            x *= scale;
    }
    for (int j = 0; j < nd; ++j) {
        double col = 0;
        for (int i = 0; i < ns; ++i)
            col += plan[i][j];
        double scale = col > 0 ? std::min(1.0, p.demand[j] / col) : 0.0;
        for (int i = 0; i < ns; ++i)
            plan[i][j] *= scale;
    }
    std::vector<double> row_def(ns, 0.0), col_def(nd, 0.0);
    double total_def = 0;
    for (int i = 0; i < ns; ++i) {
        double row = std::accumulate(plan[i].begin(), plan[i].end(), 0.0);
        row_def[i] = p.supply[i] - row;
        total_def += row_def[i];
    }
    for (int j = 0; j < nd; ++j) {
        double col = 0;
        for (int i = 0; i < ns; ++i)
            col += plan[i][j];
        col_def[j] = p.demand[j] - col;
    }
    if (total_def > 0) {
        for (int i = 0; i < ns; ++i)
            for (int j = 0; j < nd; ++j)
                plan[i][j] += row_def[i] * col_def[j] / total_def;
    }

    double cost = 0;
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < nd; ++j)
            cost += plan[i][j] * p.cost[i][j];
    return cost;
}

} // namespace ricci
