#include "ricci/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace ricci {

namespace {

double entropy_term(double p) { return p > 0 ? -p * std::log2(p) : 0.0; }

// -(w/n) log2(w/n), the per-cell entropy contribution.
double h(long w, long n) {
    return w > 0 ? entropy_term(static_cast<double>(w) / static_cast<double>(n)) : 0.0;
}

} // namespace

double nmi_classic(std::span<const int> a, std::span<const int> b) {
    if (a.empty() || a.size() != b.size())
        throw std::invalid_argument("nmi: labelings must be nonempty and equal-sized");
    int ka = *std::max_element(a.begin(), a.end()) + 1;
    int kb = *std::max_element(b.begin(), b.end()) + 1;
    for (int x : a)
        if (x < 0)
            throw std::invalid_argument("nmi: negative label");
    for (int x : b)
        if (x < 0)
            throw std::invalid_argument("nmi: negative label");
    const double n = static_cast<double>(a.size());
    std::vector<std::vector<long>> joint(static_cast<size_t>(ka),
                                         std::vector<long>(static_cast<size_t>(kb), 0));
    std::vector<long> ca(static_cast<size_t>(ka), 0), cb(static_cast<size_t>(kb), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        ++joint[static_cast<size_t>(a[i])][static_cast<size_t>(b[i])];
        ++ca[static_cast<size_t>(a[i])];
        ++cb[static_cast<size_t>(b[i])];
    }
    double ha = 0, hb = 0, info = 0;
    for (long c : ca)
        ha += entropy_term(c / n);
    for (long c : cb)
        hb += entropy_term(c / n);
    for (int i = 0; i < ka; ++i)
        for (int j = 0; j < kb; ++j) {
            long c = joint[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (c == 0)
                continue;
            double pij = c / n;
            info += pij * std::log2(pij / ((ca[static_cast<size_t>(i)] / n) *
                                           (cb[static_cast<size_t>(j)] / n)));
        }
    if (ha == 0 && hb == 0)
        return 1.0; // both constant: perfect match
    return info / ((ha + hb) / 2);
}

BinaryMembership BinaryMembership::from_members(int n,
                                                std::span<const std::vector<int>> members,
                                                int k) {
    BinaryMembership bm;
    bm.n = n;
    bm.communities.assign(static_cast<size_t>(k), {});
    for (int v = 0; v < n; ++v)
        for (int c : members[static_cast<size_t>(v)])
            bm.communities[static_cast<size_t>(c)].push_back(v);
    return bm;
}

namespace {

// H(Z_l | Y) = min_h H(Z_l | Y_h) over pairs satisfying the
// positive-correlation condition h(a)+h(d) >= h(b)+h(c); when no pair
// qualifies, H(Z_l | Y) = H(Z_l).
double conditional_entropy_community(const std::vector<int>& z,
                                     const std::vector<std::vector<int>>& others,
                                     const std::vector<char>& in_z, long n) {
    long nz = static_cast<long>(z.size());
    double hz = h(nz, n) + h(n - nz, n);
    double best = std::numeric_limits<double>::max();
    for (const auto& y : others) {
        long ny = static_cast<long>(y.size());
        long d = 0;
        for (int v : y)
            if (in_z[static_cast<size_t>(v)])
                ++d;
        long c = nz - d;     // in Z only
        long b = ny - d;     // in Y only
        long a = n - b - c - d;
        if (h(a, n) + h(d, n) < h(b, n) + h(c, n))
            continue;
        double joint = h(a, n) + h(b, n) + h(c, n) + h(d, n);
        double hy = h(ny, n) + h(n - ny, n);
        best = std::min(best, joint - hy);
    }
    return best == std::numeric_limits<double>::max() ? hz : best;
}

double normalized_conditional(const BinaryMembership& z, const BinaryMembership& y) {
    long n = z.n;
    std::vector<char> in_z(static_cast<size_t>(n), 0);
    double sum = 0;
    for (const auto& community : z.communities) {
        std::fill(in_z.begin(), in_z.end(), 0);
        for (int v : community)
            in_z[static_cast<size_t>(v)] = 1;
        long nz = static_cast<long>(community.size());
        double hz = h(nz, n) + h(n - nz, n);
        if (hz == 0)
            continue; // degenerate community contributes 0
        sum += conditional_entropy_community(community, y.communities, in_z, n) / hz;
    }
    return sum / static_cast<double>(z.communities.size());
}

} // namespace

double nmi_extended(const BinaryMembership& a, const BinaryMembership& b) {
    if (a.n != b.n || a.n == 0)
        throw std::invalid_argument("nmi_extended: vertex sets must match and be nonempty");
    if (a.communities.empty() || b.communities.empty())
        throw std::invalid_argument("nmi_extended: each side needs at least one community");
    return 1.0 - (normalized_conditional(a, b) + normalized_conditional(b, a)) / 2.0;
}

std::vector<int> binary_members(std::span<const double> y, int k) {
    if (static_cast<int>(y.size()) != k)
        throw std::invalid_argument("binary_members: affiliation length mismatch");
    double norm = 0;
    for (double x : y)
        norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0)
        throw std::invalid_argument("binary_members: zero affiliation vector");
    std::vector<int> members;
    for (int l = 0; l < k; ++l)
        if (y[static_cast<size_t>(l)] / norm > 0.8 / static_cast<double>(k))
            members.push_back(l);
    return members;
}

BinaryMembership to_binary(std::span<const std::vector<double>> y, int k) {
    BinaryMembership bm;
    bm.n = static_cast<int>(y.size());
    bm.communities.assign(static_cast<size_t>(k), {});
    for (int v = 0; v < bm.n; ++v)
        for (int l : binary_members(y[static_cast<size_t>(v)], k))
            bm.communities[static_cast<size_t>(l)].push_back(v);
    return bm;
}

} // namespace ricci
