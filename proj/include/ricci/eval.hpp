#pragma once

#include <span>
#include <vector>

namespace ricci {

// Classical NMI with arithmetic-mean normalization, log base 2. Two
// constant labelings compare as 1; a single constant side gives 0.
double nmi_classic(std::span<const int> a, std::span<const int> b);

// Overlapping community family as node-id lists per community.
struct BinaryMembership {
    int n = 0;
    std::vector<std::vector<int>> communities;

    static BinaryMembership from_members(int n, std::span<const std::vector<int>> members,
                                         int k);
};

// Extended (overlapping) NMI: 1 - [H(Z|Y) + H(Y|Z)]/2 with best-match
// normalized conditional entropies.
double nmi_extended(const BinaryMembership& a, const BinaryMembership& b);

// Membership from an affiliation vector: normalize by the 2-norm, then
// keep entries above 0.8/k. Throws on the zero vector.
std::vector<int> binary_members(std::span<const double> y, int k);

// Whole-matrix convenience wrapper around binary_members.
BinaryMembership to_binary(std::span<const std::vector<double>> y, int k);

} // namespace ricci
