#pragma once

#include <Eigen/Core>
#include <compare>
#include <cstdint>
#include <functional>
#include <vector>

namespace ccs {

// Exact identity of a Clenshaw-Curtis node across levels.  The node with key
// p/q (reduced, 0 <= p <= q, gcd(p,q) = 1) sits at (1 - cos(pi p/q))/2 in
// [0,1].  Two keys compare equal iff they name the same real coordinate, so
// grid merging never depends on floating-point comparisons.
struct NodeKey {
    std::int64_t num = 0;
    std::int64_t den = 1;

    // Canonical (reduced) key for the fraction p/q.
    static NodeKey reduced(std::int64_t p, std::int64_t q);

    // (1 - cos(pi num/den))/2, symmetrized so that the coordinates of p/q
    // and (q-p)/q add to 1 exactly.
    double coordinate() const;

    NodeKey mirrored() const { return NodeKey{den - num, den}; }

    friend bool operator==(const NodeKey& a, const NodeKey& b) {
        return a.num == b.num && a.den == b.den;
    }
    // Order by represented value; keys are canonical so cross-multiplying
    // 64-bit integers is exact (num, den <= 2^24 + 1).
    friend std::strong_ordering operator<=>(const NodeKey& a, const NodeKey& b) {
        return a.num * b.den <=> b.num * a.den;
    }
};

// One level of a 1-D rule: U^l or the difference Delta^l, as signed weights
// on the level-l node set.  Entries are sorted by coordinate.
struct Rule1D {
    int level = 1;
    std::vector<NodeKey> keys;
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;

    Eigen::Index size() const { return weights.size(); }
};

// Number of nodes m_l: 1 for l = 1, else 2^(l-1) + 1.  Levels with more than
// 2^24 + 1 nodes are refused.
std::int64_t level_size(int level);

// Key of node j (1-based) of level l: 1/2 for l = 1, else (j-1)/(m_l - 1)
// in lowest terms.
NodeKey node_key(int level, std::int64_t j);

// Clenshaw-Curtis rule U^l on [0,1]: positive weights summing to 1.
Rule1D cc_rule(int level);

// Difference rule: Delta^1 = U^1, Delta^l = U^l - U^(l-1) for l >= 2,
// computed by matching node keys of the coarse rule into the fine node set.
Rule1D delta_rule(int level);

// Sum of absolute weights (compensated).
double rule_norm(const Rule1D& rule);

}  // namespace ccs

template <>
struct std::hash<ccs::NodeKey> {
    std::size_t operator()(const ccs::NodeKey& k) const noexcept {
        return std::hash<std::uint64_t>{}(
            (static_cast<std::uint64_t>(k.den) << 26) ^ static_cast<std::uint64_t>(k.num));
    }
};
