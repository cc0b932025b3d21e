#include "ccs/cc1d.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "ccs/stable_sum.hpp"

namespace ccs {

namespace {

constexpr int kMaxLevel = 25;  // m_25 = 2^24 + 1, the node-count cap

// cos(pi * t / n) for integer 0 <= t <= 2n, exact at the axis crossings.
double cos_pi_ratio(std::int64_t t, std::int64_t n) {
    t %= 2 * n;
    if (t > n) t = 2 * n - t;  // cos(2 pi - x) = cos(x)
    if (t == 0) return 1.0;
    if (2 * t == n) return 0.0;
    if (t == n) return -1.0;
    return std::cos(M_PI * static_cast<double>(t) / static_cast<double>(n));
}

}  // namespace

NodeKey NodeKey::reduced(std::int64_t p, std::int64_t q) {
    const std::int64_t g = std::gcd(p, q);
    return NodeKey{p / g, q / g};
}

double NodeKey::coordinate() const {
    if (2 * num == den) return 0.5;
    if (2 * num < den)
        return 0.5 * (1.0 - std::cos(M_PI * static_cast<double>(num) / static_cast<double>(den)));
    return 1.0 - mirrored().coordinate();
}

std::int64_t level_size(int level) {
    if (level < 1) throw std::invalid_argument("level_size: level must be >= 1");
    if (level > kMaxLevel)
        throw std::invalid_argument("level_size: level " + std::to_string(level) +
                                    " exceeds the node cap m_l <= 2^24 + 1 (level <= 25)");
    return level == 1 ? 1 : (std::int64_t{1} << (level - 1)) + 1;
}

NodeKey node_key(int level, std::int64_t j) {
    const std::int64_t m = level_size(level);
    if (j < 1 || j > m) throw std::out_of_range("node_key: node index out of range");
    if (level == 1) return NodeKey{1, 2};
    return NodeKey::reduced(j - 1, m - 1);
}

Rule1D cc_rule(int level) {
    const std::int64_t m = level_size(level);
    Rule1D rule;
    rule.level = level;
    rule.keys.resize(static_cast<std::size_t>(m));
    rule.nodes.resize(m);
    rule.weights.resize(m);

    for (std::int64_t j = 1; j <= m; ++j) {
        rule.keys[static_cast<std::size_t>(j - 1)] = node_key(level, j);
        rule.nodes[j - 1] = rule.keys[static_cast<std::size_t>(j - 1)].coordinate();
    }

    if (level == 1) {
        rule.weights[0] = 1.0;
        return rule;
    }

    // Boundary weights, then interior weights for j <= (m+1)/2; the upper
    // half is mirrored so the rule is symmetric bit for bit.
    const double n = static_cast<double>(m - 1);
    rule.weights[0] = 1.0 / (2.0 * static_cast<double>(m) * static_cast<double>(m - 2));
    for (std::int64_t j = 2; 2 * j <= m + 1; ++j) {
        StableSum series;
        for (std::int64_t k = 1; 2 * k <= m - 3; ++k)
            series.add(cos_pi_ratio(2 * k * (j - 1), m - 1) /
                       static_cast<double>(4 * k * k - 1));
        const double sign = (j % 2 == 0) ? -1.0 : 1.0;  // cos((j-1) pi)
        rule.weights[j - 1] = (1.0 - sign / (n * n - 1.0) - 2.0 * series.value()) / n;
    }
    for (std::int64_t j = 1; 2 * j <= m; ++j) rule.weights[m - j] = rule.weights[j - 1];
    return rule;
}

Rule1D delta_rule(int level) {
    Rule1D fine = cc_rule(level);
    if (level == 1) return fine;

    // Subtract the coarse rule on matched keys.  Both node lists are sorted
    // by value, so a single merge pass finds every coarse node (nesting).
    const Rule1D coarse = cc_rule(level - 1);
    Eigen::Index ci = 0;
    for (Eigen::Index j = 0; j < fine.size(); ++j) {
        if (ci < coarse.size() && coarse.keys[static_cast<std::size_t>(ci)] ==
                                      fine.keys[static_cast<std::size_t>(j)]) {
            fine.weights[j] -= coarse.weights[ci];
            ++ci;
        }
    }
    if (ci != coarse.size())
        throw std::logic_error("delta_rule: coarse node missing from fine level");
    return fine;
}

double rule_norm(const Rule1D& rule) {
    StableSum s;
    for (Eigen::Index j = 0; j < rule.size(); ++j) s.add(std::abs(rule.weights[j]));
    return s.value();
}

}  // namespace ccs
