#include "ccs/smolyak.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ccs/stable_sum.hpp"

namespace ccs {

namespace {

void check_dim(int dim) {
    if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
}

void check_k(int k) {
    if (k < 0) throw std::invalid_argument("level parameter k must be >= 0");
}

void check_point_cap(int dim, int k, double point_cap) {
    const double predicted = predicted_point_count(dim, k);
    if (predicted > point_cap) {
        std::ostringstream msg;
        msg << "rule construction for dim=" << dim << " k=" << k
            << " refused: predicted point count " << predicted << " exceeds cap "
            << point_cap;
        throw CapExceeded(predicted, point_cap, msg.str());
    }
}

using WeightMap = std::map<KeyVector, double>;

// Adds w * (tensor product of the given 1-D rules) into the map.  The entry
// odometer runs the first dimension fastest, matching the multi-index
// enumeration order, so accumulation order is fixed.
void accumulate_tensor(WeightMap& acc, const std::vector<const Rule1D*>& rules, double w) {
    const int d = static_cast<int>(rules.size());
    std::vector<Eigen::Index> pos(static_cast<std::size_t>(d), 0);
    KeyVector keys(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) keys[static_cast<std::size_t>(j)] = rules[static_cast<std::size_t>(j)]->keys[0];
    for (;;) {
        double contrib = w;
        for (int j = 0; j < d; ++j)
            contrib *= rules[static_cast<std::size_t>(j)]->weights[pos[static_cast<std::size_t>(j)]];
        acc[keys] += contrib;

        int j = 0;
        while (j < d) {
            auto& r = *rules[static_cast<std::size_t>(j)];
            if (++pos[static_cast<std::size_t>(j)] < r.size()) {
                keys[static_cast<std::size_t>(j)] = r.keys[static_cast<std::size_t>(pos[static_cast<std::size_t>(j)])];
                break;
            }
            pos[static_cast<std::size_t>(j)] = 0;
            keys[static_cast<std::size_t>(j)] = r.keys[0];
            ++j;
        }
        if (j == d) return;
    }
}

CubatureRule rule_from_map(int dim, int q, const WeightMap& acc) {
    CubatureRule rule;
    rule.dim = dim;
    rule.q = q;
    const auto n = static_cast<Eigen::Index>(acc.size());
    rule.keys.reserve(acc.size());
    rule.nodes.resize(dim, n);
    rule.weights.resize(n);
    Eigen::Index i = 0;
    for (const auto& [keys, w] : acc) {
        rule.keys.push_back(keys);
        rule.nodes.col(i) = key_vector_coords(keys);
        rule.weights[i] = w;
        ++i;
    }
    return rule;
}

std::int64_t binomial_small(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::int64_t r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

WeightMap recursive_map(int dim, int k, const std::vector<Rule1D>& deltas) {
    WeightMap acc;
    if (dim == 1) {
        const Rule1D u = cc_rule(k + 1);
        for (Eigen::Index j = 0; j < u.size(); ++j)
            acc[{u.keys[static_cast<std::size_t>(j)]}] = u.weights[j];
        return acc;
    }
    for (int level = 1; level <= k + 1; ++level) {
        const WeightMap sub = recursive_map(dim - 1, k - level + 1, deltas);
        const Rule1D& delta = deltas[static_cast<std::size_t>(level - 1)];
        KeyVector keys;
        for (const auto& [sub_keys, sub_w] : sub) {
            keys = sub_keys;
            keys.push_back(delta.keys[0]);
            for (Eigen::Index j = 0; j < delta.size(); ++j) {
                keys.back() = delta.keys[static_cast<std::size_t>(j)];
                acc[keys] += sub_w * delta.weights[j];
            }
        }
    }
    return acc;
}

}  // namespace

int multi_index_order(const MultiIndex& idx) {
    return std::accumulate(idx.begin(), idx.end(), 0);
}

void for_each_multi_index(int dim, int min_component, int max_order,
                          const std::function<void(const MultiIndex&)>& fn) {
    check_dim(dim);
    if (static_cast<long long>(dim) * min_component > max_order) return;
    MultiIndex idx(static_cast<std::size_t>(dim), min_component);
    int order = dim * min_component;
    for (;;) {
        fn(idx);
        // Colex advance: bump the first component whose increment (with all
        // earlier components reset to the minimum) still fits the budget.
        int prefix = 0;  // sum of components below j, reset to min on bump
        int j = 0;
        for (; j < dim; ++j) {
            const int next_order = order - prefix + j * min_component + 1;
            if (next_order <= max_order) {
                idx[static_cast<std::size_t>(j)] += 1;
                std::fill(idx.begin(), idx.begin() + j, min_component);
                order = next_order;
                break;
            }
            prefix += idx[static_cast<std::size_t>(j)];
        }
        if (j == dim) return;
    }
}

Eigen::VectorXd key_vector_coords(const KeyVector& keys) {
    Eigen::VectorXd x(static_cast<Eigen::Index>(keys.size()));
    for (std::size_t j = 0; j < keys.size(); ++j)
        x[static_cast<Eigen::Index>(j)] = keys[j].coordinate();
    return x;
}

double predicted_point_count(int dim, int k) {
    check_dim(dim);
    check_k(k);
    double total = 0.0;
    for_each_multi_index(dim, 1, dim + k, [&](const MultiIndex& idx) {
        if (multi_index_order(idx) != dim + k) return;
        double prod = 1.0;
        for (int level : idx) prod *= static_cast<double>(level_size(level));
        total += prod;
    });
    return total;
}

CubatureRule smolyak_rule(int dim, int k, double point_cap) {
    check_dim(dim);
    check_k(k);
    check_point_cap(dim, k, point_cap);

    std::vector<Rule1D> deltas;
    deltas.reserve(static_cast<std::size_t>(k + 1));
    for (int level = 1; level <= k + 1; ++level) deltas.push_back(delta_rule(level));

    WeightMap acc;
    std::vector<const Rule1D*> term(static_cast<std::size_t>(dim));
    for_each_multi_index(dim, 1, dim + k, [&](const MultiIndex& idx) {
        for (int j = 0; j < dim; ++j)
            term[static_cast<std::size_t>(j)] =
                &deltas[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)] - 1)];
        accumulate_tensor(acc, term, 1.0);
    });
    return rule_from_map(dim, dim + k, acc);
}

CubatureRule smolyak_rule_combination(int dim, int k, double point_cap) {
    check_dim(dim);
    check_k(k);
    check_point_cap(dim, k, point_cap);

    std::vector<Rule1D> rules;
    rules.reserve(static_cast<std::size_t>(k + 1));
    for (int level = 1; level <= k + 1; ++level) rules.push_back(cc_rule(level));

    const int q = dim + k;
    WeightMap acc;
    std::vector<const Rule1D*> term(static_cast<std::size_t>(dim));
    for_each_multi_index(dim, 1, q, [&](const MultiIndex& idx) {
        const int order = multi_index_order(idx);
        if (order < q - dim + 1) return;
        const std::int64_t binom = binomial_small(dim - 1, q - order);
        const double coeff = ((q - order) % 2 == 0 ? 1.0 : -1.0) * static_cast<double>(binom);
        for (int j = 0; j < dim; ++j)
            term[static_cast<std::size_t>(j)] =
                &rules[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)] - 1)];
        accumulate_tensor(acc, term, coeff);
    });
    return rule_from_map(dim, q, acc);
}

CubatureRule smolyak_rule_recursive(int dim, int k, double point_cap) {
    check_dim(dim);
    check_k(k);
    check_point_cap(dim, k, point_cap);

    std::vector<Rule1D> deltas;
    deltas.reserve(static_cast<std::size_t>(k + 1));
    for (int level = 1; level <= k + 1; ++level) deltas.push_back(delta_rule(level));
    return rule_from_map(dim, dim + k, recursive_map(dim, k, deltas));
}

std::vector<KeyVector> sparse_grid_points(int dim, int k, double point_cap) {
    check_dim(dim);
    check_k(k);
    check_point_cap(dim, k, point_cap);

    std::vector<std::vector<NodeKey>> level_keys;  // level_keys[l-1] = keys of X^l
    for (int level = 1; level <= k + 1; ++level) {
        std::vector<NodeKey> keys;
        const std::int64_t m = level_size(level);
        keys.reserve(static_cast<std::size_t>(m));
        for (std::int64_t j = 1; j <= m; ++j) keys.push_back(node_key(level, j));
        level_keys.push_back(std::move(keys));
    }

    std::set<KeyVector> points;
    const int q = dim + k;
    KeyVector keys(static_cast<std::size_t>(dim));
    for_each_multi_index(dim, 1, q, [&](const MultiIndex& idx) {
        if (multi_index_order(idx) != q) return;
        std::vector<const std::vector<NodeKey>*> axes(static_cast<std::size_t>(dim));
        for (int j = 0; j < dim; ++j)
            axes[static_cast<std::size_t>(j)] =
                &level_keys[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)] - 1)];
        std::vector<std::size_t> pos(static_cast<std::size_t>(dim), 0);
        for (;;) {
            for (int j = 0; j < dim; ++j)
                keys[static_cast<std::size_t>(j)] =
                    (*axes[static_cast<std::size_t>(j)])[pos[static_cast<std::size_t>(j)]];
            points.insert(keys);
            int j = 0;
            while (j < dim) {
                if (++pos[static_cast<std::size_t>(j)] < axes[static_cast<std::size_t>(j)]->size()) break;
                pos[static_cast<std::size_t>(j)] = 0;
                ++j;
            }
            if (j == dim) break;
        }
    });
    return {points.begin(), points.end()};
}

std::int64_t node_count(int dim, int k, double point_cap) {
    return static_cast<std::int64_t>(sparse_grid_points(dim, k, point_cap).size());
}

double log_node_count_bound(int dim, int k) {
    check_dim(dim);
    if (k < 1) throw std::invalid_argument("node_count_bound requires k >= 1; N_d(0) = 1");
    const double dk = static_cast<double>(dim) / static_cast<double>(k);
    return std::log(2.0) + k * (std::log(2.0) + 1.0 + std::log1p(dk));
}

double node_count_bound(int dim, int k) { return std::exp(log_node_count_bound(dim, k)); }

double operator_norm(const CubatureRule& rule) {
    StableSum s;
    for (Eigen::Index i = 0; i < rule.size(); ++i) s.add(std::abs(rule.weights[i]));
    return s.value();
}

double operator_norm_unmerged(int dim, int k) {
    check_dim(dim);
    check_k(k);
    std::vector<double> delta_norms;
    delta_norms.reserve(static_cast<std::size_t>(k + 1));
    for (int level = 1; level <= k + 1; ++level)
        delta_norms.push_back(rule_norm(delta_rule(level)));
    StableSum total;
    for_each_multi_index(dim, 1, dim + k, [&](const MultiIndex& idx) {
        double prod = 1.0;
        for (int level : idx) prod *= delta_norms[static_cast<std::size_t>(level - 1)];
        total.add(prod);
    });
    return total.value();
}

double integrate(const CubatureRule& rule, const Integrand& f) {
    if (f.dim != rule.dim)
        throw std::invalid_argument("integrate: integrand dimension " + std::to_string(f.dim) +
                                    " does not match rule dimension " + std::to_string(rule.dim));
    StableSum s;
    for (Eigen::Index i = 0; i < rule.size(); ++i) {
        double value;
        try {
            value = f.evaluate(rule.nodes.col(i));
        } catch (const std::exception& e) {
            std::ostringstream msg;
            msg << "integrand";
            if (!f.name.empty()) msg << " '" << f.name << "'";
            msg << " failed at point (" << rule.nodes.col(i).transpose() << "): " << e.what();
            throw IntegrandError(rule.nodes.col(i), msg.str());
        }
        s.add(rule.weights[i] * value);
    }
    return s.value();
}

ExactnessReport exactness_check(const CubatureRule& rule, int max_total_degree, int trials) {
    if (max_total_degree < 0) throw std::invalid_argument("exactness_check: degree must be >= 0");
    ExactnessReport report;
    report.degree = max_total_degree;

    const int d = rule.dim;
    double count = 1.0;  // C(degree + d, d), saturating
    for (int i = 1; i <= d; ++i)
        count = std::min(count * (max_total_degree + i) / i, 1e18);

    std::set<std::vector<int>> alphas;
    if (count <= static_cast<double>(trials)) {
        for_each_multi_index(d, 0, max_total_degree, [&](const MultiIndex& idx) {
            alphas.insert(idx);
        });
    } else {
        for_each_multi_index(d, 0, std::min(max_total_degree, 1),
                             [&](const MultiIndex& idx) { alphas.insert(idx); });
        std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ (static_cast<std::uint64_t>(d) << 32) ^
                            static_cast<std::uint64_t>(max_total_degree));
        while (alphas.size() < static_cast<std::size_t>(trials)) {
            const int total = static_cast<int>(rng() % static_cast<std::uint64_t>(max_total_degree + 1));
            std::vector<int> alpha(static_cast<std::size_t>(d), 0);
            for (int unit = 0; unit < total; ++unit)
                alpha[static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(d))] += 1;
            alphas.insert(alpha);
        }
    }

    for (const auto& alpha : alphas) {
        const Integrand f = monomial(alpha);
        const double approx = integrate(rule, f);
        const double exact = *f.exact_integral;
        const double residual = std::abs(approx - exact) / exact;
        report.residuals.emplace_back(alpha, residual);
        report.max_residual = std::max(report.max_residual, residual);
    }
    return report;
}

CubatureRule prune_zero_weights(const CubatureRule& rule, double tol) {
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < rule.size(); ++i)
        if (std::abs(rule.weights[i]) >= tol) keep.push_back(i);

    CubatureRule pruned;
    pruned.dim = rule.dim;
    pruned.q = rule.q;
    pruned.keys.reserve(keep.size());
    pruned.nodes.resize(rule.dim, static_cast<Eigen::Index>(keep.size()));
    pruned.weights.resize(static_cast<Eigen::Index>(keep.size()));
    Eigen::Index out = 0;
    for (Eigen::Index i : keep) {
        pruned.keys.push_back(rule.keys[static_cast<std::size_t>(i)]);
        pruned.nodes.col(out) = rule.nodes.col(i);
        pruned.weights[out] = rule.weights[i];
        ++out;
    }
    return pruned;
}

}  // namespace ccs
