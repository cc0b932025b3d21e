#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <vector>

#include "ccs/cc1d.hpp"
#include "ccs/errors.hpp"
#include "ccs/testfns.hpp"

namespace ccs {

// Multi-index i = (i_1, ..., i_d); the Smolyak sum runs over all i with
// components >= 1 and |i| = sum i_j <= q.
using MultiIndex = std::vector<int>;

int multi_index_order(const MultiIndex& idx);

// Calls fn for every multi-index with the given dimension, per-component
// minimum, and bounded order, in colexicographic order (first component
// varies fastest).  The reference passed to fn is reused between calls.
void for_each_multi_index(int dim, int min_component, int max_order,
                          const std::function<void(const MultiIndex&)>& fn);

// Exact identity of a d-variate grid point; ordered by represented value,
// component-wise lexicographic.
using KeyVector = std::vector<NodeKey>;

Eigen::VectorXd key_vector_coords(const KeyVector& keys);

// The d-variate rule A(q,d) with q = dim + k: the sparse grid H(q,d) with
// one merged weight per point.  Column i of `nodes` is point i; points are
// sorted by key vector, and zero merged weights are retained so the point
// set is exactly H(q,d).
struct CubatureRule {
    int dim = 1;
    int q = 1;
    std::vector<KeyVector> keys;
    Eigen::MatrixXd nodes;    // dim x n
    Eigen::VectorXd weights;  // n

    int k() const { return q - dim; }
    Eigen::Index size() const { return weights.size(); }
};

inline constexpr double kDefaultPointCap = 1e7;

// Upper bound on |H(d+k,d)| used as the memory guard: the summed sizes of
// the top-shell tensor grids (duplicates counted).
double predicted_point_count(int dim, int k);

// A(d+k,d) in the difference form: sum over |i| <= q of tensor products of
// Delta-rule weights, accumulated per canonical key vector.
CubatureRule smolyak_rule(int dim, int k, double point_cap = kDefaultPointCap);

// Same functional assembled from full tensor rules U^{i_1} x ... x U^{i_d}
// with signed binomial coefficients; an independent construction path.
CubatureRule smolyak_rule_combination(int dim, int k, double point_cap = kDefaultPointCap);

// Third path via the recursion A(d+k,d) = sum_l A(d+k-l,d-1) (x) Delta^l.
CubatureRule smolyak_rule_recursive(int dim, int k, double point_cap = kDefaultPointCap);

// The sparse grid H(d+k,d) as a sorted set of key vectors, built from the
// top shell |i| = q alone (valid by nestedness).
std::vector<KeyVector> sparse_grid_points(int dim, int k, double point_cap = kDefaultPointCap);

// N_d(k) = |H(d+k,d)|.
std::int64_t node_count(int dim, int k, double point_cap = kDefaultPointCap);

// The count bound N_d(k) <= 2 (2e)^k (1 + d/k)^k, k >= 1.
double node_count_bound(int dim, int k);
double log_node_count_bound(int dim, int k);

// Sum of absolute merged weights.
double operator_norm(const CubatureRule& rule);

// Triangle-inequality norm before merging coincident points:
// sum over |i| <= q of prod_j ||Delta^{i_j}||.  Diagnostic only; the merged
// norm can undershoot this.
double operator_norm_unmerged(int dim, int k);

// Applies the rule: sum of weight * f(point) in key order, compensated.
// Throws IntegrandError (with the offending point) if f fails.
double integrate(const CubatureRule& rule, const Integrand& f);

// Residuals of the rule on monomials x^alpha, |alpha| <= degree, relative
// to the exact integral prod 1/(alpha_j + 1).
struct ExactnessReport {
    int degree = 0;
    std::vector<std::pair<std::vector<int>, double>> residuals;
    double max_residual = 0.0;
};

// Tests all monomials when there are at most `trials` of them; otherwise a
// deterministic pseudo-random sample of `trials` monomials plus everything
// of total degree <= 1.
ExactnessReport exactness_check(const CubatureRule& rule, int max_total_degree,
                                int trials = 256);

// Copy with all |weight| < tol points dropped (I/O compactness only).
CubatureRule prune_zero_weights(const CubatureRule& rule, double tol = 1e-15);

}  // namespace ccs
