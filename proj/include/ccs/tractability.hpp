#pragma once

#include <array>

namespace ccs {

// Every bound here exists in a log-domain form so that evaluation stays
// finite for dimensions up to 1e6 and accuracies down to 1e-300; the plain
// forms exponentiate and may overflow to inf / underflow to 0.

// Level choice ceil(max{3 d^(2/3), ln(1/eps)}) for the sparse-grid rule.
// Values within 1e-12 of an integer are snapped to it before the ceiling.
int k_eps(double eps, int dim);

// Level choice ceil(max{4 sqrt(d), ln(1/eps)}) for the positive-cubature
// variant.
int k_star(double eps, int dim);

// Polynomial-approximation error: sqrt(1/(2 pi k)) (e sqrt(d) / (2k))^k
// bounds the distance from any certified integrand to degree-(k-1)
// polynomials.
double taylor_bound(int k, int dim);
double log_taylor_bound(int k, int dim);

// Worst-case error of A(d+k,d) on certified integrands:
// (pi k)^(-1/2) (e^3 d / (8 k^2) max{1, d/k})^k.
double ccs_error_bound(int k, int dim);
double log_ccs_error_bound(int k, int dim);

// Worst-case error of the positive cubature: sqrt(2/(pi k)) (e sqrt(d)/(2k))^k,
// which equals 2 * taylor_bound(k, d).
double positive_error_bound(int k, int dim);
double log_positive_error_bound(int k, int dim);

// Point bound 2 exp{k_eps (2 + ln(1 - d/ln eps))}; at eps = 1 (where the
// display divides by ln eps) the count bound 2 (2e)^k (1 + d/k)^k with
// k = k_eps(1, d) is returned instead.
double ccs_point_bound(double eps, int dim);
double log_ccs_point_bound(double eps, int dim);

// Positive-cubature point bounds at k* = k_star(eps, d): the binomial count
// C(d + k*, d) and the display exp{k* (1 + ln(1 - d/ln eps))} (same eps = 1
// fallback, without the leading factor 2).
double tchakalov_point_bound_binomial(double eps, int dim);
double tchakalov_point_bound_exp(double eps, int dim);
double log_tchakalov_point_bound_exp(double eps, int dim);

// C(n, k): exact while it fits, else exponentiated lgamma.
double binomial(int n, int k);
double log_binomial(int n, int k);

// Operator-norm bound of A(d+k,d): the binomial C(d+k,d), plus the
// majorant e^k (1 + d/k)^k for k >= 1.
double norm_bound(int dim, int k);
double norm_bound_majorant(int dim, int k);
double log_norm_bound_majorant(int dim, int k);

// The four displayed bounds of the error-chain derivation, left to right,
// in log domain; each entry is <= the next (up to rounding), and the last
// equals log_ccs_error_bound.
std::array<double, 4> log_ccs_error_chain(int k, int dim);

enum class PlanVariant { ccs, positive_cubature };

// A worked parameter selection: the level k guaranteeing error <= eps
// together with the certified error and point bounds at that level.
struct TractabilityPlan {
    double eps = 1.0;
    int dim = 1;
    PlanVariant variant = PlanVariant::ccs;
    int k = 1;
    double error_bound = 0.0;
    double point_bound = 1.0;
    double binomial_bound = 1.0;  // norm bound (ccs) or node bound (positive)
};

TractabilityPlan make_plan(double eps, int dim, PlanVariant variant);

}  // namespace ccs
