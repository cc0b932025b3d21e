#include "ccs/tractability.hpp"

#include <cmath>
#include <stdexcept>

namespace ccs {

namespace {

constexpr double kTieTol = 1e-12;

int ceil_snapped(double x) {
    const double nearest = std::nearbyint(x);
    if (std::abs(x - nearest) <= kTieTol) return static_cast<int>(nearest);
    return static_cast<int>(std::ceil(x));
}

void check_eps(double eps) {
    if (!(eps > 0.0) || eps > 1.0)
        throw std::invalid_argument("eps must lie in (0, 1]");
}

void check_dim(int dim) {
    if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
}

void check_k(int k) {
    if (k < 1) throw std::invalid_argument("level parameter k must be >= 1");
}

// log(1 + e^x) without overflow.
double log1p_exp(double x) {
    if (x > 0.0) return x + std::log1p(std::exp(-x));
    return std::log1p(std::exp(x));
}

}  // namespace

int k_eps(double eps, int dim) {
    check_eps(eps);
    check_dim(dim);
    const double c = std::cbrt(static_cast<double>(dim));
    return ceil_snapped(std::max(3.0 * c * c, std::log(1.0 / eps)));
}

int k_star(double eps, int dim) {
    check_eps(eps);
    check_dim(dim);
    return ceil_snapped(std::max(4.0 * std::sqrt(static_cast<double>(dim)),
                                 std::log(1.0 / eps)));
}

double log_taylor_bound(int k, int dim) {
    check_k(k);
    check_dim(dim);
    const double kd = static_cast<double>(k);
    const double dd = static_cast<double>(dim);
    return -0.5 * std::log(2.0 * M_PI * kd) +
           kd * (1.0 + 0.5 * std::log(dd) - std::log(2.0 * kd));
}

double taylor_bound(int k, int dim) { return std::exp(log_taylor_bound(k, dim)); }

double log_ccs_error_bound(int k, int dim) {
    check_k(k);
    check_dim(dim);
    const double kd = static_cast<double>(k);
    const double dd = static_cast<double>(dim);
    const double log_factor = 3.0 + std::log(dd) - std::log(8.0) - 2.0 * std::log(kd) +
                              std::max(0.0, std::log(dd) - std::log(kd));
    return -0.5 * std::log(M_PI * kd) + kd * log_factor;
}

double ccs_error_bound(int k, int dim) { return std::exp(log_ccs_error_bound(k, dim)); }

double log_positive_error_bound(int k, int dim) {
    check_k(k);
    check_dim(dim);
    const double kd = static_cast<double>(k);
    const double dd = static_cast<double>(dim);
    return 0.5 * std::log(2.0 / (M_PI * kd)) +
           kd * (1.0 + 0.5 * std::log(dd) - std::log(2.0 * kd));
}

double positive_error_bound(int k, int dim) {
    return std::exp(log_positive_error_bound(k, dim));
}

double log_ccs_point_bound(double eps, int dim) {
    check_eps(eps);
    check_dim(dim);
    const int k = k_eps(eps, dim);
    const double kd = static_cast<double>(k);
    const double dd = static_cast<double>(dim);
    if (eps == 1.0)  // the display divides by ln(eps); fall back to the count bound
        return std::log(2.0) + kd * (std::log(2.0) + 1.0 + std::log1p(dd / kd));
    return std::log(2.0) + kd * (2.0 + std::log1p(-dd / std::log(eps)));
}

double ccs_point_bound(double eps, int dim) {
    return std::exp(log_ccs_point_bound(eps, dim));
}

double tchakalov_point_bound_binomial(double eps, int dim) {
    check_eps(eps);
    check_dim(dim);
    return binomial(dim + k_star(eps, dim), dim);
}

double log_tchakalov_point_bound_exp(double eps, int dim) {
    check_eps(eps);
    check_dim(dim);
    const int k = k_star(eps, dim);
    const double kd = static_cast<double>(k);
    const double dd = static_cast<double>(dim);
    if (eps == 1.0) return kd * (1.0 + std::log1p(dd / kd));
    return kd * (1.0 + std::log1p(-dd / std::log(eps)));
}

double tchakalov_point_bound_exp(double eps, int dim) {
    return std::exp(log_tchakalov_point_bound_exp(eps, dim));
}

double log_binomial(int n, int k) {
    if (k < 0 || k > n) return -HUGE_VAL;
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    const unsigned __int128 limit = static_cast<unsigned __int128>(1) << 63;
    for (int i = 0; i < k; ++i) {
        r = r * static_cast<unsigned>(n - i) / static_cast<unsigned>(i + 1);
        if (r >= limit) return std::exp(log_binomial(n, k));
    }
    return static_cast<double>(static_cast<std::uint64_t>(r));
}

double norm_bound(int dim, int k) {
    check_dim(dim);
    if (k < 0) throw std::invalid_argument("level parameter k must be >= 0");
    return binomial(dim + k, dim);
}

double log_norm_bound_majorant(int dim, int k) {
    check_dim(dim);
    check_k(k);
    const double kd = static_cast<double>(k);
    return kd * (1.0 + std::log1p(static_cast<double>(dim) / kd));
}

double norm_bound_majorant(int dim, int k) {
    return std::exp(log_norm_bound_majorant(dim, k));
}

std::array<double, 4> log_ccs_error_chain(int k, int dim) {
    check_k(k);
    check_dim(dim);
    const double kd = static_cast<double>(k);
    const double dd = static_cast<double>(dim);
    const double log_poly = -0.5 * std::log(4.0 * M_PI * kd) +
                            2.0 * kd * (1.0 + 0.5 * std::log(dd) - std::log(4.0 * kd));
    const double log_norm_major = log_norm_bound_majorant(dim, k);

    std::array<double, 4> chain{};
    chain[0] = log_poly + log1p_exp(log_norm_major);   // poly error * (1 + ||A||-bound)
    chain[1] = std::log(2.0) + log_poly + log_norm_major;
    chain[2] = -0.5 * std::log(M_PI * kd) +
               kd * (3.0 - std::log(16.0) + std::log(dd) - 2.0 * std::log(kd) +
                     std::log1p(dd / kd));
    chain[3] = log_ccs_error_bound(k, dim);
    return chain;
}

TractabilityPlan make_plan(double eps, int dim, PlanVariant variant) {
    check_eps(eps);
    check_dim(dim);
    TractabilityPlan plan;
    plan.eps = eps;
    plan.dim = dim;
    plan.variant = variant;
    if (variant == PlanVariant::ccs) {
        plan.k = k_eps(eps, dim);
        plan.error_bound = ccs_error_bound(plan.k, dim);
        plan.point_bound = ccs_point_bound(eps, dim);
    } else {
        plan.k = k_star(eps, dim);
        plan.error_bound = positive_error_bound(plan.k, dim);
        plan.point_bound = tchakalov_point_bound_exp(eps, dim);
    }
    plan.binomial_bound = binomial(dim + plan.k, dim);
    return plan;
}

}  // namespace ccs
