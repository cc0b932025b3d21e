#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <string>

namespace ccs {

// A d-variate function on [0,1]^d, optionally carrying its exact integral
// and a certificate of membership in the class of functions whose
// directional derivatives of all orders are bounded by 1.  `fd_note`
// records the one-line argument behind the certificate.
struct Integrand {
    int dim = 1;
    std::function<double(const Eigen::Ref<const Eigen::VectorXd>&)> evaluate;
    std::optional<double> exact_integral;
    bool fd_member = false;
    std::string fd_note;
    std::string name;

    double operator()(const Eigen::Ref<const Eigen::VectorXd>& x) const {
        return evaluate(x);
    }
};

// f(x) = prod x_j^{alpha_j}; exact integral prod 1/(alpha_j + 1).
Integrand monomial(const std::vector<int>& alpha);

// f(x) = c on [0,1]^dim; certified member when |c| <= 1.
Integrand constant(double c, int dim);

// f(x) = cos(a <theta, x> + b) with unit theta; exact integral
// Re[e^{ib} prod phi(a theta_j)], phi(t) = (e^{it} - 1)/(it).  Certified
// member iff |a| <= 1.
Integrand ridge_cos(double a, const Eigen::VectorXd& theta, double b);

// f(x) = exp(a <theta, x> - a s) with s = sum max(theta_j, 0), unit theta,
// 0 < a <= 1; exact integral e^{-as} prod psi(a theta_j),
// psi(t) = (e^t - 1)/t.  Always a certified member.
Integrand ridge_exp(double a, const Eigen::VectorXd& theta);

// Full tensor-product Clenshaw-Curtis rule U^level x ... x U^level applied
// to f; the independent oracle used by the tests.  Refuses more than
// eval_cap point evaluations.  Work is split into fixed chunks combined in
// chunk order, so the result does not depend on the thread count.
double brute_force_integral(const Integrand& f, int level, double eval_cap = 3e8,
                            int threads = 0);

}  // namespace ccs
