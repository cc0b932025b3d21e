#include "ccs/testfns.hpp"

#include <atomic>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "ccs/cc1d.hpp"
#include "ccs/errors.hpp"
#include "ccs/stable_sum.hpp"

namespace ccs {

namespace {

double int_pow(double x, int p) {
    double r = 1.0;
    for (int i = 0; i < p; ++i) r *= x;
    return r;
}

// phi(t) = (e^{it} - 1)/(it), the unit-interval average of e^{itx};
// phi(0) = 1.  Taylor series below 1e-4 to avoid cancellation.
std::complex<double> phi(double t) {
    if (std::abs(t) < 1e-4) {
        const std::complex<double> it(0.0, t);
        std::complex<double> term(1.0, 0.0);
        std::complex<double> sum(1.0, 0.0);
        for (int n = 1; n <= 5; ++n) {
            term *= it / static_cast<double>(n + 1);
            sum += term;
        }
        return sum;
    }
    const std::complex<double> it(0.0, t);
    return (std::exp(it) - 1.0) / it;
}

// psi(t) = (e^t - 1)/t, psi(0) = 1.
double psi(double t) {
    if (std::abs(t) < 1e-4) {
        double term = 1.0;
        double sum = 1.0;
        for (int n = 1; n <= 5; ++n) {
            term *= t / static_cast<double>(n + 1);
            sum += term;
        }
        return sum;
    }
    return std::expm1(t) / t;
}

void check_unit(const Eigen::VectorXd& theta) {
    if (theta.size() < 1) throw std::invalid_argument("ridge direction must be nonempty");
    if (std::abs(theta.norm() - 1.0) > 1e-14)
        throw std::invalid_argument("ridge direction must have unit Euclidean norm");
}

}  // namespace

Integrand monomial(const std::vector<int>& alpha) {
    for (int a : alpha)
        if (a < 0) throw std::invalid_argument("monomial: exponents must be >= 0");

    Integrand f;
    f.dim = static_cast<int>(alpha.size());
    std::ostringstream name;
    name << "monomial:";
    for (std::size_t j = 0; j < alpha.size(); ++j) name << (j ? "," : "") << alpha[j];
    f.name = name.str();

    f.evaluate = [alpha](const Eigen::Ref<const Eigen::VectorXd>& x) {
        double r = 1.0;
        for (std::size_t j = 0; j < alpha.size(); ++j)
            r *= int_pow(x[static_cast<Eigen::Index>(j)], alpha[j]);
        return r;
    };
    double exact = 1.0;
    for (int a : alpha) exact /= static_cast<double>(a + 1);
    f.exact_integral = exact;
    f.fd_member = false;
    return f;
}

Integrand constant(double c, int dim) {
    if (dim < 1) throw std::invalid_argument("constant: dimension must be >= 1");
    Integrand f;
    f.dim = dim;
    f.name = "constant:" + std::to_string(c);
    f.evaluate = [c](const Eigen::Ref<const Eigen::VectorXd>&) { return c; };
    f.exact_integral = c;
    f.fd_member = std::abs(c) <= 1.0;
    if (f.fd_member) f.fd_note = "all derivatives vanish; |f| = |c| <= 1";
    return f;
}

Integrand ridge_cos(double a, const Eigen::VectorXd& theta, double b) {
    check_unit(theta);
    Integrand f;
    f.dim = static_cast<int>(theta.size());
    f.name = "ridge-cos";
    f.evaluate = [a, theta, b](const Eigen::Ref<const Eigen::VectorXd>& x) {
        return std::cos(a * theta.dot(x) + b);
    };

    std::complex<double> prod = std::exp(std::complex<double>(0.0, b));
    for (Eigen::Index j = 0; j < theta.size(); ++j) prod *= phi(a * theta[j]);
    f.exact_integral = prod.real();

    f.fd_member = std::abs(a) <= 1.0;
    if (f.fd_member)
        f.fd_note = "D^k_eta f = a^k <theta,eta>^k cos^(k)(.), so |D^k_eta f| <= |a|^k <= 1";
    return f;
}

Integrand ridge_exp(double a, const Eigen::VectorXd& theta) {
    check_unit(theta);
    if (!(a > 0.0) || a > 1.0)
        throw std::invalid_argument("ridge_exp: scale a must lie in (0, 1]");

    const double shift = theta.cwiseMax(0.0).sum();  // sup of <theta,x> over the cube
    Integrand f;
    f.dim = static_cast<int>(theta.size());
    f.name = "ridge-exp";
    f.evaluate = [a, theta, shift](const Eigen::Ref<const Eigen::VectorXd>& x) {
        return std::exp(a * (theta.dot(x) - shift));
    };

    double prod = std::exp(-a * shift);
    for (Eigen::Index j = 0; j < theta.size(); ++j) prod *= psi(a * theta[j]);
    f.exact_integral = prod;

    f.fd_member = true;
    f.fd_note = "D^k_eta f = a^k <theta,eta>^k f with 0 < f <= 1, so |D^k_eta f| <= a^k <= 1";
    return f;
}

double brute_force_integral(const Integrand& f, int level, double eval_cap, int threads) {
    const std::int64_t m = level_size(level);
    const int d = f.dim;
    double total = 1.0;
    for (int j = 0; j < d; ++j) total *= static_cast<double>(m);
    if (total > eval_cap) {
        std::ostringstream msg;
        msg << "brute_force_integral: " << total << " evaluations (m=" << m << ", dim=" << d
            << ") exceed cap " << eval_cap;
        throw CapExceeded(total, eval_cap, msg.str());
    }
    const std::int64_t n_total = static_cast<std::int64_t>(total);

    const Rule1D rule = cc_rule(level);

    // Fixed chunking (independent of the thread count) keeps the reduction
    // order deterministic: chunks are summed internally in index order and
    // combined in chunk order.
    const std::int64_t chunk_size = 1 << 16;
    const std::int64_t n_chunks = (n_total + chunk_size - 1) / chunk_size;
    std::vector<double> partial(static_cast<std::size_t>(n_chunks), 0.0);

    auto run_chunk = [&](std::int64_t c) {
        const std::int64_t begin = c * chunk_size;
        const std::int64_t end = std::min(begin + chunk_size, n_total);
        std::vector<std::int64_t> pos(static_cast<std::size_t>(d));
        Eigen::VectorXd x(d);
        std::int64_t rem = begin;
        for (int j = 0; j < d; ++j) {  // decode mixed radix, first axis fastest
            pos[static_cast<std::size_t>(j)] = rem % m;
            rem /= m;
            x[j] = rule.nodes[pos[static_cast<std::size_t>(j)]];
        }
        StableSum s;
        for (std::int64_t i = begin; i < end; ++i) {
            double w = 1.0;
            for (int j = 0; j < d; ++j) w *= rule.weights[pos[static_cast<std::size_t>(j)]];
            s.add(w * f.evaluate(x));
            int j = 0;
            while (j < d) {
                if (++pos[static_cast<std::size_t>(j)] < m) {
                    x[j] = rule.nodes[pos[static_cast<std::size_t>(j)]];
                    break;
                }
                pos[static_cast<std::size_t>(j)] = 0;
                x[j] = rule.nodes[0];
                ++j;
            }
        }
        partial[static_cast<std::size_t>(c)] = s.value();
    };

    int n_threads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::max(1, std::min<int>(n_threads, static_cast<int>(n_chunks)));
    if (n_threads == 1) {
        for (std::int64_t c = 0; c < n_chunks; ++c) run_chunk(c);
    } else {
        std::atomic<std::int64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int t = 0; t < n_threads; ++t)
            pool.emplace_back([&] {
                for (std::int64_t c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1))
                    run_chunk(c);
            });
        for (auto& t : pool) t.join();
    }

    StableSum s;
    for (double p : partial) s.add(p);
    return s.value();
}

}  // namespace ccs
