#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ccs/gridfile.hpp"
#include "ccs/smolyak.hpp"
#include "ccs/testfns.hpp"
#include "ccs/tractability.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;
constexpr int kExitDiagnostic = 4;

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::istringstream in(s);
    std::string part;
    while (std::getline(in, part, sep)) parts.push_back(part);
    return parts;
}

double parse_real(const std::string& s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw UsageError("malformed number '" + s + "'");
    return v;
}

Eigen::VectorXd parse_direction(const std::vector<std::string>& parts, std::size_t from) {
    if (parts.size() <= from) throw UsageError("function spec lacks direction components");
    Eigen::VectorXd theta(static_cast<Eigen::Index>(parts.size() - from));
    for (std::size_t i = from; i < parts.size(); ++i)
        theta[static_cast<Eigen::Index>(i - from)] = parse_real(parts[i]);
    const double norm = theta.norm();
    if (norm == 0.0) throw UsageError("direction must be nonzero");
    return theta / norm;  // callers type approximate directions; normalize here
}

// Grammar: monomial:a1,...,ad | constant:c | ridge-cos:a,b,t1,...,td |
// ridge-exp:a,t1,...,td.  Directions are normalized to unit length.
ccs::Integrand parse_integrand(const std::string& spec, int expected_dim) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw UsageError("function spec lacks ':'");
    const std::string kind = spec.substr(0, colon);
    const auto parts = split(spec.substr(colon + 1), ',');
    if (parts.empty()) throw UsageError("function spec lacks parameters");

    ccs::Integrand f;
    if (kind == "monomial") {
        std::vector<int> alpha;
        alpha.reserve(parts.size());
        for (const auto& p : parts) alpha.push_back(static_cast<int>(std::stoll(p)));
        f = ccs::monomial(alpha);
    } else if (kind == "constant") {
        if (parts.size() != 1) throw UsageError("constant takes exactly one parameter");
        f = ccs::constant(parse_real(parts[0]), expected_dim > 0 ? expected_dim : 1);
    } else if (kind == "ridge-cos") {
        if (parts.size() < 3) throw UsageError("ridge-cos needs a,b,theta...");
        f = ccs::ridge_cos(parse_real(parts[0]), parse_direction(parts, 2),
                           parse_real(parts[1]));
    } else if (kind == "ridge-exp") {
        if (parts.size() < 2) throw UsageError("ridge-exp needs a,theta...");
        f = ccs::ridge_exp(parse_real(parts[0]), parse_direction(parts, 1));
    } else {
        throw UsageError("unknown function kind '" + kind + "'");
    }
    if (expected_dim > 0 && f.dim != expected_dim)
        throw UsageError("function dimension " + std::to_string(f.dim) +
                         " does not match --dim " + std::to_string(expected_dim));
    return f;
}

void write_output(const std::string& path, const ccs::GridFile& grid,
                  ccs::GridFormat format) {
    if (path.empty() || path == "-") {
        ccs::write_grid(std::cout, grid, format);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    ccs::write_grid(out, grid, format);
}

int cmd_grid(int dim, int k, const std::string& format, const std::string& output,
             bool prune, double cap) {
    ccs::CubatureRule rule = ccs::smolyak_rule(dim, k, cap);
    if (prune) rule = ccs::prune_zero_weights(rule);
    const auto fmt = format == "json" ? ccs::GridFormat::json : ccs::GridFormat::csv;
    write_output(output, ccs::to_grid_file(rule), fmt);
    return 0;
}

int cmd_integrate(int dim, int k, const std::string& fn_spec, double cap) {
    const ccs::Integrand f = parse_integrand(fn_spec, dim);
    const ccs::CubatureRule rule = ccs::smolyak_rule(f.dim, k, cap);
    const double value = ccs::integrate(rule, f);
    std::cout << "fn=" << f.name << "\n";
    std::cout << "dim=" << f.dim << " k=" << k << " q=" << rule.q << "\n";
    std::cout << "value=" << fmt17(value) << "\n";
    if (f.exact_integral) {
        std::cout << "exact=" << fmt17(*f.exact_integral) << "\n";
        std::cout << "abs_error=" << fmt17(std::abs(value - *f.exact_integral)) << "\n";
    }
    std::cout << "n_points=" << rule.size() << "\n";
    std::cout << "norm=" << fmt17(ccs::operator_norm(rule)) << "\n";
    return 0;
}

void print_plan_row(const ccs::TractabilityPlan& plan) {
    const char* name = plan.variant == ccs::PlanVariant::ccs ? "ccs" : "positive-cubature";
    std::cout << name << "," << plan.k << "," << fmt17(plan.error_bound) << ","
              << fmt17(plan.point_bound) << "," << fmt17(plan.binomial_bound) << "\n";
}

int cmd_plan(double eps, int dim, const std::string& variant) {
    std::cout << "variant,k,error_bound,point_bound,binomial_bound\n";
    if (variant == "ccs" || variant == "both")
        print_plan_row(ccs::make_plan(eps, dim, ccs::PlanVariant::ccs));
    if (variant == "positive" || variant == "both")
        print_plan_row(ccs::make_plan(eps, dim, ccs::PlanVariant::positive_cubature));
    return 0;
}

int cmd_convergence(int dim, const std::string& fn_spec, int k_max, double cap) {
    const ccs::Integrand f = parse_integrand(fn_spec, dim);
    std::cout << "k,n_points,norm,abs_error,ccs_error_bound\n";
    for (int k = 0; k <= k_max; ++k) {
        const ccs::CubatureRule rule = ccs::smolyak_rule(f.dim, k, cap);
        const double value = ccs::integrate(rule, f);
        const std::string abs_error =
            f.exact_integral ? fmt17(std::abs(value - *f.exact_integral)) : "nan";
        const std::string bound = k >= 1 ? fmt17(ccs::ccs_error_bound(k, f.dim)) : "nan";
        std::cout << k << "," << rule.size() << "," << fmt17(ccs::operator_norm(rule))
                  << "," << abs_error << "," << bound << "\n";
    }
    return 0;
}

int cmd_diagnostics(int dim, int k, double cap, int trials) {
    const ccs::CubatureRule rule = ccs::smolyak_rule(dim, k, cap);
    bool all_pass = true;
    auto report = [&](const std::string& name, double measured, double bound) {
        const bool pass = measured <= bound;
        all_pass = all_pass && pass;
        std::cout << name << " measured=" << fmt17(measured) << " bound=" << fmt17(bound)
                  << (pass ? " PASS" : " FAIL") << "\n";
    };

    std::cout << "dim=" << dim << " k=" << k << " q=" << rule.q << "\n";
    report("n_points", static_cast<double>(rule.size()),
           k >= 1 ? ccs::node_count_bound(dim, k) : 1.0);
    report("norm", ccs::operator_norm(rule), ccs::norm_bound(dim, k));
    if (k >= 1)
        report("norm_vs_majorant", ccs::operator_norm(rule),
               ccs::norm_bound_majorant(dim, k));
    const ccs::ExactnessReport exactness = ccs::exactness_check(rule, 2 * k + 1, trials);
    report("exactness_degree_" + std::to_string(2 * k + 1) + "_max_residual",
           exactness.max_residual, 1e-10);
    std::cout << "overall=" << (all_pass ? "PASS" : "FAIL") << "\n";
    return all_pass ? 0 : kExitDiagnostic;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Clenshaw-Curtis Smolyak sparse-grid cubature"};
    app.require_subcommand(1);

    int dim = 1;
    int level = 0;
    int k_max = 6;
    int trials = 256;
    double eps = 0.1;
    double cap = ccs::kDefaultPointCap;
    bool prune = false;
    std::string fn_spec;
    std::string format = "csv";
    std::string output;
    std::string variant = "both";

    auto add_cap = [&](CLI::App* cmd) {
        cmd->add_option("--cap", cap, "maximum predicted point count")
            ->envname("CCS_POINT_CAP")
            ->capture_default_str();
    };

    auto* grid = app.add_subcommand("grid", "write the sparse grid and merged weights");
    grid->add_option("--dim", dim, "dimension")->required();
    grid->add_option("--level,-k", level, "sparse-grid level k (rule A(dim+k, dim))")
        ->required();
    grid->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    grid->add_option("--output,-o", output, "output file ('-' for stdout)");
    grid->add_flag("--prune-zero", prune, "drop |weight| < 1e-15 rows");
    add_cap(grid);

    auto* integrate = app.add_subcommand("integrate", "apply a rule to a named integrand");
    integrate->add_option("--dim", dim, "dimension (checked against the function)");
    integrate->add_option("--level,-k", level, "sparse-grid level k")->required();
    integrate->add_option("--fn", fn_spec, "integrand spec, e.g. ridge-cos:1,0,0.6,0.8")
        ->required();
    add_cap(integrate);

    auto* plan = app.add_subcommand("plan", "level choice and bounds for a target accuracy");
    plan->add_option("--eps", eps, "target accuracy in (0,1]")->required();
    plan->add_option("--dim", dim, "dimension")->required();
    plan->add_option("--variant", variant, "which plan rows to print")
        ->check(CLI::IsMember({"ccs", "positive", "both"}))
        ->capture_default_str();

    auto* convergence =
        app.add_subcommand("convergence", "error vs. level table for one integrand");
    convergence->add_option("--dim", dim, "dimension (checked against the function)");
    convergence->add_option("--fn", fn_spec, "integrand spec")->required();
    convergence->add_option("--k-max", k_max, "largest level")->capture_default_str();
    add_cap(convergence);

    auto* diagnostics =
        app.add_subcommand("diagnostics", "measured norms/counts/exactness vs. bounds");
    diagnostics->add_option("--dim", dim, "dimension")->required();
    diagnostics->add_option("--level,-k", level, "sparse-grid level k")->required();
    diagnostics->add_option("--trials", trials, "exactness sample size")
        ->capture_default_str();
    add_cap(diagnostics);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (grid->parsed()) return cmd_grid(dim, level, format, output, prune, cap);
        if (integrate->parsed())
            return cmd_integrate(integrate->count("--dim") ? dim : 0, level, fn_spec, cap);
        if (plan->parsed()) return cmd_plan(eps, dim, variant);
        if (convergence->parsed())
            return cmd_convergence(convergence->count("--dim") ? dim : 0, fn_spec, k_max,
                                   cap);
        if (diagnostics->parsed()) return cmd_diagnostics(dim, level, cap, trials);
    } catch (const ccs::CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCap;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
