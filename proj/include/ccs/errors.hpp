#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>

namespace ccs {

// Construction was refused because the predicted point (or evaluation) count
// exceeds the configured cap. `predicted` is an upper bound, never less than
// the count the construction would actually have produced.
class CapExceeded : public std::runtime_error {
public:
    CapExceeded(double predicted, double cap, const std::string& what_arg)
        : std::runtime_error(what_arg), predicted(predicted), cap(cap) {}

    double predicted;
    double cap;
};

// An integrand threw during evaluation; carries the offending point.
class IntegrandError : public std::runtime_error {
public:
    IntegrandError(Eigen::VectorXd where, const std::string& what_arg)
        : std::runtime_error(what_arg), point(std::move(where)) {}

    Eigen::VectorXd point;
};

}  // namespace ccs
