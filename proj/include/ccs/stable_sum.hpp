#pragma once

#include <cmath>

namespace ccs {

// Neumaier-compensated accumulator. Order of add() calls is part of the
// contract everywhere this is used: identical sequences give identical bits.
class StableSum {
public:
    StableSum() = default;
    explicit StableSum(double init) : sum_(init) {}

    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            carry_ += (sum_ - t) + x;
        else
            carry_ += (x - t) + sum_;
        sum_ = t;
    }

    StableSum& operator+=(double x) {
        add(x);
        return *this;
    }

    double value() const { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

}  // namespace ccs
