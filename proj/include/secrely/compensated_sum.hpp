#pragma once

#include <cmath>

namespace secrely {

// Neumaier-compensated accumulator: keeps a running correction term so long
// or strongly cancelling sums stay accurate to a few ulps of the true result.
struct CompensatedSum {
    double sum = 0.0;
    double correction = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            correction += (sum - t) + x;
        } else {
            correction += (x - t) + sum;
        }
        sum = t;
    }

    double value() const { return sum + correction; }
};

}  // namespace secrely
