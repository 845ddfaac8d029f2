#pragma once

#include <cmath>
#include <random>

#include "ptoda/core.hpp"
#include "ptoda/monodromy.hpp"

namespace testing_support {

using ptoda::cd;
using ptoda::Mat3;

// Small hand-rolled generator; every property test owns one with a fixed seed.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
    int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng_); }
    cd complex(double r) { return {uniform(-r, r), uniform(-r, r)}; }

    // Identity plus a bounded perturbation, so the condition number stays small.
    Mat3 well_conditioned() {
        Mat3 m = Mat3::Identity();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m(i, j) += 0.3 * complex(1.0);
        return m;
    }

    Mat3 any_matrix() {
        Mat3 m;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m(i, j) = complex(2.0);
        return m;
    }

    // Partner points with |A| of order one, away from B = 0.
    ptoda::MonodromyPoint partner_point() {
        for (;;) {
            const double s = uniform(-2.9, 0.9);
            const double y = uniform(-1.0, 1.0);
            const auto m = ptoda::from_chart_sy({s, y});
            if (std::hypot(m.xr, m.yr) > 1e-3) return m;
        }
    }

private:
    std::mt19937_64 rng_;
};

inline ptoda::MonodromyPoint test_point() {
    return ptoda::validate_point(-1.0 / 3.0, 2.0 * std::sqrt(2.0) - 2.0, std::sqrt(2.0) / 3.0, 0.0);
}

inline double wrap_pi(double a) { return std::remainder(a, 2.0 * ptoda::kPi); }

}  // namespace testing_support
