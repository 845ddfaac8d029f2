#pragma once

#include <vector>

#include "ptoda/monodromy.hpp"

namespace ptoda {

// Analytic log-gamma, continuous on Re z > 0.
cd log_gamma(cd z);

struct AsymptoticParams {
    MonodromyPoint point;
    cd nu;
    cd nu0;
    cd s1;
    cd sigma;
    double psi = 0.0;
    double arg_gamma = 0.0;   // continuous arg Gamma(-nu)
    double drift = 0.0;       // i * nu0, real
};

struct PhaseEval {
    double x = 0.0;
    double theta = 0.0;
    double phi = 0.0;
};

struct SingularityPair {
    long n = 0;
    double x_exact = 0.0;
    double x_asym = 0.0;
    double x_printed = 0.0;
};

struct SingularitySet {
    std::vector<SingularityPair> roots;
    double epsilon = 0.1;
};

inline constexpr double kDefaultEpsilon = 0.1;

AsymptoticParams params_from_point(const MonodromyPoint& m);
PhaseEval theta_of_x(const AsymptoticParams& p, double x);
double dtheta_dx(const AsymptoticParams& p, double x);
double v0_from_sin(double sin_theta);
double v0_asym(const AsymptoticParams& p, double x);
double v0_asym_derivative(const AsymptoticParams& p, double x);
double X_from_sin(double sin_theta);

SingularitySet singularities(const AsymptoticParams& p, double xmin, double xmax, double eps = kDefaultEpsilon);
double root_formula(const AsymptoticParams& p, long n);
double root_formula_uncorrected(const AsymptoticParams& p, long n);
bool in_exclusion(const SingularitySet& set, double x);
// Smallest x above which theta is strictly decreasing.
double monotone_threshold(const AsymptoticParams& p);

struct PiiiPoint {
    double s = 0.0;
    double wtilde = 0.0;
};

PiiiPoint piii_map(double v0, double x);
// Inverse: returns (x, v0).
std::pair<double, double> piii_unmap(double s, double wtilde);
double wtilde_asym(const AsymptoticParams& p, double s);

}  // namespace ptoda
