#pragma once

#include <vector>

#include "ptoda/asymptotics.hpp"
#include "ptoda/dopri.hpp"

namespace ptoda {

enum class OdeKind { Partner, RadialToda, PIIID7 };

const char* ode_kind_name(OdeKind k);

using Vec2 = Eigen::Vector2d;

// Second derivative of the dependent variable.
double ode_rhs(OdeKind kind, double x, double y, double dy);

inline constexpr double kBlowupThreshold = 30.0;

struct Sample {
    double x = 0.0;
    double value = 0.0;
    double derivative = 0.0;
};

struct PoleEvent {
    double x_pole = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    int side = 1;         // +1 when approached from the left
    int blowup_sign = -1; // sign of the value near the pole
};

struct Trajectory {
    OdeKind kind = OdeKind::Partner;
    std::vector<Sample> samples;
    std::vector<DenseStep<Vec2>> steps;
    std::vector<PoleEvent> poles;
    bool reached_end = false;

    // Dense evaluation of (value, derivative); x must lie in the covered range.
    Vec2 at(double x) const;
};

Trajectory integrate(OdeKind kind, double x0, double y0, double dy0, double x1, double tol = 1e-10);

// Partner trajectory seeded by the leading asymptotics at x0.
Trajectory integrate_from_asymptotics(const AsymptoticParams& p, double x0, double x1, double tol = 1e-10);

struct PiecewiseRun {
    std::vector<Trajectory> segments;
    std::vector<PoleEvent> poles;
};

// Integrates from x0 to x1; after each detected pole, restarts from fresh asymptotic data at
// the nearest exact root plus eps.
PiecewiseRun integrate_with_restarts(const AsymptoticParams& p, double x0, double x1, double eps = kDefaultEpsilon,
                                     double tol = 1e-10);

double residual(const Trajectory& traj);
// PIII(D7) residual of the image of a partner trajectory.
double piii_transform_residual(const Trajectory& partner);

double pole_refine(const Trajectory& traj, double lo, double hi);

}  // namespace ptoda
