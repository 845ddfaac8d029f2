#pragma once

#include <array>

#include "ptoda/core.hpp"

namespace ptoda {

enum class Component { RadialToda, Partner };

const char* component_name(Component c);

struct MonodromyPoint {
    double A = 0.0;
    double s = 0.0;
    double xr = 0.0;
    double yr = 0.0;

    cd B() const;
    Component component() const { return A > 0.0 ? Component::RadialToda : Component::Partner; }
    // First and second constraint residuals.
    double residual1() const;
    double residual2() const;
};

struct ChartSY {
    double s = 0.0;
    double y = 0.0;
};

struct ChartSPsi {
    double s = 0.0;
    double psi = 0.0;
};

inline constexpr double kConstraintTol = 1e-12;

MonodromyPoint validate_point(double A, double s, double xr, double yr, double tol = kConstraintTol);
MonodromyPoint from_chart_sy(const ChartSY& c);
MonodromyPoint from_chart_spsi(const ChartSPsi& c);
ChartSY to_chart_sy(const MonodromyPoint& m);
ChartSPsi to_chart_spsi(const MonodromyPoint& m);
double chart_spsi_radius(double s);

struct StokesSet {
    cd a;
    // Index 0..5 is n = 1, 4/3, 5/3, 2, 7/3, 8/3.
    std::array<Mat3, 6> Qinf;
    std::array<Mat3, 6> Q0;
    std::array<Mat3, 2> Sinf;
    std::array<Mat3, 2> S0;
    Mat3 E1;
    Mat3 E2;
};

Mat3 connection_E1(const MonodromyPoint& m);
StokesSet stokes_matrices(const MonodromyPoint& m);

struct JumpTriple {
    Mat3 L, D, R;
};

struct JumpFactors {
    std::array<JumpTriple, 6> bare;
    std::array<JumpTriple, 6> conjugated;
};

// theta(zeta) = -zeta d3 + d3^{-1}/zeta
Mat3 theta_matrix(cd zeta);
JumpFactors jump_factors(const MonodromyPoint& m, double x, cd zeta);

}  // namespace ptoda
