#pragma once

#include <array>
#include <vector>

#include "ptoda/asymptotics.hpp"

namespace ptoda {

enum class Form { PartnerForm, RadialForm };

const char* form_name(Form f);

struct ZetaSystem {
    Form form = Form::PartnerForm;
    double x = 1.0;
    double v0 = 0.0;
    double v0x = 0.0;
};

Mat3 V_matrix(double v0);
Mat3 W_matrix(Form form, double v0);
// Coefficient of dPsi/dzeta = A(zeta) Psi.
Mat3 coefficient_matrix(const ZetaSystem& sys, cd zeta);

enum class Location { Zero, Infinity };

struct FrameOptions {
    double c0 = 0.05;     // series start radius is c0 / x in t = x zeta
    int terms = 12;
    double truncation_budget = 1e-11;
    int max_refinements = 6;
    double rtol = 1e-11;
    double atol = 1e-14;
};

struct CanonicalFrame {
    Location location = Location::Zero;
    Mat3 psi;                         // columns at the common point t = 1
    Mat3 psi_inv;                     // rows of the inverse, integrated from the adjoint equation
    std::array<double, 3> ray_angle;  // recessive ray used for each column
    double start_radius = 0.0;        // in t
    double truncation = 0.0;          // estimated dropped series term
    double det_drift = 0.0;           // max |psi_inv psi - I|
};

CanonicalFrame canonical_solution(const ZetaSystem& sys, Location loc, const FrameOptions& opt = {});

struct ConnectionResult {
    Mat3 raw;         // Psi0^{-1} Psi_inf as integrated, rows of Psi0^{-1} from the adjoint equation
    Mat3 E1;          // equal to raw; symmetry and determinant are checked, not imposed
    double det_residual = 0.0;
    double symmetry_residual = 0.0;
    double truncation = 0.0;
    double det_drift = 0.0;
};

inline constexpr double kGaugeTol = 1e-4;

ConnectionResult connection_matrix(const ZetaSystem& sys, const FrameOptions& opt = {});

// Residuals are relative to the largest term involved.
struct ExtractedPoint {
    MonodromyPoint point;
    double residual1 = 0.0;
    double residual2 = 0.0;
    double s_fit_residual = 0.0;
    double pattern_residual = 0.0;
};

ExtractedPoint extract_point(const Mat3& E1, double tol = 1e-5);

struct RoundtripReport {
    MonodromyPoint input;
    MonodromyPoint recovered;
    double x0_requested = 0.0;
    double x0_used = 0.0;
    double v0 = 0.0;
    double v0x = 0.0;
    std::array<double, 4> error{};  // |delta| / max(|input|, 1) for A, s, x, y
    double max_error = 0.0;
    Component component = Component::Partner;
};

// Moves x0 to the nearest point with sin(theta) = 1 when recenter is set.
RoundtripReport roundtrip(const MonodromyPoint& m, double x0, bool recenter = true, const FrameOptions& opt = {});

}  // namespace ptoda
