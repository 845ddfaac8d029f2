#pragma once

#include <array>
#include <string>
#include <vector>

#include "ptoda/asymptotics.hpp"

namespace ptoda {

struct LeadingData {
    cd alpha;
    cd alpha_hat;
    cd beta_hat;
    double phi = 0.0;
    double X = 0.0;
    // |alpha_hat - sqrt(12) e^{i phi}|
    double phase_residual = 0.0;
};

cd alpha_of_x(const AsymptoticParams& p, double x);
LeadingData leading_data(const AsymptoticParams& p, double x);
cd alpha_hat_from_phi(double phi);

// Stationary points in display order: 1, -conj(w), w, -1, conj(w), -w.
enum class Stationary { One, MinusOmegaBar, Omega, MinusOne, OmegaBar, MinusOmega };
inline constexpr std::array<Stationary, 6> kStationaryPoints = {
    Stationary::One, Stationary::MinusOmegaBar, Stationary::Omega,
    Stationary::MinusOne, Stationary::OmegaBar, Stationary::MinusOmega};

cd stationary_value(Stationary u);
const char* stationary_name(Stationary u);

Mat3 dressing_E(Stationary u, cd alpha_hat, cd zeta);
Mat3 dressed_jump(Stationary u, cd alpha_hat, cd beta_hat, cd zeta);
Mat3 printed_jump(Stationary u, cd alpha_hat, cd beta_hat, cd zeta);

struct FactorizationEntry {
    Stationary u;
    double residual_vs_printed = 0.0;
    double residual_vs_corrected = 0.0;
    bool matches_printed = false;
    bool known_typo = false;
};

struct FactorizationReport {
    std::vector<FactorizationEntry> entries;
};

FactorizationReport verify_factorizations(cd alpha_hat, cd beta_hat, cd zeta, double tol = 1e-12);

struct ResidueSystem {
    cd alpha_hat;
    Mat6 M;
    std::array<Vec6, 3> v;
};

struct DressingMatrices {
    Mat3 B1;
    Mat3 B2;
};

ResidueSystem build_main_system(cd alpha_hat);
cd det_main_closed_form(cd alpha_hat);
DressingMatrices solve_main_system(const ResidueSystem& sys);
// Maximum spread within each of the three column chains.
double column_chain_residual(const DressingMatrices& d);

struct R0Fit {
    Mat3 R0;
    double v0 = 0.0;
    cd exp_m2v;
    cd exp_p2v;
    double residual = 0.0;
    // |e^{2v} + e^{-2v} - (3X - 2)| when X is supplied, else 0.
    double consistency = 0.0;
};

R0Fit r0_from_B2(const DressingMatrices& d, double X = 0.0);

struct ReducedSystem {
    cd alpha_hat;
    Mat6 M1;
    Mat6 M2;
    Vec6 w3;
};

ReducedSystem build_reduced_system(cd alpha_hat);
cd det_M1_closed_form(double phi);
cd numerator_closed_form(double phi);
// Returns e^{-2 v0}.
double cramer_exp_m2v(cd alpha_hat);
double cramer_v0(cd alpha_hat);
double closed_form_exp_m2v(double phi);

// Recovery of e^{-2 v0} along the main-system route.
double main_system_exp_m2v(cd alpha_hat);

Mat3 global_parametrix(const MonodromyPoint& m, cd zeta);

struct LocalFrame {
    cd z_coefficient;
    cd alpha;
    cd nu;
    Eigen::Matrix2cd m;
    Mat3 theta1;
};

cd z_map(double x, cd zeta);
LocalFrame local_frame_data(const AsymptoticParams& p, double x);

}  // namespace ptoda
