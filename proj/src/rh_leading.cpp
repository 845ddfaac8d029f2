#include "ptoda/rh_leading.hpp"

#include <cmath>

namespace ptoda {

namespace {

constexpr double kSqrt3 = 1.7320508075688772935;
constexpr double kNearSingular = 1e-6;

const cd I(0.0, 1.0);

double max_abs6(const Mat6& m) { return m.cwiseAbs().maxCoeff(); }

void guard_system(const Mat6& m, cd det, const char* what) {
    const double scale = std::pow(std::max(max_abs6(m), 1e-300), 6);
    if (!(std::abs(det) >= kNearSingular * scale))
        throw Error(ErrorCode::NearSingularSystem, std::string(what) + " is numerically singular (x in S_eps)");
}

}  // namespace

cd alpha_of_x(const AsymptoticParams& p, double x) {
    const cd gamma = std::exp(log_gamma(-p.nu));
    return -I / (p.s1 * std::exp(I * (2.0 * kSqrt3 * x))) * std::sqrt(2.0 * kPi) * std::exp(2.0 * kPi * I * p.nu) / gamma;
}

LeadingData leading_data(const AsymptoticParams& p, double x) {
    if (!(x > 0.0)) throw Error(ErrorCode::InvalidArgument, "x must be positive");
    if (p.point.A > 0.0) throw Error(ErrorCode::WrongComponent, "leading data need A < 0");
    LeadingData d;
    const double L = std::log(24.0 * kSqrt3 * x);
    const cd nu = p.nu;
    d.alpha = alpha_of_x(p, x);
    const double q = std::pow(3.0, -0.25) / std::sqrt(2.0 * x);
    d.alpha_hat = d.alpha * q * std::exp(-nu * L) * std::exp(-3.0 * kPi * I / 4.0 - 1.5 * kPi * I * nu);
    d.beta_hat = -(nu / d.alpha) * q * std::exp(nu * L) * std::exp(-3.0 * kPi * I / 4.0 + 1.5 * kPi * I * nu);
    d.phi = theta_of_x(p, x).phi;
    d.X = X_from_sin(std::sin(d.phi - kPi / 3.0));
    d.phase_residual = std::abs(d.alpha_hat - alpha_hat_from_phi(d.phi));
    return d;
}

cd alpha_hat_from_phi(double phi) { return std::sqrt(12.0) * std::exp(I * phi); }

cd stationary_value(Stationary u) {
    const cd w = constants::omega();
    switch (u) {
        case Stationary::One: return 1.0;
        case Stationary::MinusOmegaBar: return -std::conj(w);
        case Stationary::Omega: return w;
        case Stationary::MinusOne: return -1.0;
        case Stationary::OmegaBar: return std::conj(w);
        case Stationary::MinusOmega: return -w;
    }
    return 0.0;
}

const char* stationary_name(Stationary u) {
    switch (u) {
        case Stationary::One: return "1";
        case Stationary::MinusOmegaBar: return "-omega_bar";
        case Stationary::Omega: return "omega";
        case Stationary::MinusOne: return "-1";
        case Stationary::OmegaBar: return "omega_bar";
        case Stationary::MinusOmega: return "-omega";
    }
    return "?";
}

namespace {

cd offset(Stationary u, cd zeta) {
    const cd d = zeta - stationary_value(u);
    if (std::abs(d) < 1e-14) throw Error(ErrorCode::PoleAtU, "zeta coincides with the stationary point");
    return d;
}

}  // namespace

Mat3 dressing_E(Stationary u, cd a, cd zeta) {
    const cd d = offset(u, zeta);
    const cd w = constants::omega();
    switch (u) {
        case Stationary::One: return unit_with(1, 2, -a / d);
        case Stationary::MinusOmegaBar: return unit_with(0, 2, -a * w / d);
        case Stationary::Omega: return unit_with(0, 1, -a * w / d);
        case Stationary::MinusOne: return unit_with(2, 1, -a * w * w / d);
        case Stationary::OmegaBar: return unit_with(2, 0, -a * w * w / d);
        case Stationary::MinusOmega: return unit_with(1, 0, -a / d);
    }
    return Mat3::Identity();
}

Mat3 dressed_jump(Stationary u, cd a, cd b, cd zeta) {
    const cd d = offset(u, zeta);
    const cd w = constants::omega();
    Mat3 g = Mat3::Identity();
    const cd ab = a * b / (d * d);
    switch (u) {
        case Stationary::One:
            g(2, 1) = b / d;
            g(2, 2) = 1.0 - ab;
            break;
        case Stationary::MinusOmegaBar:
            g(2, 0) = b / d;
            g(2, 2) = 1.0 - ab * w;
            break;
        case Stationary::Omega:
            g(1, 0) = b * w / d;
            g(1, 1) = 1.0 - ab * w * w;
            break;
        case Stationary::MinusOne:
            g(1, 1) = 1.0 - ab;
            g(1, 2) = b * w / d;
            break;
        case Stationary::OmegaBar:
            g(0, 0) = 1.0 - ab * w;
            g(0, 2) = b * w * w / d;
            break;
        case Stationary::MinusOmega:
            g(0, 0) = 1.0 - ab * w * w;
            g(0, 1) = b * w * w / d;
            break;
    }
    return g;
}

Mat3 printed_jump(Stationary u, cd a, cd b, cd zeta) {
    const cd d = offset(u, zeta);
    const cd w = constants::omega();
    Mat3 g = Mat3::Identity();
    switch (u) {
        case Stationary::One:
            g(1, 2) = a / d;
            g(2, 1) = b / d;
            break;
        case Stationary::MinusOmegaBar:
            g(0, 2) = a * w / d;
            g(2, 0) = b / d;
            g(2, 1) = 1.0;
            g(2, 2) = 0.0;
            break;
        case Stationary::Omega:
            g(0, 1) = a * w / d;
            g(1, 0) = b * w / d;
            break;
        case Stationary::MinusOne:
            g(1, 2) = b * w / d;
            g(2, 1) = a * w * w / d;
            break;
        case Stationary::OmegaBar:
            g(0, 2) = b * w * w / d;
            g(2, 0) = a * w * w / d;
            break;
        case Stationary::MinusOmega:
            g(0, 1) = b * w * w / d;
            g(1, 0) = a / d;
            break;
    }
    return g;
}

FactorizationReport verify_factorizations(cd a, cd b, cd zeta, double tol) {
    FactorizationReport rep;
    for (Stationary u : kStationaryPoints) {
        const Mat3 product = dressed_jump(u, a, b, zeta) * inverse(dressing_E(u, a, zeta));
        const Mat3 printed = printed_jump(u, a, b, zeta);
        FactorizationEntry e;
        e.u = u;
        e.residual_vs_printed = max_abs(product - printed);
        e.matches_printed = e.residual_vs_printed <= tol * std::max(1.0, max_abs(printed));
        e.known_typo = u == Stationary::MinusOmegaBar;
        if (e.known_typo) {
            // Printed row 3 is [b/(z+wb), 1, 0]; the product gives [b/(z+wb), 0, 1].
            Mat3 corrected = printed;
            corrected(2, 1) = 0.0;
            corrected(2, 2) = 1.0;
            e.residual_vs_corrected = max_abs(product - corrected);
        } else {
            e.residual_vs_corrected = e.residual_vs_printed;
        }
        rep.entries.push_back(e);
    }
    return rep;
}

ResidueSystem build_main_system(cd a) {
    if (a == cd(0.0)) throw Error(ErrorCode::InvalidArgument, "alpha_hat must be nonzero");
    const cd w = constants::omega();
    const cd w2 = w * w;
    const cd c = a / (2.0 * (1.0 - w));
    ResidueSystem sys;
    sys.alpha_hat = a;
    sys.M << 0.0, c, -w2, 0.0, c, -w2,
             0.0, w, -c, 0.0, -w, c,
             a * w2 / (2.0 * (w2 - 1.0)), -w2, 0.0, a * w / (2.0 * (w2 - 1.0)), -w, 0.0,
             -w, c, 0.0, 1.0, a / (2.0 * (w2 - w)), 0.0,
             -c, 0.0, w, a * w / (2.0 * (1.0 - w)), 0.0, -w2,
             -w2, 0.0, c, -1.0, 0.0, a * w / (2.0 * (1.0 - w));
    sys.v[0] << 0.0, 0.0, a / (2.0 * (1.0 - w2)), -w2, -a * w2 / (2.0 * (1.0 - w)), w;
    sys.v[1] << -c, w, 1.0, a * w / (2.0 * (1.0 - w)), 0.0, 0.0;
    sys.v[2] << w2, -c, 0.0, 0.0, 1.0, -a / (2.0 * (w - w2));
    return sys;
}

cd det_main_closed_form(cd a) {
    const cd a2 = a * a;
    return 1.0 - a2 * (648.0 * cd(1.0, kSqrt3) - 384.0 * I * kSqrt3 * a + 54.0 * I * (I + kSqrt3) * a2 + a2 * a2) / 1728.0;
}

DressingMatrices solve_main_system(const ResidueSystem& sys) {
    const auto lu = sys.M.partialPivLu();
    guard_system(sys.M, lu.determinant(), "main residue system");
    DressingMatrices d;
    for (int n = 0; n < 3; ++n) {
        const Vec6 u = lu.solve(sys.v[n]);
        for (int k = 0; k < 3; ++k) {
            d.B1(n, k) = u(k);
            d.B2(n, k) = u(3 + k);
        }
    }
    return d;
}

double column_chain_residual(const DressingMatrices& d) {
    const cd w = constants::omega();
    const Mat3& c = d.B2;
    const std::array<std::array<cd, 3>, 3> chains = {{
        {c(0, 0), w * w * c(1, 1), w * c(2, 2)},
        {c(1, 0), w * w * c(2, 1), w * c(0, 2)},
        {c(2, 0), w * w * c(0, 1), w * c(1, 2)},
    }};
    double worst = 0.0;
    for (const auto& ch : chains)
        worst = std::max({worst, std::abs(ch[0] - ch[1]), std::abs(ch[1] - ch[2]), std::abs(ch[0] - ch[2])});
    return worst;
}

R0Fit r0_from_B2(const DressingMatrices& d, double X) {
    const cd w = constants::omega();
    R0Fit fit;
    fit.R0 = d.B2 * diag3(-1.0, -w * w, -w);
    const Mat3 Om = constants::Omega();
    const Mat3 Oi = inverse(Om);
    const Mat3 J = constants::J();
    const Mat3 Pa = Om * diag3(1.0, 0.0, 0.0) * J * Oi;
    const Mat3 Pb = Om * diag3(0.0, 0.0, 1.0) * J * Oi;
    const Mat3 C = Om * diag3(0.0, 1.0, 0.0) * J * Oi;
    Eigen::Matrix<cd, 9, 2> design;
    Eigen::Matrix<cd, 9, 1> target;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            design(3 * i + j, 0) = Pa(i, j);
            design(3 * i + j, 1) = Pb(i, j);
            target(3 * i + j) = fit.R0(i, j) - C(i, j);
        }
    const Eigen::Matrix<cd, 2, 1> sol = design.colPivHouseholderQr().solve(target);
    fit.exp_m2v = sol(0);
    fit.exp_p2v = sol(1);
    fit.residual = (design * sol - target).cwiseAbs().maxCoeff();
    fit.residual = std::max(fit.residual, std::abs(fit.exp_m2v * fit.exp_p2v - 1.0));
    if (fit.residual > 1e-6 || !(fit.exp_m2v.real() > 0.0))
        throw Error(ErrorCode::FitResidualTooLarge, "R(0) does not match the expected pattern (residual " +
                                                        std::to_string(fit.residual) + ", e^{-2v} = " +
                                                        std::to_string(fit.exp_m2v.real()) + ")");
    fit.v0 = -0.5 * std::log(fit.exp_m2v.real());
    if (X > 0.0) fit.consistency = std::abs(fit.exp_m2v + fit.exp_p2v - (3.0 * X - 2.0));
    return fit;
}

ReducedSystem build_reduced_system(cd a) {
    if (a == cd(0.0)) throw Error(ErrorCode::InvalidArgument, "alpha_hat must be nonzero");
    const cd w = constants::omega();
    const cd w2 = w * w;
    ReducedSystem s;
    s.alpha_hat = a;
    s.M1 << 1.0, a / (1.0 - w), 0.0, 0.0, -a / (2.0 * w), 0.0,
            0.0, 1.0, a * w2 / (w2 - 1.0), 0.0, 0.0, -a * w2 / 2.0,
            a * w / (w - w2), 0.0, 1.0, -a / (2.0 * w), 0.0, 0.0,
            0.0, 0.0, a / 2.0, 1.0, 0.0, a * w2 / (w2 - 1.0),
            a / 2.0, 0.0, 0.0, a * w / (w - w2), 1.0, 0.0,
            0.0, a / 2.0, 0.0, 0.0, a / (1.0 - w), 1.0;
    s.M2 = s.M1;
    s.M2.col(0) *= w;
    s.M2.col(3) *= -w2;
    s.M2.col(3) -= s.M2.col(0);
    s.w3 << 1.0, w2, w, w2, w, 1.0;
    s.w3 *= -a;
    return s;
}

cd det_M1_closed_form(double phi) {
    return 2.0 * I * std::exp(3.0 * I * phi) * (9.0 * std::sin(phi - kPi / 3.0) + 8.0 - std::sin(3.0 * phi));
}

cd numerator_closed_form(double phi) {
    const double sp = std::sin(phi);
    return 6.0 * I * std::exp(3.0 * I * phi) *
           (5.0 + 2.0 * sp * sp + 4.0 * std::sin(phi - kPi / 3.0) + kSqrt3 * std::sin(2.0 * phi));
}

double cramer_exp_m2v(cd a) {
    const ReducedSystem s = build_reduced_system(a);
    const cd det1 = s.M1.partialPivLu().determinant();
    guard_system(s.M1, det1, "reduced system");
    Mat6 num = s.M2;
    num.col(0) = s.w3;
    const cd q = num.partialPivLu().determinant() / det1;
    return (q - 1.0).real();
}

double cramer_v0(cd a) {
    const double e = cramer_exp_m2v(a);
    if (!(e > 0.0)) throw Error(ErrorCode::NearSingularSystem, "Cramer route produced a non-positive e^{-2v0}");
    return -0.5 * std::log(e);
}

double closed_form_exp_m2v(double phi) {
    const double S = std::sin(phi - kPi / 3.0);
    if (std::abs(1.0 + S) < 1e-12) throw Error(ErrorCode::AtSingularity, "sin(phi - pi/3) = -1");
    return (2.0 - S) / (1.0 + S);
}

double main_system_exp_m2v(cd a) {
    return r0_from_B2(solve_main_system(build_main_system(a))).exp_m2v.real();
}

Mat3 global_parametrix(const MonodromyPoint& m, cd zeta) {
    if (std::abs(std::abs(zeta) - 1.0) < 1e-12) throw Error(ErrorCode::OnCut, "zeta lies on the unit circle");
    if (m.A == 0.0) throw Error(ErrorCode::ZeroA, "A must be nonzero");
    const cd w = constants::omega();
    const cd wb = std::conj(w);
    const cd L = std::log(cd(3.0 * m.A, 0.0));
    const std::array<std::array<cd, 3>, 6> lnD = {{
        {-L, L, 0.0}, {0.0, L, -L}, {L, 0.0, -L}, {L, -L, 0.0}, {0.0, -L, L}, {-L, 0.0, L}}};
    const std::array<std::pair<cd, cd>, 6> ends = {{
        {1.0, -wb}, {-wb, w}, {w, -1.0}, {-1.0, wb}, {wb, -w}, {-w, 1.0}}};
    const cd rot = std::exp(I * (kPi / 6.0));
    std::array<cd, 3> expo = {0.0, 0.0, 0.0};
    for (int k = 0; k < 6; ++k) {
        const cd r = (zeta - ends[k].first) / (zeta - ends[k].second);
        const cd lg = std::log(r * rot) - I * (kPi / 6.0);
        for (int j = 0; j < 3; ++j) expo[j] += -lnD[k][j] / (2.0 * kPi * I) * lg;
    }
    return diag3(std::exp(expo[0]), std::exp(expo[1]), std::exp(expo[2]));
}

cd z_map(double x, cd zeta) {
    if (zeta == cd(0.0)) throw Error(ErrorCode::InvalidArgument, "zeta must be nonzero");
    return std::sqrt(2.0 * x) * std::exp(0.75 * kPi * I) * std::pow(3.0, 0.25) * (zeta - 1.0) / std::sqrt(zeta);
}

LocalFrame local_frame_data(const AsymptoticParams& p, double x) {
    if (p.point.A > 0.0) throw Error(ErrorCode::WrongComponent, "local frame needs A < 0");
    if (!(x > 0.0)) throw Error(ErrorCode::InvalidArgument, "x must be positive");
    LocalFrame f;
    f.z_coefficient = std::sqrt(2.0 * x) * std::exp(0.75 * kPi * I) * std::pow(3.0, 0.25);
    f.alpha = alpha_of_x(p, x);
    f.nu = p.nu;
    f.m << 0.0, -f.alpha, f.nu / f.alpha, 0.0;
    const cd half = std::exp(0.5 * kPi * I * f.nu);
    const cd pw = std::exp(f.nu * std::log(2.0 * kSqrt3));
    f.theta1 = diag3(std::exp(kPi * I * f.nu), half / pw, half * pw);
    return f;
}

}  // namespace ptoda
