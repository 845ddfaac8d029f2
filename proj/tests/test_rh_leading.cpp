#include <doctest.h>

#include "ptoda/rh_leading.hpp"
#include "support.hpp"

using namespace ptoda;
using testing_support::Gen;
using testing_support::test_point;
using testing_support::wrap_pi;

namespace {

const cd I(0.0, 1.0);

bool is_unit_with_one_entry(const Mat3& m, int r, int c) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j && m(i, j) != cd(1.0)) return false;
            if (i != j && !(i == r && j == c) && m(i, j) != cd(0.0)) return false;
        }
    return true;
}

// Phase with sin(phi - pi/3) = S, choosing the branch phi - pi/3 in [-pi/2, pi/2].
double phi_for_sin(double S) { return std::asin(S) + kPi / 3.0; }

}  // namespace

TEST_CASE("leading data on the circle of radius sqrt 12") {
    Gen g(41);
    for (int i = 0; i < 200; ++i) {
        const auto p = params_from_point(g.partner_point());
        const double x = g.uniform(5.0, 80.0);
        const auto L = leading_data(p, x);
        CHECK(std::abs(std::abs(L.alpha_hat) - std::sqrt(12.0)) < 1e-10);
        CHECK(L.phase_residual < 1e-10);
        CHECK(L.X >= 4.0 / 3.0 - 1e-15);
        const cd expect = -p.nu * std::exp(-1.5 * kPi * I) / (std::sqrt(3.0) * 2.0 * x);
        CHECK(std::abs(L.alpha_hat * L.beta_hat - expect) < 1e-10 * std::max(1.0, std::abs(expect)));
        CHECK(std::abs(L.beta_hat) * x < 1.0);
    }
    const auto p = params_from_point(test_point());
    for (double x : {7.0, 33.3, 71.0}) {
        const auto L = leading_data(p, x);
        CHECK(std::abs(wrap_pi(L.phi + 2.0 * std::sqrt(3.0) * x - kPi / 2.0 + p.psi)) < 1e-10);
    }
    CHECK_THROWS_AS(leading_data(p, 0.0), Error);
}

TEST_CASE("dressing matrices") {
    const cd a(1.3, -2.0), zeta(0.4, 0.9);
    const Mat3 E1 = dressing_E(Stationary::One, a, zeta);
    CHECK(is_unit_with_one_entry(E1, 1, 2));
    CHECK(std::abs(E1(1, 2) + a / (zeta - 1.0)) < 1e-15);
    const cd w = constants::omega();
    CHECK(std::abs(dressing_E(Stationary::MinusOne, a, 0.0)(2, 1) + a * w * w) < 1e-15);
    for (Stationary u : kStationaryPoints) {
        CHECK(std::abs(determinant(dressing_E(u, a, zeta)) - 1.0) < 1e-15);
        CHECK_THROWS_AS(dressing_E(u, a, stationary_value(u)), Error);
    }
}

TEST_CASE("stationary points are the sixth roots of unity") {
    cd prod = 1.0;
    for (Stationary u : kStationaryPoints) {
        const cd z = stationary_value(u);
        CHECK(std::abs(std::pow(z, 6) - 1.0) < 1e-14);
        CHECK(std::string(stationary_name(u)).size() > 0);
        prod *= z;
    }
    CHECK(std::abs(prod + 1.0) < 1e-14);
}

TEST_CASE("factorizations of the dressed jumps") {
    Gen g(42);
    for (int i = 0; i < 200; ++i) {
        const cd a = alpha_hat_from_phi(g.uniform(-kPi, kPi));
        const cd b = g.complex(0.1);
        const cd zeta(g.uniform(-2.0, 2.0), g.uniform(-2.0, 2.0));
        const auto rep = verify_factorizations(a, b, zeta);
        REQUIRE(rep.entries.size() == 6);
        for (const auto& e : rep.entries) {
            const double scale = std::max(1.0, max_abs(printed_jump(e.u, a, b, zeta)));
            CHECK(e.residual_vs_corrected < 1e-12 * scale);
            if (e.known_typo) {
                CHECK(e.u == Stationary::MinusOmegaBar);
                CHECK_FALSE(e.matches_printed);
            } else {
                CHECK(e.matches_printed);
            }
        }
    }
    // beta = 0 kills the dressed part
    const cd a = alpha_hat_from_phi(0.3), zeta(0.2, -0.7);
    for (Stationary u : kStationaryPoints) {
        CHECK(max_abs(dressed_jump(u, a, 0.0, zeta) - Mat3::Identity()) == 0.0);
        if (u != Stationary::MinusOmegaBar)
            CHECK(max_abs(printed_jump(u, a, 0.0, zeta) - inverse(dressing_E(u, a, zeta))) < 1e-14);
    }
}

TEST_CASE("main residue system determinant") {
    Gen g(43);
    for (int i = 0; i < 200; ++i) {
        const cd a = g.complex(4.0);
        const auto sys = build_main_system(a);
        const cd lu = sys.M.partialPivLu().determinant();
        const cd cf = det_main_closed_form(a);
        CHECK(std::abs(lu - cf) < 1e-10 * std::max(1.0, std::abs(cf)));
    }
    CHECK(std::abs(det_main_closed_form(alpha_hat_from_phi(phi_for_sin(-1.0)))) < 1e-10);
    CHECK(std::abs(det_main_closed_form(alpha_hat_from_phi(kPi / 3.0))) > 1e-2);
    CHECK_THROWS_AS(build_main_system(0.0), Error);
}

TEST_CASE("property: det M vanishes exactly where sin(phi - pi/3) = -1") {
    // a sign change of Re or Im alone is not enough; look for local minima of |det M|
    const int n = 6284;
    std::vector<double> mod(n);
    for (int k = 0; k < n; ++k) mod[k] = std::abs(det_main_closed_form(alpha_hat_from_phi(-kPi + k * 1e-3)));
    for (int k = 1; k + 1 < n; ++k) {
        if (!(mod[k] < mod[k - 1] && mod[k] < mod[k + 1] && mod[k] < 1e-2)) continue;
        const double phi = -kPi + k * 1e-3;
        CHECK(std::abs(1.0 + std::sin(phi - kPi / 3.0)) < 1e-5);
    }
    CHECK(std::abs(det_main_closed_form(alpha_hat_from_phi(-kPi / 6.0))) < 1e-10);
}

TEST_CASE("dressing solve and R(0)") {
    for (double S : {-0.7, -0.2, 0.0, 0.5, 0.9, 1.0}) {
        const double phi = phi_for_sin(S);
        const double X = 3.0 / ((2.0 - S) * (1.0 + S));
        const auto d = solve_main_system(build_main_system(alpha_hat_from_phi(phi)));
        CHECK(column_chain_residual(d) < 1e-9);
        CHECK(std::abs(-constants::omega() * d.B2(2, 2) - (1.0 - X)) < 1e-9);
        const auto fit = r0_from_B2(d, X);
        CHECK(fit.residual < 1e-9);
        CHECK(fit.consistency < 1e-9);
        CHECK(std::abs(fit.R0(0, 0) - fit.R0(1, 1)) < 1e-9);
        CHECK(std::abs(fit.R0(1, 1) - fit.R0(2, 2)) < 1e-9);
        CHECK(std::abs(fit.exp_m2v.real() - (2.0 - S) / (1.0 + S)) < 1e-8);
    }
    const auto half = r0_from_B2(solve_main_system(build_main_system(alpha_hat_from_phi(phi_for_sin(0.5)))));
    CHECK(std::abs(half.v0) < 1e-9);
    const auto top = r0_from_B2(solve_main_system(build_main_system(alpha_hat_from_phi(phi_for_sin(1.0)))));
    CHECK(std::abs(top.v0 - 0.5 * std::log(2.0)) < 1e-9);
    CHECK_THROWS_AS(solve_main_system(build_main_system(alpha_hat_from_phi(-kPi / 6.0))), Error);
}

TEST_CASE("second residue system") {
    const auto s0 = build_reduced_system(alpha_hat_from_phi(0.0));
    const cd d0 = s0.M1.partialPivLu().determinant();
    const cd expect(0.0, 2.0 * (8.0 - 4.5 * std::sqrt(3.0)));
    CHECK(std::abs(d0 - expect) < 1e-9);
    CHECK(std::abs(det_M1_closed_form(0.0) - expect) < 1e-14);
    CHECK(std::abs(expect.imag() - 0.4115) < 1e-4);
    Gen g(44);
    for (int i = 0; i < 100; ++i) {
        const double phi = g.uniform(-kPi, kPi);
        const auto s = build_reduced_system(alpha_hat_from_phi(phi));
        const cd d1 = s.M1.partialPivLu().determinant();
        const cd d2 = s.M2.partialPivLu().determinant();
        CHECK(std::abs(d1 - det_M1_closed_form(phi)) < 1e-9 * std::max(1.0, std::abs(d1)));
        CHECK(std::abs(d2 + d1) < 1e-9 * std::max(1.0, std::abs(d1)));
    }
    // zeros of both determinants coincide at phi = -pi/6
    CHECK(std::abs(det_M1_closed_form(-kPi / 6.0)) < 1e-12);
}

TEST_CASE("property: three routes to exp(-2 v0) agree") {
    Gen g(45);
    int used = 0;
    for (int i = 0; i < 100; ++i) {
        const double phi = g.uniform(-kPi, kPi);
        if (1.0 + std::sin(phi - kPi / 3.0) < 1e-2) continue;
        const cd a = alpha_hat_from_phi(phi);
        const double c = closed_form_exp_m2v(phi);
        CHECK(std::abs(cramer_exp_m2v(a) - c) < 1e-8 * std::max(1.0, c));
        CHECK(std::abs(main_system_exp_m2v(a) - c) < 1e-8 * std::max(1.0, c));
        ++used;
    }
    CHECK(used > 90);
    CHECK(std::abs(closed_form_exp_m2v(phi_for_sin(0.5)) - 1.0) < 1e-15);
    CHECK(std::abs(closed_form_exp_m2v(phi_for_sin(1.0)) - 0.5) < 1e-15);
    CHECK(std::abs(cramer_v0(alpha_hat_from_phi(phi_for_sin(0.5)))) < 1e-9);
    CHECK_THROWS_AS(closed_form_exp_m2v(-kPi / 6.0), Error);
    CHECK_THROWS_AS(cramer_exp_m2v(alpha_hat_from_phi(-kPi / 6.0)), Error);
}

TEST_CASE("global parametrix") {
    Gen g(46);
    for (int i = 0; i < 20; ++i) {
        const auto m = g.partner_point();
        CHECK(max_abs(global_parametrix(m, 0.0) - Mat3::Identity()) < 1e-8);
        CHECK(max_abs(global_parametrix(m, cd(1e4, 0.0)) - Mat3::Identity()) < 1e-3);
        CHECK(max_abs(global_parametrix(m, cd(0.0, -1e4)) - Mat3::Identity()) < 1e-3);
        const auto jf = jump_factors(m, 1.0, cd(0.5, 0.1));
        for (int arc = 0; arc < 6; ++arc) {
            for (int j = 1; j <= 10; ++j) {
                const double th = (arc + j / 11.0) * kPi / 3.0;
                const double h = 1e-9;
                const Mat3 in = global_parametrix(m, (1.0 - h) * std::exp(I * th));
                const Mat3 out = global_parametrix(m, (1.0 + h) * std::exp(I * th));
                CHECK(max_abs(in - out * jf.bare[arc].D) < 1e-7 * std::max(1.0, max_abs(in)));
            }
        }
    }
    CHECK_THROWS_AS(global_parametrix(test_point(), std::exp(I * 0.3)), Error);
}

TEST_CASE("local frame at the stationary point 1") {
    const auto p = params_from_point(test_point());
    const double x = 30.0;
    const auto f = local_frame_data(p, x);
    CHECK(std::abs(z_map(x, 1.0)) == 0.0);
    const double h = 1e-6;
    const cd dz = (z_map(x, 1.0 + h) - z_map(x, 1.0 - h)) / (2.0 * h);
    CHECK(std::abs(dz - f.z_coefficient) < 1e-8 * std::abs(f.z_coefficient));
    const cd expect_coeff = std::sqrt(2.0 * x) * std::exp(0.75 * kPi * I) * std::pow(3.0, 0.25);
    CHECK(std::abs(f.z_coefficient - expect_coeff) < 1e-12);
    CHECK(std::abs(f.m.determinant() - p.nu) < 1e-14);
    CHECK(std::abs(determinant(f.theta1) - std::exp(2.0 * kPi * I * p.nu)) < 1e-14);
    CHECK_THROWS_AS(local_frame_data(p, -1.0), Error);
}
