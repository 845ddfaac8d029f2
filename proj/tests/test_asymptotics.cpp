#include <doctest.h>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_gamma.h>

#include "ptoda/asymptotics.hpp"
#include "support.hpp"

using namespace ptoda;
using testing_support::Gen;
using testing_support::test_point;
using testing_support::wrap_pi;

namespace {

// Independent oracle: GSL returns log|Gamma| and arg Gamma reduced mod 2 pi.
cd gsl_log_gamma(cd z) {
    gsl_sf_result lnr, arg;
    gsl_sf_lngamma_complex_e(z.real(), z.imag(), &lnr, &arg);
    return {lnr.val, arg.val};
}

}  // namespace

TEST_CASE("log_gamma agrees with GSL modulo 2 pi") {
    gsl_set_error_handler_off();
    Gen g(31);
    for (int i = 0; i < 500; ++i) {
        const cd z(g.uniform(0.05, 6.0), g.uniform(-5.0, 5.0));
        const cd ours = log_gamma(z), ref = gsl_log_gamma(z);
        CHECK(std::abs(ours.real() - ref.real()) < 1e-11 * std::max(1.0, std::abs(ref.real())));
        CHECK(std::abs(wrap_pi(ours.imag() - ref.imag())) < 1e-10);
    }
    CHECK_THROWS_AS(log_gamma(cd(-0.5, 1.0)), Error);
    CHECK(std::abs(log_gamma(cd(0.5, 0.0)) - cd(0.5 * std::log(kPi), 0.0)) < 1e-14);
}

TEST_CASE("log_gamma is continuous along the nu ray") {
    double prev = log_gamma(cd(0.5, 0.0)).imag();
    for (int k = 1; k <= 4000; ++k) {
        const double cur = log_gamma(cd(0.5, -k * 1e-3)).imag();
        REQUIRE(std::abs(cur - prev) < 1e-2);
        prev = cur;
    }
}

TEST_CASE("params_from_point examples") {
    const auto p = params_from_point(test_point());
    CHECK(std::abs(p.nu - cd(-0.5, 0.0)) < 1e-15);
    CHECK(std::abs(p.nu0) < 1e-15);
    CHECK(std::abs(p.arg_gamma) < 1e-15);
    // printed phase 2 pi/3 shifted by the documented pi
    CHECK(std::abs(wrap_pi(p.psi - (2.0 * kPi / 3.0 + kPi))) < 1e-14);

    // A = -1 lies on the partner component at s = 0, |B|^2 = 4/3
    const double xr = (1.0 + 3.0) / 6.0;
    const auto r = params_from_point(validate_point(-1.0, 0.0, xr, std::sqrt(4.0 / 3.0 - xr * xr)));
    CHECK(std::abs(r.nu0 - cd(0.0, std::log(3.0) / (2.0 * kPi))) < 1e-14);
    CHECK(std::abs(r.nu0.imag() - 0.17485) < 1e-5);

    const auto radial = validate_point(1.0 / 3.0, 0.0, 0.0, 0.0);
    CHECK_THROWS_AS(params_from_point(radial), Error);
}

TEST_CASE("property: parameter invariants on the partner component") {
    gsl_set_error_handler_off();
    Gen g(32);
    for (int i = 0; i < 1000; ++i) {
        const auto m = g.partner_point();
        const auto p = params_from_point(m);
        CHECK(std::abs(p.nu.real() + 0.5) < 1e-14);
        CHECK(std::abs(p.nu0.real()) < 1e-15);
        CHECK(std::abs(std::abs(p.sigma) - 1.0) < 1e-12);
        CHECK(std::abs(std::norm(p.s1) - std::abs(1.0 - std::exp(2.0 * kPi * cd(0.0, 1.0) * p.nu))) < 1e-10);
        CHECK(std::abs(p.drift + p.nu.imag()) < 1e-15);
        CHECK(std::abs(wrap_pi(p.arg_gamma - gsl_log_gamma(-p.nu).imag())) < 1e-10);
    }
}

TEST_CASE("phase examples") {
    const auto p = params_from_point(test_point());
    const double s3 = std::sqrt(3.0);
    for (double x : {0.5, 3.0, 40.0}) {
        const auto e = theta_of_x(p, x);
        CHECK(std::abs(e.theta - (-2.0 * s3 * x + kPi / 2.0)) < 1e-12 * x);
        CHECK(std::abs(e.theta - e.phi + kPi / 3.0) < 1e-13);
        CHECK(std::abs(theta_of_x(p, x + kPi / s3).theta - (e.theta - 2.0 * kPi)) < 1e-12 * x);
    }
}

TEST_CASE("property: dtheta/dx matches finite differences") {
    Gen g(33);
    for (int i = 0; i < 200; ++i) {
        const auto p = params_from_point(g.partner_point());
        const double x = g.uniform(2.0, 80.0), h = 1e-5;
        const double fd = (theta_of_x(p, x + h).theta - theta_of_x(p, x - h).theta) / (2.0 * h);
        CHECK(std::abs(dtheta_dx(p, x) - fd) < 1e-7);
    }
}

TEST_CASE("v0 leading term") {
    CHECK(std::abs(v0_from_sin(0.5)) < 1e-16);
    CHECK(std::abs(v0_from_sin(1.0) - 0.5 * std::log(2.0)) < 1e-16);
    CHECK_THROWS_AS(v0_from_sin(-1.0), Error);
    try {
        v0_from_sin(-1.0);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::AtSingularity);
    }
    for (double t = -3.0; t < 3.0; t += 0.01) {
        const double sn = std::sin(t);
        if (1.0 + sn < 1e-6) continue;
        const double v = v0_from_sin(sn), X = X_from_sin(sn);
        CHECK(std::abs(std::exp(2 * v) + std::exp(-2 * v) - (3 * X - 2)) < 1e-12 * std::max(1.0, X));
        CHECK(X >= 4.0 / 3.0 - 1e-15);
    }
}

TEST_CASE("property: v0 derivative matches finite differences") {
    Gen g(34);
    const auto p = params_from_point(test_point());
    int tested = 0;
    for (int i = 0; i < 500; ++i) {
        const auto q = i % 2 ? p : params_from_point(g.partner_point());
        const double x = g.uniform(5.0, 60.0), h = 1e-6;
        if (1.0 + std::sin(theta_of_x(q, x).theta) < 0.05) continue;
        const double fd = (v0_asym(q, x + h) - v0_asym(q, x - h)) / (2.0 * h);
        CHECK(std::abs(v0_asym_derivative(q, x) - fd) < 1e-7);
        ++tested;
    }
    CHECK(tested > 300);
    // at a crest of sin theta the derivative vanishes
    const double xc = (kPi / 2.0 - 2.0 * kPi * 10.0 - kPi / 2.0) / (-2.0 * std::sqrt(3.0));
    CHECK(std::abs(v0_asym_derivative(p, xc)) < 1e-10);
}

TEST_CASE("singularity locations") {
    const auto p = params_from_point(test_point());
    CHECK(std::abs(root_formula_uncorrected(p, 5) - 31.0 * kPi / (6.0 * std::sqrt(3.0))) < 1e-13);
    CHECK(std::abs(root_formula_uncorrected(p, 5) - 9.3715) < 1e-3);
    const auto set = singularities(p, 5.0, 50.0);
    const SingularityPair* fifth = nullptr;
    for (const auto& r : set.roots)
        if (r.n == 5) fifth = &r;
    REQUIRE(fifth != nullptr);
    // frozen from the closed-form phase; differs from the printed formula by pi/(3 sqrt 3)
    CHECK(std::abs(fifth->x_exact - 9.975896503288304) < 1e-10);
    CHECK(std::abs(fifth->x_exact - fifth->x_printed - kPi / (3.0 * std::sqrt(3.0))) < 1e-10);
    for (size_t i = 1; i < set.roots.size(); ++i) {
        CHECK(set.roots[i].x_exact > set.roots[i - 1].x_exact);
        CHECK(std::abs(set.roots[i].x_exact - set.roots[i - 1].x_exact - kPi / std::sqrt(3.0)) < 1e-10);
    }
    for (const auto& r : set.roots) {
        CHECK(std::abs(1.0 + std::sin(theta_of_x(p, r.x_exact).theta)) < 1e-10);
        CHECK(std::abs(r.x_exact - r.x_asym) < 1e-10);
    }
    CHECK(in_exclusion(set, fifth->x_exact + 0.05));
    CHECK_FALSE(in_exclusion(set, fifth->x_exact + 0.5));
    CHECK_THROWS_AS(v0_asym(p, fifth->x_exact), Error);
}

TEST_CASE("property: formula gap shrinks with n when the drift is nonzero") {
    Gen g(35);
    int checked = 0;
    for (int i = 0; i < 40; ++i) {
        const auto p = params_from_point(g.partner_point());
        if (std::abs(p.drift) < 1e-3) continue;
        const auto roots = singularities(p, 5.0, 60.0).roots;
        double prev = 1e300;
        for (const auto& r : roots) {
            const double gap = std::abs(r.x_exact - r.x_asym);
            CHECK(gap < prev);
            prev = gap;
            CHECK(std::abs(1.0 + std::sin(theta_of_x(p, r.x_exact).theta)) < 1e-10);
        }
        ++checked;
    }
    CHECK(checked > 20);
}

TEST_CASE("PIII(D7) change of variables") {
    auto a = piii_map(0.0, 0.75);
    CHECK(std::abs(a.s - 1.0) < 1e-15);
    CHECK(std::abs(a.wtilde - 1.0) < 1e-15);
    auto b = piii_map(0.0, 3.0);
    CHECK(std::abs(b.s - 8.0) < 1e-14);
    CHECK(std::abs(b.wtilde - 2.0) < 1e-14);
    Gen g(36);
    for (int i = 0; i < 500; ++i) {
        const double v = g.uniform(-3.0, 3.0), x = g.uniform(0.01, 100.0);
        const auto m = piii_map(v, x);
        const auto [x2, v2] = piii_unmap(m.s, m.wtilde);
        CHECK(std::abs(x2 - x) < 1e-14 * x);
        CHECK(std::abs(v2 - v) < 1e-13);
    }
}

TEST_CASE("w-tilde asymptotics is the mapped leading term") {
    Gen g(37);
    const auto p = params_from_point(test_point());
    for (int i = 0; i < 300; ++i) {
        const double s = g.uniform(2.0, 500.0);
        const double x = 0.75 * std::cbrt(s * s);
        if (1.0 + std::sin(theta_of_x(p, x).theta) < 1e-3) continue;
        const double ref = piii_map(v0_asym(p, x), x).wtilde;
        CHECK(std::abs(wtilde_asym(p, s) - ref) < 1e-12 * std::max(1.0, ref));
    }
    // sin = 1/2: theta = pi/6 + 2 pi k, solve for x on the linear phase
    const double x_half = (kPi / 2.0 - kPi / 6.0 + 2.0 * kPi * 20.0) / (2.0 * std::sqrt(3.0));
    const double s_half = std::pow(4.0 * x_half / 3.0, 1.5);
    CHECK(std::abs(wtilde_asym(p, s_half) - std::cbrt(s_half)) < 1e-9 * std::cbrt(s_half));
    const double x_one = (2.0 * kPi * 20.0) / (2.0 * std::sqrt(3.0));
    const double s_one = std::pow(4.0 * x_one / 3.0, 1.5);
    CHECK(std::abs(wtilde_asym(p, s_one) - std::cbrt(s_one) / 2.0) < 1e-9 * std::cbrt(s_one));
}
