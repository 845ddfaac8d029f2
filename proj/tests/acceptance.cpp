// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ptoda/asymptotics.hpp"
#include "ptoda/direct_monodromy.hpp"
#include "ptoda/identities.hpp"
#include "ptoda/monodromy.hpp"
#include "ptoda/ode.hpp"

using namespace ptoda;

namespace {

constexpr std::uint64_t kSeed = 7;

struct Outcome {
    bool pass = false;
    std::string detail;
};

MonodromyPoint test_point() {
    return validate_point(-1.0 / 3.0, 2.0 * std::sqrt(2.0) - 2.0, std::sqrt(2.0) / 3.0, 0.0);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

// Groups pass when every non-informational entry passes; informational ones are echoed.
Outcome group(const std::function<void(IdentityReport&)>& run) {
    IdentityReport rep;
    run(rep);
    Outcome o{true, ""};
    for (const auto& c : rep.checks) {
        if (c.informational) {
            o.detail += " [documented deviation " + c.name + ": " + c.note + "]";
            continue;
        }
        if (!c.pass) {
            o.pass = false;
            o.detail += " " + c.name + fmt("=%.3g>%.1g", c.residual, c.threshold);
        }
    }
    if (o.pass) o.detail = fmt("%.0f checks", static_cast<double>(rep.checks.size())) + o.detail;
    return o;
}

Outcome criterion6() {
    const auto p = params_from_point(test_point());
    const double eps = 0.2;
    const auto run = integrate_with_restarts(p, 40.0, 60.0, eps, 1e-10);
    const auto set = singularities(p, 39.0, 61.0, eps);
    double C = 0.0;
    long n = 0;
    for (const auto& seg : run.segments)
        for (const auto& s : seg.samples) {
            if (s.x < 40.0 || s.x > 60.0 || in_exclusion(set, s.x)) continue;
            C = std::max(C, std::abs(s.value - v0_asym(p, s.x)) * s.x);
            ++n;
        }
    return {n > 100 && C <= 5.0, fmt("fitted error constant C = max x|v - v0_asym| = %.3f over %.0f samples (bound 5)", C,
                                     static_cast<double>(n))};
}

Outcome criterion7() {
    const auto p = params_from_point(test_point());
    const auto run = integrate_with_restarts(p, 30.0, 60.0, kDefaultEpsilon, 1e-10);
    const auto set = singularities(p, 29.0, 62.0);
    int streak = 0, best_streak = 0;
    double worst = 0.0;
    for (const auto& ev : run.poles) {
        double d = 1e300;
        for (const auto& r : set.roots) d = std::min(d, std::abs(r.x_exact - ev.x_pole));
        if (ev.x_pole > 30.0 && d < 0.05) {
            best_streak = std::max(best_streak, ++streak);
            worst = std::max(worst, d);
        } else {
            streak = 0;
        }
    }
    // Zero drift: the formula root is exact up to bisection round-off.
    const auto gaps_test = singularities(p, 5.0, 50.0).roots;
    double max_gap0 = 0.0;
    for (const auto& r : gaps_test) max_gap0 = std::max(max_gap0, std::abs(r.x_exact - r.x_asym));
    bool monotone = true;
    int points = 0;
    for (const ChartSY c : {ChartSY{-2.0, 0.5}, ChartSY{-1.0, -1.0}, ChartSY{0.5, 1.0}}) {
        const auto q = params_from_point(from_chart_sy(c));
        const auto roots = singularities(q, 5.0, 50.0).roots;
        double prev = 1e300;
        for (const auto& r : roots) {
            const double g = std::abs(r.x_exact - r.x_asym);
            monotone = monotone && g < prev;
            prev = g;
        }
        ++points;
    }
    const bool pass = best_streak >= 5 && max_gap0 < 1e-10 && monotone;
    return {pass, fmt("%.0f consecutive poles x>30 within %.3g of exact roots; ", best_streak, worst) +
                      fmt("test point formula gap <= %.1e; gap strictly decreasing for %.0f nonzero-drift points: ",
                          max_gap0, points) +
                      (monotone ? "yes" : "no")};
}

Outcome criterion8() {
    const auto p = params_from_point(test_point());
    const auto set = singularities(p, 39.0, 45.0, 0.2);
    const double a = set.roots.at(0).x_exact + 0.2;
    const double b = set.roots.at(1).x_exact - 0.2;
    const Trajectory t = integrate_from_asymptotics(p, a, b, 1e-10);
    const double r = piii_transform_residual(t);
    return {t.poles.empty() && t.reached_end && r < 1e-6,
            fmt("pole-free segment [%.3f, %.3f], transformed residual %.2e (bound 1e-6)", a, b, r)};
}

Outcome criterion9() {
    std::mt19937_64 rng(kSeed);
    std::uniform_real_distribution<double> ux(1.0, 5.0), uv(-1.0, 1.0);
    int good[2] = {0, 0};
    double worst = 0.0;
    std::string failures;
    for (Form f : {Form::PartnerForm, Form::RadialForm}) {
        for (int i = 0; i < 50; ++i) {
            const ZetaSystem sys{f, ux(rng), uv(rng), uv(rng)};
            try {
                const auto c = connection_matrix(sys);
                const auto e = extract_point(c.E1);
                const double r = std::max(std::abs(e.residual1), std::abs(e.residual2));
                worst = std::max(worst, r);
                const bool sign_ok = f == Form::PartnerForm ? e.point.A < 0.0 : e.point.A > 0.0;
                if (sign_ok && r < 1e-5) ++good[f == Form::PartnerForm ? 0 : 1];
            } catch (const Error& err) {
                failures += std::string(" ") + error_name(err.code());
            }
        }
    }
    return {good[0] == 50 && good[1] == 50,
            fmt("partner %.0f/50, radial %.0f/50, worst constraint residual %.2e", good[0], good[1], worst) +
                failures};
}

Outcome criterion10() {
    const auto m = test_point();
    std::vector<RoundtripReport> reps;
    for (double x0 : {30.0, 40.0, 60.0}) reps.push_back(roundtrip(m, x0, true));
    bool decreasing = true;
    for (int k = 0; k < 4; ++k)
        for (size_t i = 1; i < reps.size(); ++i) decreasing = decreasing && reps[i].error[k] < reps[i - 1].error[k];
    const bool small = reps.back().max_error < 10.0 / 60.0;
    std::string d;
    for (const auto& r : reps)
        d += fmt("x0=%.2f err(A,s,x)=(%.2e,%.2e,", r.x0_used, r.error[0], r.error[1]) +
             fmt("%.2e) err(y)=%.2e; ", r.error[2], r.error[3]);
    const double Cfit = reps.back().max_error * reps.back().x0_used;
    d += fmt("C = x0*err at 60 = %.3f", Cfit);
    return {decreasing && small, d};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const SuiteSizes sizes;
    const std::vector<Criterion> criteria = {
        {1, "manifold and algebra suite", 5.0,
         [&] { return group([&](IdentityReport& r) { check_manifold(r, kSeed, sizes); }); }},
        {2, "determinant identities", 5.0,
         [&] { return group([&](IdentityReport& r) { check_determinants(r, kSeed, sizes); }); }},
        {3, "three-route reconstruction", 10.0,
         [&] { return group([&](IdentityReport& r) { check_three_routes(r, kSeed, sizes); }); }},
        {4, "global parametrix", 10.0,
         [&] { return group([&](IdentityReport& r) { check_parametrix(r, kSeed, sizes); }); }},
        {5, "stationary-point factorizations", 1e9,
         [&] { return group([&](IdentityReport& r) { check_factorizations(r, kSeed, sizes); }); }},
        {6, "asymptotics vs ODE", 30.0, criterion6},
        {7, "singularity prediction", 60.0, criterion7},
        {8, "PIII(D7) correspondence", 1e9, criterion8},
        {9, "sign dichotomy", 300.0, criterion9},
        {10, "monodromy round trip", 300.0, criterion10},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = dt < c.budget_s;
        const bool pass = o.pass && in_time;
        if (!pass) ++failed;
        std::printf("%s criterion %d (%s): %s; %.2fs%s\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), dt,
                    in_time ? "" : " over budget");
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
