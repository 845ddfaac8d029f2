#include <doctest.h>

#include "ptoda/identities.hpp"

using namespace ptoda;

namespace {

SuiteSizes small() {
    SuiteSizes s;
    s.chart_points = 200;
    s.alpha_samples = 50;
    s.route_samples = 20;
    s.zeta_per_point = 4;
    s.arc_samples = 3;
    return s;
}

}  // namespace

TEST_CASE("identity suite passes at reduced sizes") {
    const auto rep = run_identity_suite(7, small());
    CHECK(rep.seed == 7);
    CHECK(rep.all_pass());
    int informational = 0;
    for (const auto& c : rep.checks) {
        CHECK(!c.name.empty());
        if (c.informational) {
            ++informational;
            CHECK(!c.note.empty());
        } else {
            CHECK_MESSAGE(c.pass, c.name << " residual " << c.residual << " threshold " << c.threshold);
            CHECK(c.residual <= c.threshold);
        }
    }
    CHECK(informational >= 1);
}

TEST_CASE("identity suite is deterministic for a seed") {
    const auto a = run_identity_suite(42, small());
    const auto b = run_identity_suite(42, small());
    REQUIRE(a.checks.size() == b.checks.size());
    for (size_t i = 0; i < a.checks.size(); ++i) {
        CHECK(a.checks[i].name == b.checks[i].name);
        CHECK(a.checks[i].residual == b.checks[i].residual);
    }
}
