#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ptoda {

struct IdentityCheck {
    std::string name;
    double residual = 0.0;
    double threshold = 0.0;
    bool pass = false;
    // Informational entries document known deviations and never fail the suite.
    bool informational = false;
    std::string note;
};

struct SuiteSizes {
    int chart_points = 10000;
    int alpha_samples = 1000;
    int route_samples = 200;
    int zeta_per_point = 20;
    int arc_samples = 10;
};

struct IdentityReport {
    std::uint64_t seed = 0;
    std::vector<IdentityCheck> checks;
    bool all_pass() const;
};

IdentityReport run_identity_suite(std::uint64_t seed, const SuiteSizes& sizes = {});

// Individual groups, each appending to the report.
void check_manifold(IdentityReport& rep, std::uint64_t seed, const SuiteSizes& sizes);
void check_determinants(IdentityReport& rep, std::uint64_t seed, const SuiteSizes& sizes);
void check_three_routes(IdentityReport& rep, std::uint64_t seed, const SuiteSizes& sizes);
void check_parametrix(IdentityReport& rep, std::uint64_t seed, const SuiteSizes& sizes);
void check_factorizations(IdentityReport& rep, std::uint64_t seed, const SuiteSizes& sizes);

}  // namespace ptoda
