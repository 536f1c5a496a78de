#ifndef MMK_SUITES_HPP
#define MMK_SUITES_HPP

#include <map>
#include <optional>
#include <string>

#include "equivariant.hpp"
#include "moebius.hpp"
#include "report.hpp"

namespace mmk {

struct RunConfig {
    std::string suite;
    std::uint64_t seed = 20240915;
    int samples = 0; // 0 -> suite default
    int k = 1, l = 1;
    double c = 1.0;               // conformal family constant
    double target_radius = -1.0;  // < 0 -> suite default
    std::optional<MoebiusMap> moebius;
    double tol_scale = 1.0; // multiplies every tolerance (MMK_TOL_SCALE)
    std::map<std::string, double> tol_overrides;
};

// Known suite names: verify-structure, verify-bochner, hopf-invariants,
// scan-conformal, codazzi-check, solve-ode.
bool suite_known(const std::string& name);

Report run_suite(const RunConfig& cfg);

struct OdeRun {
    Report report;
    std::optional<GeneratingProfile> profile;
    double aS0 = 0.0;
    double mismatch = 0.0;
    std::optional<BvpNonexistence> nonexistence;
};

OdeRun run_solve_ode(const RunConfig& cfg);

// CSV of a solved profile: s,a,a_s,residual with 17 significant digits.
std::string profile_csv(int k, int l, const GeneratingProfile& p);

} // namespace mmk

#endif
