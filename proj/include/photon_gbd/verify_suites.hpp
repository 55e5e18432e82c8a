// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

// Ready-made verification suites over documented default grids. Each check
// reduces an exact mathematical identity to a residual that would be zero in
// exact arithmetic, so the tolerances bound rounding error only — any real
// defect shows up orders of magnitude above them.

namespace photon_gbd {

struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;

    bool all_pass() const noexcept {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    double worst_residual() const noexcept {
        double worst = 0.0;
        for (const auto& c : checks) worst = c.residual > worst ? c.residual : worst;
        return worst;
    }
};

// Count-convolution identity for the poisson, bose_einstein, and glauber
// laws over a grid of volume pairs, n up to 200.
SuiteReport run_convolution_suite();

// Rising-factorial addition identity (n <= 300, arguments up to 100) and
// multiplicativity of its generating function at order 100.
SuiteReport run_vandermonde_suite();

// Glauber generating function: additivity in the observation window at
// order 60 over a 27-point parameter grid, the closed form of p_0, and the
// large-gamma approach to the poisson law.
SuiteReport run_gf_suite();

// Split-device facts: the four device kinds agree bit-for-bit, cascades
// compose, the transmitted marginal reproduces the law at the reduced
// volume, and the thermal n = 2 conditional shows its non-binomial edge
// excess.
SuiteReport run_marginal_suite();

std::vector<SuiteReport> run_all_suites();

// Deliberately inconsistent inputs (mismatched occupancy between the parts
// and the whole). Every check here is expected to FAIL; it guards against a
// verification harness that cannot fail.
SuiteReport run_negative_control();

}  // namespace photon_gbd
