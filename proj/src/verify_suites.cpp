// SPDX-License-Identifier: Apache-2.0
#include "photon_gbd/verify_suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <span>

#include "photon_gbd/dist.hpp"
#include "photon_gbd/sampling.hpp"
#include "photon_gbd/scenarios.hpp"
#include "photon_gbd/series.hpp"

namespace photon_gbd {

namespace {

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

CheckResult make_check(std::string name, double residual, double tolerance) {
    CheckResult c;
    c.name = std::move(name);
    c.residual = residual;
    c.tolerance = tolerance;
    c.pass = residual <= tolerance;
    return c;
}

// max |p_k - q_k| over the overlap, counting entries past either end as 0
double max_abs_diff(std::span<const double> p, std::span<const double> q) {
    const std::size_t n = std::max(p.size(), q.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double a = k < p.size() ? p[k] : 0.0;
        const double b = k < q.size() ? q[k] : 0.0;
        worst = std::max(worst, std::fabs(a - b));
    }
    return worst;
}

bool bitwise_equal(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

}  // namespace

SuiteReport run_convolution_suite() {
    constexpr double kTol = 1e-10;
    const double volumes[] = {0.5, 1.0, 2.7, 10.0};
    const double occupancies[] = {0.3, 1.0, 3.0};
    SuiteReport report;
    report.suite = "convolution";

    for (double a : volumes)
        for (double b : volumes) {
            const PhaseVolume A(a);
            const PhaseVolume B(b);
            for (double w : occupancies) {
                report.checks.push_back(make_check(
                    "be A=" + fmt_g(a) + " B=" + fmt_g(b) + " w=" + fmt_g(w),
                    verify_convolution(StatModel::bose_einstein(DegeneracyParam(w)), A,
                                       B, 200),
                    kTol));
                report.checks.push_back(make_check(
                    "poisson A=" + fmt_g(a) + " B=" + fmt_g(b) + " density=" + fmt_g(w),
                    verify_convolution(StatModel::poisson(w), A, B, 200), kTol));
            }
        }

    // glauber obeys the same identity with observation windows as volumes
    const double pairs[][2] = {{1.0, 1.0}, {10.0, 0.5}};
    for (const auto& gw : pairs)
        for (const auto& ab : {std::pair{0.7, 1.3}, std::pair{1.0, 1.0}})
            report.checks.push_back(make_check(
                "glauber gamma=" + fmt_g(gw[0]) + " rate=" + fmt_g(gw[1]) +
                    " tau1=" + fmt_g(ab.first) + " tau2=" + fmt_g(ab.second),
                verify_convolution(StatModel::glauber(gw[0], gw[1]),
                                   PhaseVolume(ab.first), PhaseVolume(ab.second), 120),
                kTol));
    return report;
}

SuiteReport run_vandermonde_suite() {
    constexpr double kTol = 1e-11;
    SuiteReport report;
    report.suite = "vandermonde";

    const double args[] = {0.5, 1.0, 2.5, 10.0, 37.5, 100.0};
    for (double a : args)
        for (double b : args) {
            double worst = 0.0;
            for (long n = 0; n <= 300; ++n)
                worst = std::max(worst, verify_vandermonde(a, b, n));
            report.checks.push_back(
                make_check("addition a=" + fmt_g(a) + " b=" + fmt_g(b) + " n<=300",
                           worst, kTol));
        }

    const double gf_args[] = {0.5, 1.0, 2.5, 7.0};
    for (double a : gf_args)
        for (double b : gf_args)
            report.checks.push_back(
                make_check("gf-product a=" + fmt_g(a) + " b=" + fmt_g(b) + " N=100",
                           verify_rf_gf_multiplicativity(a, b, 100), kTol));
    return report;
}

SuiteReport run_gf_suite() {
    SuiteReport report;
    report.suite = "gf";
    const double grid[] = {0.1, 1.0, 10.0};

    for (double gamma : grid)
        for (double rate : grid)
            for (double tau : grid) {
                report.checks.push_back(make_check(
                    "window-additivity gamma=" + fmt_g(gamma) + " rate=" + fmt_g(rate) +
                        " tau=" + fmt_g(tau),
                    verify_gf_multiplicativity(gamma, rate, 0.4 * tau, 0.6 * tau, 60),
                    1e-10));
                // constant term against its closed form
                const double p0 = glauber_pmf({gamma, rate, tau}, 8)[0];
                const double closed = std::exp(
                    -(std::sqrt(gamma * gamma + 2.0 * gamma * rate) - gamma) * tau);
                report.checks.push_back(make_check(
                    "p0-closed-form gamma=" + fmt_g(gamma) + " rate=" + fmt_g(rate) +
                        " tau=" + fmt_g(tau),
                    std::fabs(p0 - closed) / closed, 1e-12));
            }

    // narrowband limit: gamma >> rate turns the law poissonian
    for (const auto& [rate, tau] : {std::pair{1.0, 1.0}, std::pair{2.0, 0.7}}) {
        const PmfTable table = glauber_pmf({1e6, rate, tau}, 40);
        double worst = 0.0;
        for (long k = 0; k <= 40; ++k)
            worst = std::max(worst, std::fabs(table[std::size_t(k)] -
                                              poisson_pmf(k, rate * tau)));
        report.checks.push_back(make_check(
            "poisson-limit gamma=1e6 rate=" + fmt_g(rate) + " tau=" + fmt_g(tau),
            worst, 1e-6));
    }
    return report;
}

SuiteReport run_marginal_suite() {
    constexpr double kTol = 1e-10;
    SuiteReport report;
    report.suite = "marginal";

    const auto marginal_residual = [](const BeamState& beam, double alpha) {
        const SplitDevice dev(DeviceKind::beamsplitter, alpha);
        const PmfTable via_joint = transmitted_marginal(beam, dev, 1e-12);
        const PmfTable direct =
            beam.model.pmf_table(PhaseVolume(alpha * beam.volume.cells()), 1e-12);
        return max_abs_diff(via_joint.probs(), direct.probs());
    };

    for (double s : {1.0, 2.7})
        for (double w : {0.5, 1.0, 3.0})
            for (double alpha : {0.3, 0.5})
                report.checks.push_back(make_check(
                    "marginal be S=" + fmt_g(s) + " w=" + fmt_g(w) +
                        " alpha=" + fmt_g(alpha),
                    marginal_residual(
                        {StatModel::bose_einstein(DegeneracyParam(w)), PhaseVolume(s)},
                        alpha),
                    kTol));
    for (double d : {0.5, 2.0})
        for (double s : {1.0, 3.0})
            for (double alpha : {0.25, 0.5})
                report.checks.push_back(make_check(
                    "marginal poisson density=" + fmt_g(d) + " S=" + fmt_g(s) +
                        " alpha=" + fmt_g(alpha),
                    marginal_residual({StatModel::poisson(d), PhaseVolume(s)}, alpha),
                    kTol));

    // all four device kinds must agree bit for bit
    for (const auto& beam :
         {BeamState{StatModel::bose_einstein(DegeneracyParam(1.0)), PhaseVolume(2.0)},
          BeamState{StatModel::poisson(1.5), PhaseVolume(1.0)}}) {
        const DeviceKind kinds[] = {DeviceKind::diaphragm, DeviceKind::beamsplitter,
                                    DeviceKind::detector, DeviceKind::neutral_filter};
        const JointTable ref =
            joint_output_distribution(beam, SplitDevice(kinds[0], 0.37), 12);
        const PmfTable ref_marginal =
            transmitted_marginal(beam, SplitDevice(kinds[0], 0.37));
        bool identical = true;
        for (int i = 1; i < 4; ++i) {
            const JointTable other =
                joint_output_distribution(beam, SplitDevice(kinds[i], 0.37), 12);
            const PmfTable other_marginal =
                transmitted_marginal(beam, SplitDevice(kinds[i], 0.37));
            identical = identical &&
                        bitwise_equal(other_marginal.probs(), ref_marginal.probs());
            for (long k = 0; k <= 12 && identical; ++k)
                for (long m = 0; m <= 12 && identical; ++m)
                    identical = other.at(k, m) == ref.at(k, m);
        }
        report.checks.push_back(make_check(
            "device-equivalence " + beam.model.describe(), identical ? 0.0 : 1.0, 0.0));
    }

    // two stages compose by transmittance product
    {
        const BeamState beam{StatModel::bose_einstein(DegeneracyParam(1.0)),
                             PhaseVolume(2.0)};
        const SplitDevice two = cascade(SplitDevice(DeviceKind::neutral_filter, 0.6),
                                        SplitDevice(DeviceKind::neutral_filter, 0.5));
        const PmfTable a = transmitted_marginal(beam, two);
        const PmfTable b =
            transmitted_marginal(beam, SplitDevice(DeviceKind::neutral_filter, 0.3));
        report.checks.push_back(
            make_check("cascade 0.6x0.5 vs 0.3", max_abs_diff(a.probs(), b.probs()),
                       kTol));
    }

    // thermal split at S = 1, n = 2 must beat binomial by >= 0.1 in total
    // variation (the edge excess); report any shortfall from that gap
    {
        const BeamState beam{StatModel::bose_einstein(DegeneracyParam(1.0)),
                             PhaseVolume(1.0)};
        const JointTable joint =
            joint_output_distribution(beam, SplitDevice(DeviceKind::beamsplitter, 0.5), 8);
        const auto conditional = joint.conditional_given_total(2);
        const double binom[] = {0.25, 0.5, 0.25};
        const double tv = tv_distance(conditional, binom);
        report.checks.push_back(
            make_check("deviation-from-binomial shortfall n=2 S=1",
                       std::max(0.0, 0.1 - tv), 0.0));

        // and the same conditional must match the closed form
        const GbdTable closed = two_photon_table(0.5, 1.0);
        report.checks.push_back(make_check(
            "conditional-vs-closed-form n=2 S=1",
            max_abs_diff(conditional, closed.values()), 1e-12));
    }
    return report;
}

std::vector<SuiteReport> run_all_suites() {
    return {run_convolution_suite(), run_vandermonde_suite(), run_gf_suite(),
            run_marginal_suite()};
}

SuiteReport run_negative_control() {
    SuiteReport report;
    report.suite = "negative-control";
    // parts at w = 1 against a whole at w = 1.5: the identity must break
    const double residual = verify_convolution(
        StatModel::bose_einstein(DegeneracyParam(1.0)),
        StatModel::bose_einstein(DegeneracyParam(1.0)),
        StatModel::bose_einstein(DegeneracyParam(1.5)), PhaseVolume(1.0),
        PhaseVolume(1.0), 50);
    report.checks.push_back(
        make_check("mismatched-occupancy convolution", residual, 1e-10));
    return report;
}

}  // namespace photon_gbd
