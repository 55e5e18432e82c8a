// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "photon_gbd/dist.hpp"
#include "photon_gbd/rng.hpp"
#include "photon_gbd/sampling.hpp"

using namespace photon_gbd;

TEST_CASE("EmpiricalHist bookkeeping") {
    EmpiricalHist h;
    CHECK(h.draws() == 0);
    CHECK(h.frequency(3) == 0.0);
    h.add(2);
    h.add(2);
    h.add(0);
    CHECK(h.draws() == 3);
    CHECK(h.count(2) == 2);
    CHECK(h.count(1) == 0);
    CHECK(h.count(99) == 0);
    CHECK(h.frequency(2) == doctest::Approx(2.0 / 3.0));
    CHECK(h.size() == 3);

    EmpiricalHist g;
    g.add(5);
    g.merge(h);
    CHECK(g.draws() == 4);
    CHECK(g.count(5) == 1);
    CHECK(g.count(2) == 2);
    CHECK(g.size() == 6);
}

TEST_CASE("tv_distance on plain vectors and against a table") {
    const std::vector<double> p{0.5, 0.5};
    const std::vector<double> q{0.75, 0.25};
    CHECK(tv_distance(p, q) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(tv_distance(p, p) == 0.0);

    EmpiricalHist h;  // frequencies 0.5 / 0.25 / 0.25
    h.add(0);
    h.add(0);
    h.add(1);
    h.add(2);
    const PmfTable t({0.5, 0.5}, 0.0);
    // sum |0.5-0.5| + |0.25-0.5| + |0.25-0| = 0.5, halved
    CHECK(tv_distance(h, t) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("chi-square: hand-checked two-bin case") {
    // observed 60/40 against a fair split of 100 draws: X^2 = 4, dof = 1
    EmpiricalHist h;
    for (int i = 0; i < 60; ++i) h.add(0);
    for (int i = 0; i < 40; ++i) h.add(1);
    const ChiSquareResult r = chi_square_gof(h, PmfTable({0.5, 0.5}, 0.0));
    CHECK(r.statistic == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(r.dof == 1);
    CHECK(r.pooled_bins == 2);
    CHECK(r.p_value == doctest::Approx(0.045500263896358414).epsilon(1e-12));
}

TEST_CASE("chi-square: low-expectation bins pool upward") {
    // expectations 90 / 5 / 3 / 2 -> groups {90}, {5}, {3+2}
    EmpiricalHist h;
    for (int i = 0; i < 85; ++i) h.add(0);
    for (int i = 0; i < 8; ++i) h.add(1);
    for (int i = 0; i < 4; ++i) h.add(2);
    for (int i = 0; i < 3; ++i) h.add(3);
    const ChiSquareResult r = chi_square_gof(h, PmfTable({0.9, 0.05, 0.03, 0.02}, 0.0));
    CHECK(r.pooled_bins == 3);
    CHECK(r.dof == 2);
    CHECK(r.statistic == doctest::Approx(2.8777777777777778).epsilon(1e-12));
    CHECK(r.p_value == doctest::Approx(0.23719115805320935).epsilon(1e-12));

    EmpiricalHist tiny;  // one draw cannot support two groups of expectation 5
    tiny.add(0);
    CHECK_THROWS_AS(chi_square_gof(tiny, PmfTable({0.5, 0.5}, 0.0)), std::runtime_error);
}

TEST_CASE("sample_normal moments") {
    RngStream rng(11);
    const int n = 400000;
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = sample_normal(rng);
        s1 += x;
        s2 += x * x;
    }
    CHECK(std::fabs(s1 / n) < 0.01);       // se ~ 0.0016
    CHECK(std::fabs(s2 / n - 1.0) < 0.02); // se ~ 0.0022
}

TEST_CASE("sample_gamma moments across the shape<1 and shape>1 paths") {
    RngStream rng(12);
    for (double shape : {0.4, 1.0, 3.7}) {
        const int n = 300000;
        double s1 = 0.0, s2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double x = sample_gamma(shape, rng);
            CHECK(x > 0.0);
            s1 += x;
            s2 += x * x;
        }
        const double mean = s1 / n;
        const double var = s2 / n - mean * mean;
        CHECK(mean == doctest::Approx(shape).epsilon(0.02));
        CHECK(var == doctest::Approx(shape).epsilon(0.05));
    }
    CHECK_THROWS_AS(sample_gamma(0.0, rng), std::domain_error);
}

TEST_CASE("sample_beta stays in (0,1) with the right mean") {
    RngStream rng(13);
    const double a = 0.5, b = 1.5;
    const int n = 200000;
    double s1 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = sample_beta(a, b, rng);
        CHECK(x > 0.0);
        CHECK(x < 1.0);
        s1 += x;
    }
    CHECK(s1 / n == doctest::Approx(a / (a + b)).epsilon(0.01));
}

TEST_CASE("sample_poisson: zero mean, small mean GOF, chunked large mean") {
    RngStream rng(14);
    for (int i = 0; i < 100; ++i) CHECK(sample_poisson(0.0, rng) == 0);

    EmpiricalHist h;
    const int n = 200000;
    for (int i = 0; i < n; ++i) h.add(sample_poisson(2.5, rng));
    const PmfTable t = StatModel::poisson(2.5).pmf_table(PhaseVolume(1.0));
    CHECK(tv_distance(h, t) < 0.01);
    CHECK(chi_square_gof(h, t).p_value > 1e-3);

    // mean 180 exercises the chunked path; check first two moments
    double s1 = 0.0, s2 = 0.0;
    const int m = 100000;
    for (int i = 0; i < m; ++i) {
        const double x = double(sample_poisson(180.0, rng));
        s1 += x;
        s2 += x * x;
    }
    const double mean = s1 / m;
    CHECK(mean == doctest::Approx(180.0).epsilon(0.002));
    CHECK(s2 / m - mean * mean == doctest::Approx(180.0).epsilon(0.05));
}

TEST_CASE("sample_binomial edges and distribution") {
    RngStream rng(15);
    CHECK(sample_binomial(0, 0.3, rng) == 0);
    for (int i = 0; i < 50; ++i) {
        CHECK(sample_binomial(9, 0.0, rng) == 0);
        CHECK(sample_binomial(9, 1.0, rng) == 9);
    }
    EmpiricalHist h;
    const int n = 200000;
    for (int i = 0; i < n; ++i) h.add(sample_binomial(10, 0.3, rng));
    std::vector<double> probs(11);
    for (long k = 0; k <= 10; ++k) probs[std::size_t(k)] = binomial_pmf(k, 10, 0.3);
    const PmfTable t(std::move(probs), 0.0);
    CHECK(tv_distance(h, t) < 0.01);
    CHECK(chi_square_gof(h, t).p_value > 1e-3);
    CHECK_THROWS_AS(sample_binomial(-1, 0.5, rng), std::domain_error);
    CHECK_THROWS_AS(sample_binomial(3, 1.5, rng), std::domain_error);
}

TEST_CASE("sample_negative_binomial matches the thermal law") {
    RngStream rng(16);
    for (int i = 0; i < 50; ++i)
        CHECK(sample_negative_binomial(PhaseVolume(2.0), 0.0, rng) == 0);
    EmpiricalHist h;
    const int n = 200000;
    for (int i = 0; i < n; ++i) h.add(sample_negative_binomial(PhaseVolume(2.7), 0.8, rng));
    const PmfTable t =
        StatModel::bose_einstein(DegeneracyParam(0.8)).pmf_table(PhaseVolume(2.7));
    CHECK(tv_distance(h, t) < 0.01);
    CHECK(chi_square_gof(h, t).p_value > 1e-3);
}

TEST_CASE("sample_polya matches the closed-form split law") {
    RngStream rng(17);
    EmpiricalHist h;
    const int n = 200000;
    for (int i = 0; i < n; ++i) h.add(sample_polya(2, 0.5, 1.0, rng));
    const GbdTable t = two_photon_table(0.5, 1.0);
    std::vector<double> probs(t.values().begin(), t.values().end());
    const PmfTable ref(std::move(probs), 0.0);
    CHECK(tv_distance(h, ref) < 0.01);
    CHECK(chi_square_gof(h, ref).p_value > 1e-3);
    for (int i = 0; i < 50; ++i) CHECK(sample_polya(0, 0.4, 2.0, rng) == 0);
}

TEST_CASE("empirical split histogram agrees with the analytic table") {
    RngStream rng(18);
    const StatModel m = StatModel::bose_einstein(DegeneracyParam(1.0));
    const PhaseVolume A(0.5), B(0.5);
    const GbdSampleResult r = empirical_gbd(m, A, B, 2, 50000, rng);
    CHECK(!r.budget_exhausted);
    CHECK(r.accepted == 50000);
    CHECK(r.attempted >= r.accepted);
    CHECK(r.hist.draws() == 50000);

    const GbdTable t = gbd_table(2, m, A, B);
    std::vector<double> probs(t.values().begin(), t.values().end());
    const PmfTable ref(std::move(probs), 0.0);
    CHECK(tv_distance(r.hist, ref) < 0.02);
    // and visibly differs from the independent-photon (binomial) split
    CHECK(tv_distance(r.hist, PmfTable({0.25, 0.5, 0.25}, 0.0)) > 0.1);
}

TEST_CASE("empirical split reports budget exhaustion honestly") {
    RngStream rng(19);
    // conditioning on 12 photons from a mean-0.02 beam: acceptance ~ 1e-20
    const GbdSampleResult r = empirical_gbd(StatModel::poisson(0.01), PhaseVolume(1.0),
                                            PhaseVolume(1.0), 12, 10, rng, 20000);
    CHECK(r.budget_exhausted);
    CHECK(r.attempted == 20000);
    CHECK(r.accepted < 10);
    CHECK_THROWS_AS(empirical_gbd(StatModel::glauber(1.0, 1.0), PhaseVolume(1.0),
                                  PhaseVolume(1.0), 2, 10, rng),
                    std::domain_error);
}
