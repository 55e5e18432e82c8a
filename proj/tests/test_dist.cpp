// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "photon_gbd/dist.hpp"
#include "photon_gbd/types.hpp"

using namespace photon_gbd;

TEST_CASE("log_rising_factorial against high-precision references") {
    CHECK(log_rising_factorial(2.5, 0) == 0.0);
    CHECK(log_rising_factorial(2.5, 3) ==
          doctest::Approx(3.6731310971457971).epsilon(1e-15));
    // long product (Gamma-difference path)
    CHECK(log_rising_factorial(3.7, 300) ==
          doctest::Approx(1428.8945814061067).epsilon(1e-14));
    // small k against huge x, where naive Gamma differences cancel badly
    CHECK(log_rising_factorial(1e6, 65) ==
          doctest::Approx(898.01026622295926).epsilon(1e-14));
    CHECK_THROWS_AS(log_rising_factorial(0.0, 1), std::domain_error);
    CHECK_THROWS_AS(log_rising_factorial(-2.0, 3), std::domain_error);
    CHECK_THROWS_AS(log_rising_factorial(1.0, -1), std::domain_error);
}

TEST_CASE("log_rising_factorial_prefix matches pointwise evaluation") {
    const auto table = log_rising_factorial_prefix(0.37, 400);
    REQUIRE(table.size() == 401);
    for (long k : {0L, 1L, 7L, 63L, 255L, 256L, 257L, 400L})
        CHECK(table[std::size_t(k)] ==
              doctest::Approx(log_rising_factorial(0.37, k)).epsilon(1e-14));
}

TEST_CASE("poisson pmf") {
    CHECK(poisson_pmf(3, 2.5) == doctest::Approx(0.21376301724973645).epsilon(1e-15));
    CHECK(poisson_pmf(0, 0.0) == 1.0);
    CHECK(poisson_pmf(2, 0.0) == 0.0);
    // deep tail only representable in log space
    CHECK(log_poisson_pmf(200, 0.3) ==
          doctest::Approx(-1104.3265480575927).epsilon(1e-14));
    CHECK_THROWS_AS(log_poisson_pmf(-1, 1.0), std::domain_error);
    CHECK_THROWS_AS(log_poisson_pmf(1, -1.0), std::domain_error);
}

TEST_CASE("thermal pmf: geometric at one cell, reference value off-integer") {
    for (long kk = 0; kk <= 20; ++kk)  // single cell, w = 1: p_k = 2^-(k+1)
        CHECK(be_pmf(kk, 1.0, 1.0) ==
              doctest::Approx(std::pow(2.0, double(-kk - 1))).epsilon(1e-14));
    CHECK(be_pmf(4, 2.7, 0.8) == doctest::Approx(0.088994081253416781).epsilon(1e-14));
    CHECK(be_pmf(0, 3.0, 0.0) == 1.0);
    CHECK(be_pmf(1, 3.0, 0.0) == 0.0);
    CHECK_THROWS_AS(log_be_pmf(1, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(log_be_pmf(1, 1.0, -0.5), std::domain_error);
}

TEST_CASE("mean occupancy from temperature") {
    // h nu / k T = 0.39993692278051844 at nu = 2.5 THz, T = 300 K
    const DegeneracyParam w = degeneracy_from_temperature(2.5e12, 300.0);
    CHECK(w.value() == doctest::Approx(2.0336338618635145).epsilon(1e-13));
    // far above thermal: occupancy underflows cleanly to zero
    CHECK(degeneracy_from_temperature(5e14, 3.0).value() == 0.0);
    CHECK_THROWS_AS(degeneracy_from_temperature(-1.0, 300.0), std::domain_error);
    CHECK_THROWS_AS(degeneracy_from_temperature(1e12, 0.0), std::domain_error);
}

TEST_CASE("binomial pmf with edge probabilities") {
    CHECK(binomial_pmf(3, 10, 0.3) == doctest::Approx(0.266827932).epsilon(1e-14));
    CHECK(binomial_pmf(0, 5, 0.0) == 1.0);
    CHECK(binomial_pmf(1, 5, 0.0) == 0.0);
    CHECK(binomial_pmf(5, 5, 1.0) == 1.0);
    CHECK_THROWS_AS(binomial_pmf(6, 5, 0.5), std::domain_error);
    CHECK_THROWS_AS(binomial_pmf(1, 5, 1.5), std::domain_error);
}

TEST_CASE("split conditional pmf: references and normalization") {
    CHECK(polya_pmf(0, 50, 0.5, 1.0) ==
          doctest::Approx(0.079589237387178761).epsilon(1e-13));
    CHECK(polya_pmf(25, 50, 0.5, 1.0) ==
          doctest::Approx(0.012605714395656999).epsilon(1e-13));
    CHECK(polya_pmf(3, 7, 0.3, 2.5) ==
          doctest::Approx(0.12067543363499246).epsilon(1e-13));
    for (double s : {1e-3, 1.0, 1e3})
        for (double alpha : {0.3, 0.5, 0.85})  // one photon goes left w.p. alpha
            CHECK(polya_pmf(1, 1, alpha, s) == doctest::Approx(alpha).epsilon(1e-15));
    for (long n : {0L, 1L, 5L, 40L}) {
        double total = 0.0;
        for (long kk = 0; kk <= n; ++kk) total += polya_pmf(kk, n, 0.37, 2.2);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("closed-form split tables at n = 2 and n = 3") {
    const GbdTable t2 = two_photon_table(0.5, 1.0);
    CHECK(t2.at(0) == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(t2.at(1) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(t2.at(2) == doctest::Approx(0.375).epsilon(1e-15));

    const GbdTable t3 = three_photon_table(0.55, 2.0);
    CHECK(t3.at(2) == doctest::Approx(0.259875).epsilon(1e-15));
    CHECK(t3.sum() == doctest::Approx(1.0).epsilon(1e-15));

    // both closed forms agree with the conditional pmf everywhere
    for (double alpha : {0.2, 0.55})
        for (double s : {0.4, 1.0, 33.0}) {
            const GbdTable a = two_photon_table(alpha, s);
            const GbdTable b = three_photon_table(alpha, s);
            for (long kk = 0; kk <= 2; ++kk)
                CHECK(a.at(kk) ==
                      doctest::Approx(polya_pmf(kk, 2, alpha, s)).epsilon(1e-13));
            for (long kk = 0; kk <= 3; ++kk)
                CHECK(b.at(kk) ==
                      doctest::Approx(polya_pmf(kk, 3, alpha, s)).epsilon(1e-13));
        }
}

TEST_CASE("three-photon table approaches the binomial cube at huge volume") {
    const double alpha = 0.55;
    const double beta = 0.45;
    const GbdTable t = three_photon_table(alpha, 1e8);
    CHECK(std::fabs(t.at(3) - alpha * alpha * alpha) < 1e-6);
    CHECK(std::fabs(t.at(2) - 3.0 * alpha * alpha * beta) < 1e-6);
    CHECK(std::fabs(t.at(1) - 3.0 * alpha * beta * beta) < 1e-6);
    CHECK(std::fabs(t.at(0) - beta * beta * beta) < 1e-6);
}

TEST_CASE("StatModel: factories, accessors, mean") {
    const StatModel p = StatModel::poisson(1.5);
    CHECK(p.kind() == StatModel::Kind::poisson);
    CHECK(p.density() == 1.5);
    CHECK_THROWS_AS(p.w(), std::logic_error);
    CHECK(p.mean_count(PhaseVolume(2.0)) == 3.0);
    CHECK(p.describe() == "poisson density=1.5");

    const StatModel b = StatModel::bose_einstein(DegeneracyParam(0.8));
    CHECK(b.w() == 0.8);
    CHECK(b.mean_count(PhaseVolume(2.5)) == 2.0);
    CHECK(b.describe() == "bose-einstein w=0.8");

    const StatModel g = StatModel::glauber(2.0, 0.5);
    CHECK(g.gamma() == 2.0);
    CHECK(g.photon_rate() == 0.5);
    CHECK(g.mean_count(PhaseVolume(4.0)) == 2.0);
    CHECK(g.describe() == "glauber gamma=2 rate=0.5");
    CHECK_THROWS_AS(StatModel::glauber(0.0, 1.0), std::domain_error);
}

TEST_CASE("StatModel log_pmf agrees with the free functions") {
    const PhaseVolume v(2.7);
    const StatModel p = StatModel::poisson(0.9);
    const StatModel b = StatModel::bose_einstein(DegeneracyParam(1.3));
    for (long kk : {0L, 1L, 5L, 31L}) {
        CHECK(p.log_pmf(kk, v) == log_poisson_pmf(kk, 0.9 * 2.7));
        CHECK(b.log_pmf(kk, v) == log_be_pmf(kk, 2.7, 1.3));
    }
    const auto lp = b.log_pmf_prefix(v, 31);
    for (long kk = 0; kk <= 31; ++kk)
        CHECK(lp[std::size_t(kk)] ==
              doctest::Approx(log_be_pmf(kk, 2.7, 1.3)).epsilon(1e-13));
}

TEST_CASE("pmf tables carry an honest tail") {
    for (const StatModel& m :
         {StatModel::poisson(2.0), StatModel::bose_einstein(DegeneracyParam(1.0)),
          StatModel::glauber(1.0, 1.0)}) {
        const PmfTable t = m.pmf_table(PhaseVolume(1.7), 1e-12);
        CHECK(t.tail_bound() <= 2e-12);
        double s = 0.0;
        for (std::size_t kk = 0; kk < t.size(); ++kk) s += t[kk];
        CHECK(s + t.tail_bound() == doctest::Approx(1.0).epsilon(1e-9));
    }
    // a loose target stops the table early but the bound stays truthful
    const PmfTable loose =
        StatModel::bose_einstein(DegeneracyParam(3.0)).pmf_table(PhaseVolume(1.0), 1e-2);
    double s = 0.0;
    for (std::size_t kk = 0; kk < loose.size(); ++kk) s += loose[kk];
    CHECK(s + loose.tail_bound() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("split law: poisson splits binomially, thermal splits polya") {
    const PhaseVolume A(0.6);
    const PhaseVolume B(1.4);
    const double alpha = 0.6 / 2.0;

    const GbdTable pois = gbd_table(12, StatModel::poisson(0.8), A, B);
    for (long kk = 0; kk <= 12; ++kk)
        CHECK(pois.at(kk) == doctest::Approx(binomial_pmf(kk, 12, alpha)).epsilon(1e-12));

    // thermal split depends on the volumes only, not on the occupancy
    for (double w : {0.3, 1.0, 4.0}) {
        const GbdTable th = gbd_table(9, StatModel::bose_einstein(DegeneracyParam(w)), A, B);
        for (long kk = 0; kk <= 9; ++kk)
            CHECK(th.at(kk) == doctest::Approx(polya_pmf(kk, 9, alpha, 2.0)).epsilon(1e-12));
    }
    CHECK(gbd(2, 9, StatModel::bose_einstein(DegeneracyParam(1.0)), A, B) ==
          doctest::Approx(polya_pmf(2, 9, alpha, 2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(gbd(3, 2, StatModel::poisson(1.0), A, B), std::domain_error);
}

TEST_CASE("split law rows sum to one") {
    const StatModel m = StatModel::bose_einstein(DegeneracyParam(0.7));
    for (long n : {0L, 1L, 17L, 80L})
        CHECK(gbd_table(n, m, PhaseVolume(0.5), PhaseVolume(2.2)).sum() ==
              doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("vanishing denominator raises instead of returning garbage") {
    // mean 2 yet conditioning on 3000 counts: probability below e^-10000
    CHECK_THROWS_AS(gbd(1, 3000, StatModel::poisson(1.0), PhaseVolume(1.0), PhaseVolume(1.0)),
                    DegenerateDenominatorError);
}

TEST_CASE("count-convolution identity holds across models") {
    const PhaseVolume A(0.5);
    const PhaseVolume B(2.7);
    CHECK(verify_convolution(StatModel::poisson(0.3), A, B, 200) < 1e-11);
    CHECK(verify_convolution(StatModel::bose_einstein(DegeneracyParam(3.0)), A, B, 200) <
          1e-11);
    CHECK(verify_convolution(StatModel::glauber(1.0, 1.0), A, B, 100) < 1e-11);
}

TEST_CASE("convolution check detects an inconsistent triple") {
    const double residual = verify_convolution(
        StatModel::bose_einstein(DegeneracyParam(1.0)),
        StatModel::bose_einstein(DegeneracyParam(1.0)),
        StatModel::bose_einstein(DegeneracyParam(1.5)), PhaseVolume(1.0), PhaseVolume(1.0),
        50);
    CHECK(residual > 1e-3);
}

TEST_CASE("rising-factorial addition identity") {
    CHECK(verify_vandermonde(0.5, 99.5, 300) < 1e-11);
    CHECK(verify_vandermonde(100.0, 100.0, 300) < 1e-11);
    CHECK(verify_vandermonde(1.0, 1.0, 0) == 0.0);
}

TEST_CASE("domain validation on the value types") {
    CHECK_THROWS_AS(PhaseVolume(0.0), std::domain_error);
    CHECK_THROWS_AS(PhaseVolume(-1.0), std::domain_error);
    CHECK_THROWS_AS(PhaseVolume(std::numeric_limits<double>::infinity()),
                    std::domain_error);
    CHECK_THROWS_AS(DegeneracyParam(-0.1), std::domain_error);
    CHECK_THROWS_AS(SplitSpec(0.5, 0.6), std::domain_error);
    CHECK_THROWS_AS(SplitSpec(1.0, 0.0), std::domain_error);
    CHECK(SplitSpec::from_alpha(0.25).beta() == 0.75);
    const SplitSpec s = split_probabilities(PhaseVolume(1.0), PhaseVolume(3.0));
    CHECK(s.alpha() == 0.25);
    CHECK(s.beta() == 0.75);
    CHECK((PhaseVolume(1.5) + PhaseVolume(2.5)).cells() == 4.0);
}

TEST_CASE("PmfTable rejects inconsistent mass") {
    CHECK_THROWS_AS(PmfTable({0.5, 0.4}, 0.0), std::domain_error);
    CHECK_THROWS_AS(PmfTable({0.5, -0.1, 0.6}, 0.0), std::domain_error);
    const PmfTable t({0.5, 0.3}, 0.2);
    CHECK(t[0] == 0.5);
    CHECK(t[5] == 0.0);  // reads past the end are zero
    CHECK(t.mean() == doctest::Approx(0.3));
}
