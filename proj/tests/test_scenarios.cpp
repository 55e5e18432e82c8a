// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string_view>
#include <vector>

#include "photon_gbd/dist.hpp"
#include "photon_gbd/scenarios.hpp"

using namespace photon_gbd;

namespace {

const DeviceKind kAllKinds[] = {DeviceKind::diaphragm, DeviceKind::beamsplitter,
                                DeviceKind::detector, DeviceKind::neutral_filter};

}  // namespace

TEST_CASE("device kind names round-trip") {
    for (DeviceKind kind : kAllKinds)
        CHECK(device_kind_from_name(device_kind_name(kind)) == kind);
    CHECK(device_kind_name(DeviceKind::neutral_filter) == "neutral_filter");
    CHECK_THROWS_AS(device_kind_from_name("prism"), std::domain_error);
}

TEST_CASE("SplitDevice holds a lossless partition") {
    const SplitDevice d(DeviceKind::beamsplitter, 0.3);
    CHECK(d.transmittance() == 0.3);
    CHECK(d.split().beta() == 0.7);
    CHECK(!d.loss_note().empty());
    CHECK_THROWS_AS(SplitDevice(DeviceKind::detector, 0.0), std::domain_error);
    CHECK_THROWS_AS(SplitDevice(DeviceKind::detector, 1.0), std::domain_error);
}

TEST_CASE("cascade multiplies transmittances and keeps the first kind") {
    const SplitDevice c = cascade(SplitDevice(DeviceKind::neutral_filter, 0.6),
                                  SplitDevice(DeviceKind::detector, 0.5));
    CHECK(c.kind() == DeviceKind::neutral_filter);
    CHECK(c.transmittance() == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("identical transmittance means bitwise identical statistics") {
    const BeamState beam{StatModel::bose_einstein(DegeneracyParam(1.0)), PhaseVolume(2.0)};
    const JointTable ref = joint_output_distribution(beam, SplitDevice(kAllKinds[0], 0.37), 10);
    const PmfTable ref_marg = transmitted_marginal(beam, SplitDevice(kAllKinds[0], 0.37));
    for (DeviceKind kind : kAllKinds) {
        const SplitDevice dev(kind, 0.37);
        const JointTable j = joint_output_distribution(beam, dev, 10);
        for (long k = 0; k <= 10; ++k)
            for (long m = 0; m <= 10; ++m)
                CHECK(j.at(k, m) == ref.at(k, m));  // exact, not approximate
        const PmfTable marg = transmitted_marginal(beam, dev);
        REQUIRE(marg.size() == ref_marg.size());
        for (std::size_t k = 0; k < marg.size(); ++k) CHECK(marg[k] == ref_marg[k]);
    }
}

TEST_CASE("joint table: product structure and mass accounting") {
    const BeamState beam{StatModel::poisson(1.2), PhaseVolume(1.0)};
    const SplitDevice dev(DeviceKind::diaphragm, 0.25);
    const JointTable j = joint_output_distribution(beam, dev, 20);
    // independence across channels for a given split
    CHECK(j.at(2, 3) ==
          doctest::Approx(poisson_pmf(2, 1.2 * 0.25) * poisson_pmf(3, 1.2 * 0.75))
              .epsilon(1e-13));
    CHECK(j.total_mass() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(j.at(21, 0), std::out_of_range);
    CHECK_THROWS_AS(j.at(0, -1), std::out_of_range);
}

TEST_CASE("conditional at fixed total reproduces the split tables") {
    const BeamState beam{StatModel::bose_einstein(DegeneracyParam(1.0)), PhaseVolume(1.0)};
    const SplitDevice dev(DeviceKind::beamsplitter, 0.5);
    const JointTable j = joint_output_distribution(beam, dev, 12);

    const std::vector<double> cond2 = j.conditional_given_total(2);
    const GbdTable closed = two_photon_table(0.5, 1.0);
    REQUIRE(cond2.size() == 3);
    for (long k = 0; k <= 2; ++k)
        CHECK(cond2[std::size_t(k)] == doctest::Approx(closed.at(k)).epsilon(1e-12));

    const std::vector<double> cond7 = j.conditional_given_total(7);
    const GbdTable g = gbd_table(7, beam.model, PhaseVolume(0.5), PhaseVolume(0.5));
    for (long k = 0; k <= 7; ++k)
        CHECK(cond7[std::size_t(k)] == doctest::Approx(g.at(k)).epsilon(1e-12));
}

TEST_CASE("conditional on an impossible total raises") {
    const BeamState vacuumish{StatModel::poisson(1e-8), PhaseVolume(1.0)};
    const JointTable j =
        joint_output_distribution(vacuumish, SplitDevice(DeviceKind::detector, 0.5), 40);
    CHECK_THROWS_AS(j.conditional_given_total(40), DegenerateDenominatorError);
}

TEST_CASE("transmitted marginal equals the law at the reduced volume") {
    for (const StatModel& m :
         {StatModel::poisson(1.5), StatModel::bose_einstein(DegeneracyParam(0.9)),
          StatModel::glauber(1.0, 1.0)}) {
        const BeamState beam{m, PhaseVolume(2.0)};
        const SplitDevice dev(DeviceKind::neutral_filter, 0.4);
        const PmfTable marg = transmitted_marginal(beam, dev, 1e-12);
        const PmfTable direct = m.pmf_table(PhaseVolume(0.8), 1e-12);
        const std::size_t shared = std::min(marg.size(), direct.size());
        REQUIRE(shared > 5);
        for (std::size_t k = 0; k < shared; ++k)
            CHECK(marg[k] == doctest::Approx(direct[k]).epsilon(1e-10));
        CHECK(marg.tail_bound() < 1e-10);
    }
}

TEST_CASE("cascaded split equals one device with the product transmittance") {
    const BeamState beam{StatModel::bose_einstein(DegeneracyParam(1.3)), PhaseVolume(1.0)};
    const SplitDevice two = cascade(SplitDevice(DeviceKind::neutral_filter, 0.5),
                                    SplitDevice(DeviceKind::neutral_filter, 0.5));
    const SplitDevice one(DeviceKind::neutral_filter, 0.25);
    const PmfTable a = transmitted_marginal(beam, two);
    const PmfTable b = transmitted_marginal(beam, one);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == b[k]);
}
