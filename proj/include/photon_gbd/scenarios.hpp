// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string_view>
#include <vector>

#include "photon_gbd/dist.hpp"
#include "photon_gbd/pmf_table.hpp"
#include "photon_gbd/types.hpp"

// Concrete ways of carving a beam in two, and the joint statistics of the
// two output channels. The central fact: a diaphragm, a lossless splitter,
// an imperfect detector, and a neutral filter with the same transmitted
// fraction all induce the same counting statistics, because the statistics
// depend on the partition fractions alone. The device kind therefore never
// enters any computation here; it only labels the hardware and customizes
// the human-readable note about where the complementary fraction went.

namespace photon_gbd {

enum class DeviceKind { diaphragm, beamsplitter, detector, neutral_filter };

std::string_view device_kind_name(DeviceKind kind) noexcept;
DeviceKind device_kind_from_name(std::string_view name);  // throws on unknown

class SplitDevice {
 public:
    SplitDevice(DeviceKind kind, double transmittance)
        : kind_(kind), split_(SplitSpec::from_alpha(transmittance)) {}

    DeviceKind kind() const noexcept { return kind_; }
    double transmittance() const noexcept { return split_.alpha(); }
    SplitSpec split() const noexcept { return split_; }

    // where the untransmitted fraction ends up, for logs only
    std::string_view loss_note() const noexcept;

 private:
    DeviceKind kind_;
    SplitSpec split_;
};

// Two devices in series: transmittances multiply, the first kind labels the
// combination.
SplitDevice cascade(const SplitDevice& first, const SplitDevice& second);

struct BeamState {
    StatModel model;
    PhaseVolume volume;
};

// P(k transmitted, m complementary), k, m = 0..n_max, row-major in k.
class JointTable {
 public:
    JointTable(long n_max, std::vector<double> values);

    long n_max() const noexcept { return n_max_; }
    double at(long k, long m) const;

    // Split law at fixed total: the normalized anti-diagonal k + m = n.
    // Matches gbd_table for the same model and sub-volumes.
    std::vector<double> conditional_given_total(long n) const;

    double total_mass() const;

 private:
    long n_max_;
    std::vector<double> values_;
};

JointTable joint_output_distribution(const BeamState& beam, const SplitDevice& device,
                                     long n_max);

// Counting law of the transmitted channel: the row sums of the (implicit)
// joint table. Equals the beam's own law at the reduced volume; the
// verification suites check exactly that.
PmfTable transmitted_marginal(const BeamState& beam, const SplitDevice& device,
                              double tail_target = 1e-12);

}  // namespace photon_gbd
