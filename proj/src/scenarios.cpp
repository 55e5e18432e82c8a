// SPDX-License-Identifier: Apache-2.0
#include "photon_gbd/scenarios.hpp"

#include <cmath>
#include <stdexcept>

#include "photon_gbd/kernels.hpp"

namespace photon_gbd {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::domain_error(msg);
}

// The two channels of a split beam carry these shares of the extensive
// parameter; every quantity below is a function of them alone.
PhaseVolume transmitted_volume(const BeamState& beam, const SplitDevice& d) {
    return PhaseVolume(d.split().alpha() * beam.volume.cells());
}

PhaseVolume complementary_volume(const BeamState& beam, const SplitDevice& d) {
    return PhaseVolume(d.split().beta() * beam.volume.cells());
}

}  // namespace

std::string_view device_kind_name(DeviceKind kind) noexcept {
    switch (kind) {
        case DeviceKind::diaphragm: return "diaphragm";
        case DeviceKind::beamsplitter: return "beamsplitter";
        case DeviceKind::detector: return "detector";
        case DeviceKind::neutral_filter: return "neutral_filter";
    }
    return "";
}

DeviceKind device_kind_from_name(std::string_view name) {
    if (name == "diaphragm") return DeviceKind::diaphragm;
    if (name == "beamsplitter") return DeviceKind::beamsplitter;
    if (name == "detector") return DeviceKind::detector;
    if (name == "neutral_filter") return DeviceKind::neutral_filter;
    throw std::domain_error("device_kind_from_name: unknown device kind");
}

std::string_view SplitDevice::loss_note() const noexcept {
    switch (kind_) {
        case DeviceKind::diaphragm: return "complement blocked at the screen";
        case DeviceKind::beamsplitter: return "complement leaves by the second port";
        case DeviceKind::detector: return "complement passes undetected";
        case DeviceKind::neutral_filter: return "complement absorbed in the filter";
    }
    return "";
}

SplitDevice cascade(const SplitDevice& first, const SplitDevice& second) {
    return SplitDevice(first.kind(), first.transmittance() * second.transmittance());
}

JointTable::JointTable(long n_max, std::vector<double> values)
    : n_max_(n_max), values_(std::move(values)) {
    require(n_max_ >= 0, "JointTable: n_max must be >= 0");
    const std::size_t side = std::size_t(n_max_) + 1;
    require(values_.size() == side * side, "JointTable: need (n_max + 1)^2 values");
    for (double v : values_)
        require(std::isfinite(v) && v >= 0.0, "JointTable: values must be finite and >= 0");
}

double JointTable::at(long k, long m) const {
    if (k < 0 || k > n_max_ || m < 0 || m > n_max_)
        throw std::out_of_range("JointTable::at: index outside 0..n_max");
    return values_[std::size_t(k) * (std::size_t(n_max_) + 1) + std::size_t(m)];
}

std::vector<double> JointTable::conditional_given_total(long n) const {
    if (n < 0 || n > n_max_)
        throw std::out_of_range("JointTable::conditional_given_total: n outside 0..n_max");
    std::vector<double> row(std::size_t(n) + 1);
    for (long k = 0; k <= n; ++k) row[std::size_t(k)] = at(k, n - k);
    const double mass = kernels::sum(row);
    if (!(mass > 0.0))
        throw DegenerateDenominatorError(
            "conditional_given_total: the conditioning total has zero numerical mass");
    for (double& v : row) v /= mass;
    return row;
}

double JointTable::total_mass() const { return kernels::sum(values_); }

JointTable joint_output_distribution(const BeamState& beam, const SplitDevice& device,
                                     long n_max) {
    require(n_max >= 0, "joint_output_distribution: n_max must be >= 0");
    require(n_max <= 4096, "joint_output_distribution: n_max too large for a dense table");
    const auto lpA = beam.model.log_pmf_prefix(transmitted_volume(beam, device), n_max);
    const auto lpB = beam.model.log_pmf_prefix(complementary_volume(beam, device), n_max);
    const std::size_t side = std::size_t(n_max) + 1;
    std::vector<double> values(side * side);
    // Channel counts are independent: the joint is the product of the two
    // channel laws, here assembled in log space.
    for (std::size_t k = 0; k < side; ++k)
        for (std::size_t m = 0; m < side; ++m)
            values[k * side + m] = std::exp(lpA[k] + lpB[m]);
    return JointTable(n_max, std::move(values));
}

PmfTable transmitted_marginal(const BeamState& beam, const SplitDevice& device,
                              double tail_target) {
    // Row sums of the joint law. The complementary channel sums out to its
    // captured mass, so the row sum is that constant times the transmitted
    // channel's law; doing it this way avoids materializing the dense joint.
    const PmfTable ta = beam.model.pmf_table(transmitted_volume(beam, device),
                                             0.25 * tail_target);
    const PmfTable tb = beam.model.pmf_table(complementary_volume(beam, device),
                                             0.25 * tail_target);
    const double mass_b = kernels::sum(tb.probs());
    std::vector<double> probs(ta.size());
    double s = 0.0;
    double c = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        probs[k] = ta[k] * mass_b;
        const double y = probs[k] - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return PmfTable(std::move(probs), std::max(0.0, 1.0 - s) + 1e-13);
}

}  // namespace photon_gbd
