// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <stdexcept>

namespace photon_gbd {

// Number of phase-space cells occupied by a beam region. Not restricted to
// integers: fractional volumes are meaningful for thermal light, which is
// what makes the split statistics interesting below one cell.
class PhaseVolume {
 public:
    explicit PhaseVolume(double cells) : cells_(cells) {
        if (!(std::isfinite(cells) && cells > 0.0))
            throw std::domain_error("PhaseVolume: cells must be finite and > 0");
    }

    double cells() const noexcept { return cells_; }

    friend PhaseVolume operator+(PhaseVolume a, PhaseVolume b) {
        return PhaseVolume(a.cells_ + b.cells_);
    }

 private:
    double cells_;
};

// Mean photon count per phase-space cell of a thermal beam.
class DegeneracyParam {
 public:
    explicit DegeneracyParam(double value) : value_(value) {
        if (!(std::isfinite(value) && value >= 0.0))
            throw std::domain_error("DegeneracyParam: value must be finite and >= 0");
    }

    double value() const noexcept { return value_; }

 private:
    double value_;
};

// A two-way partition of a beam: fraction alpha goes to channel A, beta to
// channel B. Both fractions are strictly inside (0, 1) and sum to one, i.e.
// the split is lossless.
class SplitSpec {
 public:
    SplitSpec(double alpha, double beta) : alpha_(alpha), beta_(beta) {
        if (!(std::isfinite(alpha) && alpha > 0.0 && alpha < 1.0) ||
            !(std::isfinite(beta) && beta > 0.0 && beta < 1.0))
            throw std::domain_error("SplitSpec: fractions must lie in (0, 1)");
        if (std::fabs(alpha + beta - 1.0) > 1e-12)
            throw std::domain_error("SplitSpec: fractions must sum to 1");
    }

    static SplitSpec from_alpha(double alpha) { return SplitSpec(alpha, 1.0 - alpha); }

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }

 private:
    double alpha_;
    double beta_;
};

// Split fractions induced by partitioning a phase volume into two pieces.
inline SplitSpec split_probabilities(PhaseVolume a, PhaseVolume b) {
    const double total = a.cells() + b.cells();
    return SplitSpec(a.cells() / total, b.cells() / total);
}

}  // namespace photon_gbd
