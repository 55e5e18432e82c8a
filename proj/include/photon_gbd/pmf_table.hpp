// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace photon_gbd {

// A probability mass function truncated at some k_max, together with a
// certified upper bound on the mass beyond the truncation point. The
// invariant sum(probs) + tail_bound ~ 1 (within 1e-9) is checked on
// construction, so a PmfTable can always be treated as a complete
// distribution with an explicit error budget.
class PmfTable {
 public:
    PmfTable(std::vector<double> probs, double tail_bound)
        : probs_(std::move(probs)), tail_bound_(tail_bound) {
        if (!(std::isfinite(tail_bound_) && tail_bound_ >= 0.0))
            throw std::domain_error("PmfTable: tail bound must be finite and >= 0");
        double total = 0.0;
        double comp = 0.0;  // Kahan compensation
        for (double p : probs_) {
            if (!(std::isfinite(p) && p >= 0.0))
                throw std::domain_error("PmfTable: entries must be finite and >= 0");
            const double y = p - comp;
            const double t = total + y;
            comp = (t - total) - y;
            total = t;
        }
        if (std::fabs(total + tail_bound_ - 1.0) > 1e-9)
            throw std::domain_error("PmfTable: mass + tail bound must be ~1");
    }

    std::size_t size() const noexcept { return probs_.size(); }
    std::size_t k_max() const noexcept { return probs_.empty() ? 0 : probs_.size() - 1; }

    // Probability of k; zero beyond the stored range.
    double operator[](std::size_t k) const noexcept {
        return k < probs_.size() ? probs_[k] : 0.0;
    }

    std::span<const double> probs() const noexcept { return probs_; }
    double tail_bound() const noexcept { return tail_bound_; }

    double mean() const noexcept {
        double m = 0.0;
        for (std::size_t k = 0; k < probs_.size(); ++k) m += double(k) * probs_[k];
        return m;
    }

 private:
    std::vector<double> probs_;
    double tail_bound_;
};

}  // namespace photon_gbd
