// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "photon_gbd/dist.hpp"
#include "photon_gbd/pmf_table.hpp"
#include "photon_gbd/rng.hpp"
#include "photon_gbd/types.hpp"

// Monte Carlo side: exact samplers for the counting laws and the split
// mechanisms, plus the two empirical-vs-analytic distances used by the
// verification suites. All samplers draw from an explicit RngStream, so a
// (seed, stream) pair pins down every result bit-for-bit.

namespace photon_gbd {

class EmpiricalHist {
 public:
    void add(long k);
    void merge(const EmpiricalHist& other);

    std::uint64_t draws() const noexcept { return draws_; }
    std::uint64_t count(long k) const noexcept {
        return k >= 0 && std::size_t(k) < counts_.size() ? counts_[std::size_t(k)] : 0;
    }
    double frequency(long k) const noexcept {
        return draws_ == 0 ? 0.0 : double(count(k)) / double(draws_);
    }
    // counts indexed by k; highest index has at least one draw
    std::span<const std::uint64_t> counts() const noexcept { return counts_; }
    std::size_t size() const noexcept { return counts_.size(); }

 private:
    std::vector<std::uint64_t> counts_;
    std::uint64_t draws_ = 0;
};

double sample_normal(RngStream& rng);                    // standard normal
double sample_gamma(double shape, RngStream& rng);       // unit scale, shape > 0
double sample_beta(double a, double b, RngStream& rng);  // in (0, 1)

long sample_poisson(double mean, RngStream& rng);
long sample_binomial(long n, double p, RngStream& rng);

// Photon count of thermal light over `cells` phase-space cells: a Poisson
// draw whose mean is itself Gamma(cells, w)-distributed. Marginally this is
// exactly the chaotic counting law.
long sample_negative_binomial(PhaseVolume cells, double w, RngStream& rng);

// Thermal split count: Beta(alpha s, (1-alpha) s) success probability fed
// into a binomial over the n available photons.
long sample_polya(long n, double alpha, double s_cells, RngStream& rng);

struct GbdSampleResult {
    EmpiricalHist hist;
    std::uint64_t accepted = 0;
    std::uint64_t attempted = 0;
    bool budget_exhausted = false;
};

// Split-law histogram by direct conditioning: draw the two channel counts
// independently from the model, keep the draw only when they total n. No
// knowledge of the conditional law enters, which is what makes the
// comparison against gbd_table a real test. Defined for the poisson and
// bose_einstein kinds (the ones with exact samplers).
GbdSampleResult empirical_gbd(const StatModel& model, PhaseVolume A, PhaseVolume B,
                              long n, std::uint64_t target_accepted, RngStream& rng,
                              std::uint64_t attempt_budget = 100'000'000);

// Total variation distance. The table's tail bound counts fully toward the
// distance, so the result errs on the large side by at most that bound.
double tv_distance(const EmpiricalHist& hist, const PmfTable& pmf);
double tv_distance(std::span<const double> p, std::span<const double> q);

struct ChiSquareResult {
    double statistic = 0.0;
    long dof = 0;
    double p_value = 0.0;
    long pooled_bins = 0;
};

// Pearson goodness-of-fit of the histogram against the table, with low-count
// bins pooled upward until every group expects at least 5 draws (the table's
// tail forms the final overflow bin). Throws if fewer than two groups remain.
ChiSquareResult chi_square_gof(const EmpiricalHist& hist, const PmfTable& pmf);

}  // namespace photon_gbd
