// SPDX-License-Identifier: Apache-2.0
#include "photon_gbd/sampling.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "photon_gbd/kernels.hpp"

namespace photon_gbd {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::domain_error(msg);
}

}  // namespace

void EmpiricalHist::add(long k) {
    require(k >= 0, "EmpiricalHist::add: k must be >= 0");
    if (std::size_t(k) >= counts_.size()) counts_.resize(std::size_t(k) + 1, 0);
    ++counts_[std::size_t(k)];
    ++draws_;
}

void EmpiricalHist::merge(const EmpiricalHist& other) {
    if (other.counts_.size() > counts_.size()) counts_.resize(other.counts_.size(), 0);
    for (std::size_t k = 0; k < other.counts_.size(); ++k) counts_[k] += other.counts_[k];
    draws_ += other.draws_;
}

double sample_normal(RngStream& rng) {
    // Box-Muller, cosine branch only: no cached mate, so the draw count per
    // call is fixed and streams stay reproducible under reordering.
    const double u1 = rng.next_double();
    const double u2 = rng.next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double sample_gamma(double shape, RngStream& rng) {
    require(std::isfinite(shape) && shape > 0.0, "sample_gamma: shape must be > 0");
    if (shape < 1.0) {
        // boost the shape, then correct with a power of a fresh uniform
        const double g = sample_gamma(shape + 1.0, rng);
        return g * std::pow(rng.next_double(), 1.0 / shape);
    }
    // Marsaglia-Tsang squeeze
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        const double x = sample_normal(rng);
        const double t = 1.0 + c * x;
        if (t <= 0.0) continue;
        const double v = t * t * t;
        const double u = rng.next_double();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double sample_beta(double a, double b, RngStream& rng) {
    const double x = sample_gamma(a, rng);
    const double y = sample_gamma(b, rng);
    return x / (x + y);
}

long sample_poisson(double mean, RngStream& rng) {
    require(std::isfinite(mean) && mean >= 0.0, "sample_poisson: mean must be >= 0");
    if (mean == 0.0) return 0;
    // Knuth's product method is exact but needs exp(-mean) > 0; above 30
    // split into chunks and use count additivity.
    if (mean > 30.0) {
        const long chunks = long(std::ceil(mean / 30.0));
        const double each = mean / double(chunks);
        long total = 0;
        for (long i = 0; i < chunks; ++i) total += sample_poisson(each, rng);
        return total;
    }
    const double limit = std::exp(-mean);
    long k = 0;
    double p = rng.next_double();
    while (p > limit) {
        ++k;
        p *= rng.next_double();
    }
    return k;
}

long sample_binomial(long n, double p, RngStream& rng) {
    require(n >= 0, "sample_binomial: n must be >= 0");
    require(std::isfinite(p) && p >= 0.0 && p <= 1.0, "sample_binomial: p must be in [0, 1]");
    if (n == 0 || p == 0.0) return 0;
    if (p == 1.0) return n;
    double pk = std::pow(1.0 - p, double(n));
    if (pk > 0.0) {
        // CDF inversion walking up the recurrence
        const double odds = p / (1.0 - p);
        const double u = rng.next_double();
        double cdf = pk;
        long k = 0;
        while (u > cdf && k < n) {
            pk *= odds * double(n - k) / double(k + 1);
            ++k;
            cdf += pk;
        }
        return k;
    }
    // the k = 0 term underflowed (huge n): fall back to summing Bernoullis
    long total = 0;
    for (long i = 0; i < n; ++i) total += rng.next_double() < p ? 1 : 0;
    return total;
}

long sample_negative_binomial(PhaseVolume cells, double w, RngStream& rng) {
    require(std::isfinite(w) && w >= 0.0, "sample_negative_binomial: w must be >= 0");
    if (w == 0.0) return 0;
    return sample_poisson(sample_gamma(cells.cells(), rng) * w, rng);
}

long sample_polya(long n, double alpha, double s_cells, RngStream& rng) {
    require(n >= 0, "sample_polya: n must be >= 0");
    require(std::isfinite(alpha) && alpha > 0.0 && alpha < 1.0,
            "sample_polya: alpha must be in (0, 1)");
    require(std::isfinite(s_cells) && s_cells > 0.0, "sample_polya: s_cells must be > 0");
    const double p = sample_beta(alpha * s_cells, (1.0 - alpha) * s_cells, rng);
    return sample_binomial(n, p, rng);
}

GbdSampleResult empirical_gbd(const StatModel& model, PhaseVolume A, PhaseVolume B,
                              long n, std::uint64_t target_accepted, RngStream& rng,
                              std::uint64_t attempt_budget) {
    require(n >= 0, "empirical_gbd: n must be >= 0");
    require(target_accepted >= 1, "empirical_gbd: target_accepted must be >= 1");
    const auto kind = model.kind();
    require(kind == StatModel::Kind::poisson || kind == StatModel::Kind::bose_einstein,
            "empirical_gbd: only poisson and bose_einstein kinds have exact samplers");

    const auto draw_pair = [&](long& ka, long& kb) {
        if (kind == StatModel::Kind::poisson) {
            ka = sample_poisson(model.density() * A.cells(), rng);
            kb = sample_poisson(model.density() * B.cells(), rng);
        } else {
            ka = sample_negative_binomial(A, model.w(), rng);
            kb = sample_negative_binomial(B, model.w(), rng);
        }
    };

    GbdSampleResult result;
    while (result.accepted < target_accepted && result.attempted < attempt_budget) {
        ++result.attempted;
        long ka = 0;
        long kb = 0;
        draw_pair(ka, kb);
        if (ka + kb != n) continue;
        result.hist.add(ka);
        ++result.accepted;
    }
    result.budget_exhausted = result.accepted < target_accepted;
    return result;
}

double tv_distance(const EmpiricalHist& hist, const PmfTable& pmf) {
    require(hist.draws() > 0, "tv_distance: histogram is empty");
    std::vector<double> freq(hist.size());
    for (std::size_t k = 0; k < freq.size(); ++k) freq[k] = hist.frequency(long(k));
    return 0.5 * (kernels::l1_diff(freq, pmf.probs()) + pmf.tail_bound());
}

double tv_distance(std::span<const double> p, std::span<const double> q) {
    return 0.5 * kernels::l1_diff(p, q);
}

ChiSquareResult chi_square_gof(const EmpiricalHist& hist, const PmfTable& pmf) {
    require(hist.draws() > 0, "chi_square_gof: histogram is empty");
    const double draws = double(hist.draws());

    // raw cells: one per table entry plus an overflow cell for the tail
    const std::size_t cells = pmf.size() + 1;
    std::vector<double> expected(cells);
    std::vector<double> observed(cells, 0.0);
    for (std::size_t k = 0; k < pmf.size(); ++k) expected[k] = draws * pmf[k];
    expected[cells - 1] = draws * pmf.tail_bound();
    for (std::size_t k = 0; k < hist.size(); ++k) {
        const std::size_t cell = k < pmf.size() ? k : cells - 1;
        observed[cell] += double(hist.count(long(k)));
    }

    constexpr double kMinExpected = 5.0;
    std::vector<std::pair<double, double>> groups;  // (observed, expected)
    double o_acc = 0.0;
    double e_acc = 0.0;
    for (std::size_t k = 0; k < cells; ++k) {
        o_acc += observed[k];
        e_acc += expected[k];
        if (e_acc >= kMinExpected) {
            groups.emplace_back(o_acc, e_acc);
            o_acc = 0.0;
            e_acc = 0.0;
        }
    }
    if ((o_acc > 0.0 || e_acc > 0.0) && !groups.empty()) {
        groups.back().first += o_acc;
        groups.back().second += e_acc;
    }
    if (groups.size() < 2)
        throw std::runtime_error("chi_square_gof: too few populated groups to test");

    ChiSquareResult r;
    for (const auto& [o, e] : groups) r.statistic += (o - e) * (o - e) / e;
    r.pooled_bins = long(groups.size());
    r.dof = long(groups.size()) - 1;
    r.p_value = boost::math::gamma_q(0.5 * double(r.dof), 0.5 * r.statistic);
    return r;
}

}  // namespace photon_gbd
