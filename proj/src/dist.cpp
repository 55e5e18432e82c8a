// SPDX-License-Identifier: Apache-2.0
#include "photon_gbd/dist.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "photon_gbd/constants.hpp"
#include "photon_gbd/kernels.hpp"
#include "photon_gbd/series.hpp"

namespace photon_gbd {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_factorial(long k) { return std::lgamma(double(k) + 1.0); }

double log_sum_exp(std::span<const double> t) {
    const double m = kernels::max_val(t);
    if (!std::isfinite(m)) return m;  // empty span or every term -inf
    double s = 0.0;
    for (double v : t) s += std::exp(v - m);
    return m + std::log(s);
}

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void require(bool ok, const char* msg) {
    if (!ok) throw std::domain_error(msg);
}

}  // namespace

double log_rising_factorial(double x, long k) {
    require(k >= 0, "log_rising_factorial: k must be >= 0");
    if (k == 0) return 0.0;
    require(std::isfinite(x) && x > 0.0, "log_rising_factorial: x must be finite and > 0");
    if (k <= 256) {
        double s = 0.0;
        double c = 0.0;
        for (long i = 0; i < k; ++i) {
            const double y = std::log(x + double(i)) - c;
            const double t = s + y;
            c = (t - s) - y;
            s = t;
        }
        return s;
    }
    return std::lgamma(x + double(k)) - std::lgamma(x);
}

std::vector<double> log_rising_factorial_prefix(double x, long k_max) {
    require(k_max >= 0, "log_rising_factorial_prefix: k_max must be >= 0");
    if (k_max > 0)
        require(std::isfinite(x) && x > 0.0,
                "log_rising_factorial_prefix: x must be finite and > 0");
    std::vector<double> out(std::size_t(k_max) + 1);
    out[0] = 0.0;
    double s = 0.0;
    double c = 0.0;
    for (long k = 1; k <= k_max; ++k) {
        const double y = std::log(x + double(k - 1)) - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
        out[std::size_t(k)] = s;
    }
    return out;
}

double log_choose(long n, long k) {
    require(n >= 0 && k >= 0 && k <= n, "log_choose: need 0 <= k <= n");
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double log_poisson_pmf(long k, double mean) {
    require(k >= 0, "log_poisson_pmf: k must be >= 0");
    require(std::isfinite(mean) && mean >= 0.0, "log_poisson_pmf: mean must be >= 0");
    if (mean == 0.0) return k == 0 ? 0.0 : kNegInf;
    return double(k) * std::log(mean) - mean - log_factorial(k);
}

double poisson_pmf(long k, double mean) { return std::exp(log_poisson_pmf(k, mean)); }

double log_be_pmf(long k, double cells, double w) {
    require(k >= 0, "log_be_pmf: k must be >= 0");
    require(std::isfinite(cells) && cells > 0.0, "log_be_pmf: cells must be > 0");
    require(std::isfinite(w) && w >= 0.0, "log_be_pmf: w must be >= 0");
    if (w == 0.0) return k == 0 ? 0.0 : kNegInf;
    return log_rising_factorial(cells, k) - log_factorial(k) + double(k) * std::log(w) -
           (cells + double(k)) * std::log1p(w);
}

double be_pmf(long k, double cells, double w) { return std::exp(log_be_pmf(k, cells, w)); }

DegeneracyParam degeneracy_from_temperature(double frequency, double temperature) {
    require(std::isfinite(frequency) && frequency > 0.0,
            "degeneracy_from_temperature: frequency must be > 0");
    require(std::isfinite(temperature) && temperature > 0.0,
            "degeneracy_from_temperature: temperature must be > 0");
    const double x = constants::planck_h * frequency / (constants::boltzmann_k * temperature);
    return DegeneracyParam(1.0 / std::expm1(x));  // expm1 overflows to inf -> w = 0
}

double log_binomial_pmf(long k, long n, double p) {
    require(n >= 0 && k >= 0 && k <= n, "log_binomial_pmf: need 0 <= k <= n");
    require(std::isfinite(p) && p >= 0.0 && p <= 1.0, "log_binomial_pmf: p must be in [0, 1]");
    if (p == 0.0) return k == 0 ? 0.0 : kNegInf;
    if (p == 1.0) return k == n ? 0.0 : kNegInf;
    return log_choose(n, k) + double(k) * std::log(p) + double(n - k) * std::log1p(-p);
}

double binomial_pmf(long k, long n, double p) { return std::exp(log_binomial_pmf(k, n, p)); }

double log_polya_pmf(long k, long n, double alpha, double s_cells) {
    require(n >= 0 && k >= 0 && k <= n, "log_polya_pmf: need 0 <= k <= n");
    require(std::isfinite(alpha) && alpha > 0.0 && alpha < 1.0,
            "log_polya_pmf: alpha must be in (0, 1)");
    require(std::isfinite(s_cells) && s_cells > 0.0, "log_polya_pmf: s_cells must be > 0");
    return log_choose(n, k) + log_rising_factorial(alpha * s_cells, k) +
           log_rising_factorial((1.0 - alpha) * s_cells, n - k) -
           log_rising_factorial(s_cells, n);
}

double polya_pmf(long k, long n, double alpha, double s_cells) {
    return std::exp(log_polya_pmf(k, n, alpha, s_cells));
}

StatModel StatModel::poisson(double density) {
    require(std::isfinite(density) && density >= 0.0, "StatModel: density must be >= 0");
    return StatModel(Kind::poisson, density, 0.0);
}

StatModel StatModel::bose_einstein(DegeneracyParam w) {
    return StatModel(Kind::bose_einstein, w.value(), 0.0);
}

StatModel StatModel::glauber(double gamma, double photon_rate) {
    require(std::isfinite(gamma) && gamma > 0.0, "StatModel: gamma must be > 0");
    require(std::isfinite(photon_rate) && photon_rate >= 0.0,
            "StatModel: photon rate must be >= 0");
    return StatModel(Kind::glauber, gamma, photon_rate);
}

double StatModel::density() const {
    if (kind_ != Kind::poisson) throw std::logic_error("StatModel: not a poisson model");
    return a_;
}

double StatModel::w() const {
    if (kind_ != Kind::bose_einstein)
        throw std::logic_error("StatModel: not a bose-einstein model");
    return a_;
}

double StatModel::gamma() const {
    if (kind_ != Kind::glauber) throw std::logic_error("StatModel: not a glauber model");
    return a_;
}

double StatModel::photon_rate() const {
    if (kind_ != Kind::glauber) throw std::logic_error("StatModel: not a glauber model");
    return b_;
}

double StatModel::mean_count(PhaseVolume v) const noexcept {
    switch (kind_) {
        case Kind::poisson: return a_ * v.cells();
        case Kind::bose_einstein: return a_ * v.cells();
        case Kind::glauber: return b_ * v.cells();
    }
    return 0.0;
}

double StatModel::log_pmf(long k, PhaseVolume v) const {
    switch (kind_) {
        case Kind::poisson: return log_poisson_pmf(k, a_ * v.cells());
        case Kind::bose_einstein: return log_be_pmf(k, v.cells(), a_);
        case Kind::glauber: break;
    }
    require(k >= 0, "StatModel::log_pmf: k must be >= 0");
    return log_pmf_prefix(v, k)[std::size_t(k)];
}

double StatModel::pmf(long k, PhaseVolume v) const { return std::exp(log_pmf(k, v)); }

std::vector<double> StatModel::log_pmf_prefix(PhaseVolume v, long k_max) const {
    require(k_max >= 0, "StatModel::log_pmf_prefix: k_max must be >= 0");
    std::vector<double> out(std::size_t(k_max) + 1);
    switch (kind_) {
        case Kind::poisson: {
            const double mean = a_ * v.cells();
            for (long k = 0; k <= k_max; ++k)
                out[std::size_t(k)] = log_poisson_pmf(k, mean);
            break;
        }
        case Kind::bose_einstein: {
            const double w = a_;
            if (w == 0.0) {
                out[0] = 0.0;
                std::fill(out.begin() + 1, out.end(), kNegInf);
                break;
            }
            const double cells = v.cells();
            const double lw = std::log(w);
            const double l1w = std::log1p(w);
            const auto lrf = log_rising_factorial_prefix(cells, k_max);
            for (long k = 0; k <= k_max; ++k)
                out[std::size_t(k)] = lrf[std::size_t(k)] - log_factorial(k) +
                                      double(k) * lw - (cells + double(k)) * l1w;
            break;
        }
        case Kind::glauber: {
            const SeriesPoly gf =
                glauber_gf_series(GlauberParams{a_, b_, v.cells()}, k_max);
            for (long k = 0; k <= k_max; ++k) {
                const double c = gf.coeff(std::size_t(k));
                out[std::size_t(k)] = c > 0.0 ? std::log(c) : kNegInf;
            }
            break;
        }
    }
    return out;
}

PmfTable StatModel::pmf_table(PhaseVolume v, double tail_target) const {
    require(std::isfinite(tail_target) && tail_target > 0.0 && tail_target < 1.0,
            "StatModel::pmf_table: tail_target must be in (0, 1)");
    const double mean = mean_count(v);
    long k_max = long(mean + 10.0 * std::sqrt(mean + 1.0)) + 32;

    if (kind_ == Kind::poisson || kind_ == Kind::bose_einstein) {
        if (a_ == 0.0) return PmfTable({1.0}, 0.0);  // vacuum: all mass at zero
        // Grow until the geometric-ratio bound on the mass past k_max is
        // below target: past k the term ratio never exceeds r_sup < 1.
        constexpr long kCap = 1 << 24;
        const auto ratio_bound = [&](long K) {
            double r_sup;
            if (kind_ == Kind::poisson) {
                r_sup = mean / double(K + 1);
            } else {
                const double t = a_ / (1.0 + a_);
                r_sup = t * std::max((v.cells() + double(K)) / double(K + 1), 1.0);
            }
            if (!(r_sup < 1.0)) return std::numeric_limits<double>::infinity();
            const double pk = std::exp(log_pmf(K, v));
            return pk * r_sup / (1.0 - r_sup);
        };
        while (k_max < kCap && ratio_bound(k_max) > tail_target) k_max *= 2;

        const auto lp = log_pmf_prefix(v, k_max);
        std::vector<double> probs(lp.size());
        double s = 0.0;
        double c = 0.0;
        for (std::size_t k = 0; k < lp.size(); ++k) {
            probs[k] = std::exp(lp[k]);
            const double y = probs[k] - c;
            const double t = s + y;
            c = (t - s) - y;
            s = t;
        }
        return PmfTable(std::move(probs), std::max(0.0, 1.0 - s) + 1e-13);
    }

    // glauber: no per-term ratio bound; grow the expansion order until the
    // accumulated mass accounts for everything but the target.
    constexpr long kSeriesCap = 1 << 16;
    for (;;) {
        PmfTable table = glauber_pmf(GlauberParams{a_, b_, v.cells()}, k_max);
        if (table.tail_bound() <= tail_target + 1e-13 || k_max >= kSeriesCap)
            return table;
        k_max *= 2;
    }
}

std::string StatModel::describe() const {
    switch (kind_) {
        case Kind::poisson: return "poisson density=" + fmt_g(a_);
        case Kind::bose_einstein: return "bose-einstein w=" + fmt_g(a_);
        case Kind::glauber: return "glauber gamma=" + fmt_g(a_) + " rate=" + fmt_g(b_);
    }
    return "";
}

double gbd(long k, long n, const StatModel& model, PhaseVolume A, PhaseVolume B) {
    require(n >= 0 && k >= 0 && k <= n, "gbd: need 0 <= k <= n");
    const double ls = model.log_pmf(n, A + B);
    if (!(ls >= kGbdLogDenominatorFloor))
        throw DegenerateDenominatorError(
            "gbd: probability of the conditioning total is numerically zero");
    return std::exp(model.log_pmf(k, A) + model.log_pmf(n - k, B) - ls);
}

GbdTable::GbdTable(long n, std::vector<double> values)
    : n_(n), values_(std::move(values)) {
    require(n_ >= 0, "GbdTable: n must be >= 0");
    require(values_.size() == std::size_t(n_) + 1, "GbdTable: need n + 1 values");
    for (double v : values_)
        require(std::isfinite(v) && v >= 0.0, "GbdTable: values must be finite and >= 0");
}

double GbdTable::at(long k) const {
    if (k < 0 || k > n_) throw std::out_of_range("GbdTable::at: k outside 0..n");
    return values_[std::size_t(k)];
}

double GbdTable::sum() const { return kernels::sum(values_); }

GbdTable gbd_table(long n, const StatModel& model, PhaseVolume A, PhaseVolume B) {
    require(n >= 0, "gbd_table: n must be >= 0");
    const double ls = model.log_pmf(n, A + B);
    if (!(ls >= kGbdLogDenominatorFloor))
        throw DegenerateDenominatorError(
            "gbd_table: probability of the conditioning total is numerically zero");
    const auto lpA = model.log_pmf_prefix(A, n);
    const auto lpB = model.log_pmf_prefix(B, n);
    std::vector<double> values(std::size_t(n) + 1);
    for (long k = 0; k <= n; ++k)
        values[std::size_t(k)] =
            std::exp(lpA[std::size_t(k)] + lpB[std::size_t(n - k)] - ls);
    return GbdTable(n, std::move(values));
}

GbdTable two_photon_table(double alpha, double s_cells) {
    require(std::isfinite(alpha) && alpha > 0.0 && alpha < 1.0,
            "two_photon_table: alpha must be in (0, 1)");
    require(std::isfinite(s_cells) && s_cells > 0.0, "two_photon_table: s_cells must be > 0");
    const double b = 1.0 - alpha;
    const double s = s_cells;
    return GbdTable(2, {b * (b * s + 1.0) / (s + 1.0),          //
                        2.0 * alpha * b * s / (s + 1.0),        //
                        alpha * (alpha * s + 1.0) / (s + 1.0)});
}

GbdTable three_photon_table(double alpha, double s_cells) {
    require(std::isfinite(alpha) && alpha > 0.0 && alpha < 1.0,
            "three_photon_table: alpha must be in (0, 1)");
    require(std::isfinite(s_cells) && s_cells > 0.0,
            "three_photon_table: s_cells must be > 0");
    const double b = 1.0 - alpha;
    const double s = s_cells;
    const double d = (s + 1.0) * (s + 2.0);
    return GbdTable(3, {b * (b * s + 1.0) * (b * s + 2.0) / d,          //
                        3.0 * alpha * b * s * (b * s + 1.0) / d,        //
                        3.0 * alpha * b * s * (alpha * s + 1.0) / d,    //
                        alpha * (alpha * s + 1.0) * (alpha * s + 2.0) / d});
}

double verify_convolution(const StatModel& model_a, const StatModel& model_b,
                          const StatModel& model_sum, PhaseVolume A, PhaseVolume B,
                          long n_max) {
    require(n_max >= 0, "verify_convolution: n_max must be >= 0");
    const auto lpA = model_a.log_pmf_prefix(A, n_max);
    const auto lpB = model_b.log_pmf_prefix(B, n_max);
    const auto lpS = model_sum.log_pmf_prefix(A + B, n_max);
    std::vector<double> t(std::size_t(n_max) + 1);
    double worst = 0.0;
    for (long n = 0; n <= n_max; ++n) {
        for (long k = 0; k <= n; ++k)
            t[std::size_t(k)] = lpA[std::size_t(k)] + lpB[std::size_t(n - k)];
        const double lse = log_sum_exp({t.data(), std::size_t(n) + 1});
        if (lse == kNegInf && lpS[std::size_t(n)] == kNegInf) continue;  // 0 == 0
        worst = std::max(worst, std::fabs(std::expm1(lse - lpS[std::size_t(n)])));
    }
    return worst;
}

double verify_convolution(const StatModel& model, PhaseVolume A, PhaseVolume B,
                          long n_max) {
    return verify_convolution(model, model, model, A, B, n_max);
}

double verify_vandermonde(double a, double b, long n) {
    require(std::isfinite(a) && a > 0.0 && std::isfinite(b) && b > 0.0,
            "verify_vandermonde: a and b must be > 0");
    require(n >= 0, "verify_vandermonde: n must be >= 0");
    const auto lrfa = log_rising_factorial_prefix(a, n);
    const auto lrfb = log_rising_factorial_prefix(b, n);
    const double target = log_rising_factorial_prefix(a + b, n)[std::size_t(n)];
    std::vector<double> t(std::size_t(n) + 1);
    for (long k = 0; k <= n; ++k)
        t[std::size_t(k)] =
            log_choose(n, k) + lrfa[std::size_t(k)] + lrfb[std::size_t(n - k)];
    return std::fabs(std::expm1(log_sum_exp(t) - target));
}

}  // namespace photon_gbd
