// SPDX-License-Identifier: Apache-2.0
#include "photon_gbd/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "photon_gbd/kernels.hpp"

namespace photon_gbd {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::domain_error(msg);
}

}  // namespace

SeriesPoly::SeriesPoly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    require(!coeffs_.empty(), "SeriesPoly: need at least the constant coefficient");
    for (double c : coeffs_)
        require(std::isfinite(c), "SeriesPoly: coefficients must be finite");
}

SeriesPoly series_add(const SeriesPoly& a, const SeriesPoly& b) {
    std::vector<double> out(std::max(a.coeffs().size(), b.coeffs().size()));
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = a.coeff(k) + b.coeff(k);
    return SeriesPoly(std::move(out));
}

SeriesPoly series_scale(const SeriesPoly& a, double factor) {
    std::vector<double> out(a.coeffs().begin(), a.coeffs().end());
    for (double& c : out) c *= factor;
    return SeriesPoly(std::move(out));
}

SeriesPoly series_mul(const SeriesPoly& a, const SeriesPoly& b, std::size_t order) {
    std::vector<double> out(order + 1);
    kernels::conv_trunc(a.coeffs(), b.coeffs(), out);
    return SeriesPoly(std::move(out));
}

SeriesPoly series_sqrt(const SeriesPoly& a, std::size_t order) {
    require(a.coeff(0) > 0.0, "series_sqrt: constant coefficient must be > 0");
    std::vector<double> b(order + 1);
    b[0] = std::sqrt(a.coeff(0));
    const double inv2b0 = 1.0 / (2.0 * b[0]);
    for (std::size_t k = 1; k <= order; ++k) {
        // b solves (sum b_j z^j)^2 = a: isolate the two b_0 b_k cross terms.
        const std::span<const double> inner(b.data() + 1, k - 1);
        b[k] = (a.coeff(k) - kernels::dot_rev(inner, inner)) * inv2b0;
    }
    return SeriesPoly(std::move(b));
}

SeriesPoly series_exp(const SeriesPoly& a, std::size_t order) {
    // b' = a' b  =>  k b_k = sum_{j=1..k} j a_j b_{k-j}
    std::vector<double> ja(order + 1, 0.0);
    for (std::size_t j = 1; j <= order; ++j) ja[j] = double(j) * a.coeff(j);
    std::vector<double> b(order + 1);
    b[0] = std::exp(a.coeff(0));
    for (std::size_t k = 1; k <= order; ++k)
        b[k] = kernels::dot_rev({ja.data() + 1, k}, {b.data(), k}) / double(k);
    return SeriesPoly(std::move(b));
}

SeriesPoly rising_factorial_gf(double a, std::size_t order) {
    require(std::isfinite(a) && a > 0.0, "rising_factorial_gf: a must be > 0");
    std::vector<double> c(order + 1);
    c[0] = 1.0;
    for (std::size_t k = 0; k < order; ++k)
        c[k + 1] = c[k] * (a + double(k)) / double(k + 1);
    for (double v : c)
        require(std::isfinite(v), "rising_factorial_gf: coefficients overflow at this order");
    return SeriesPoly(std::move(c));
}

double max_rel_coeff_diff(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = std::max(a.size(), b.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double x = k < a.size() ? a[k] : 0.0;
        const double y = k < b.size() ? b[k] : 0.0;
        const double scale = std::max(std::fabs(x), std::fabs(y));
        if (scale < 1e-300) continue;  // both numerically zero
        worst = std::max(worst, std::fabs(x - y) / scale);
    }
    return worst;
}

namespace {

void check_glauber(const GlauberParams& p) {
    require(std::isfinite(p.gamma) && p.gamma > 0.0, "GlauberParams: gamma must be > 0");
    require(std::isfinite(p.photon_rate) && p.photon_rate >= 0.0,
            "GlauberParams: photon_rate must be >= 0");
    require(std::isfinite(p.tau) && p.tau > 0.0, "GlauberParams: tau must be > 0");
}

}  // namespace

SeriesPoly glauber_gf_series(const GlauberParams& p, long order) {
    check_glauber(p);
    require(order >= 0, "glauber_gf_series: order must be >= 0");
    const std::size_t n = std::size_t(order) + 1;
    // Under the radical the z-dependence is linear: gamma^2 + 2 gamma rate (1 - z).
    std::vector<double> q(n, 0.0);
    q[0] = p.gamma * p.gamma + 2.0 * p.gamma * p.photon_rate;
    if (n > 1) q[1] = -2.0 * p.gamma * p.photon_rate;
    const SeriesPoly root = series_sqrt(SeriesPoly(std::move(q)), std::size_t(order));
    std::vector<double> e(n);
    e[0] = -p.tau * (root.coeff(0) - p.gamma);
    for (std::size_t k = 1; k < n; ++k) e[k] = -p.tau * root.coeff(k);
    return series_exp(SeriesPoly(std::move(e)), std::size_t(order));
}

PmfTable glauber_pmf(const GlauberParams& p, long order) {
    const SeriesPoly gf = glauber_gf_series(p, order);
    std::vector<double> probs(gf.coeffs().begin(), gf.coeffs().end());
    double s = 0.0;
    double c = 0.0;
    for (double& v : probs) {
        if (v < 0.0 && v > -1e-12) v = 0.0;  // rounding dust from the recurrences
        const double y = v - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return PmfTable(std::move(probs), std::max(0.0, 1.0 - s) + 1e-13);
}

double verify_gf_multiplicativity(double gamma, double photon_rate, double tau1,
                                  double tau2, long order) {
    require(order >= 0, "verify_gf_multiplicativity: order must be >= 0");
    const SeriesPoly g1 = glauber_gf_series({gamma, photon_rate, tau1}, order);
    const SeriesPoly g2 = glauber_gf_series({gamma, photon_rate, tau2}, order);
    const SeriesPoly g12 = glauber_gf_series({gamma, photon_rate, tau1 + tau2}, order);
    const SeriesPoly prod = series_mul(g1, g2, std::size_t(order));
    return max_rel_coeff_diff(prod.coeffs(), g12.coeffs());
}

double verify_rf_gf_multiplicativity(double a, double b, long order) {
    require(order >= 0, "verify_rf_gf_multiplicativity: order must be >= 0");
    const SeriesPoly ga = rising_factorial_gf(a, std::size_t(order));
    const SeriesPoly gb = rising_factorial_gf(b, std::size_t(order));
    const SeriesPoly gab = rising_factorial_gf(a + b, std::size_t(order));
    const SeriesPoly prod = series_mul(ga, gb, std::size_t(order));
    return max_rel_coeff_diff(prod.coeffs(), gab.coeffs());
}

}  // namespace photon_gbd
