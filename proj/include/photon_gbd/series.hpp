// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "photon_gbd/pmf_table.hpp"

// Truncated power-series arithmetic. Coefficient k of every result depends
// only on coefficients 0..k of the inputs, so truncating at some order and
// computing, versus computing long and truncating after, give bitwise
// identical prefixes. Probability generating functions expanded this way
// turn functional identities (like composition of independent stages) into
// checkable statements about finitely many coefficients.

namespace photon_gbd {

class SeriesPoly {
 public:
    explicit SeriesPoly(std::vector<double> coeffs);

    std::size_t order() const noexcept { return coeffs_.size() - 1; }
    // coefficient of z^k; zero beyond the truncation order
    double coeff(std::size_t k) const noexcept {
        return k < coeffs_.size() ? coeffs_[k] : 0.0;
    }
    std::span<const double> coeffs() const noexcept { return coeffs_; }

 private:
    std::vector<double> coeffs_;
};

SeriesPoly series_add(const SeriesPoly& a, const SeriesPoly& b);
SeriesPoly series_scale(const SeriesPoly& a, double factor);

// Cauchy product truncated at `order`.
SeriesPoly series_mul(const SeriesPoly& a, const SeriesPoly& b, std::size_t order);

// Power series of sqrt(a(z)); requires a(0) > 0.
SeriesPoly series_sqrt(const SeriesPoly& a, std::size_t order);

// Power series of exp(a(z)).
SeriesPoly series_exp(const SeriesPoly& a, std::size_t order);

// Coefficients of (1 - z)^(-a): c_k = a(a+1)...(a+k-1) / k!. This is the
// generating kernel of the thermal counting law; its multiplicativity in a
// mirrors the additivity of phase volumes.
SeriesPoly rising_factorial_gf(double a, std::size_t order);

// max_k |a_k - b_k| / max(|a_k|, |b_k|), ignoring positions where both
// coefficients vanish to double precision.
double max_rel_coeff_diff(std::span<const double> a, std::span<const double> b);

// Counting statistics of chaotic light observed for a time tau against a
// detector/field bandwidth parameter gamma, with mean rate photon_rate.
// The generating function is exp(-(sqrt(gamma^2 + 2 gamma rate (1-z)) - gamma) tau);
// its z-expansion yields the photon-number probabilities directly.
struct GlauberParams {
    double gamma;
    double photon_rate;
    double tau;
};

SeriesPoly glauber_gf_series(const GlauberParams& p, long order);

// Probability table from the series above, truncated at `order` with an
// honest bound on the uncaptured mass.
PmfTable glauber_pmf(const GlauberParams& p, long order);

// Largest relative coefficient mismatch between gf(tau1) * gf(tau2) and
// gf(tau1 + tau2) through z^order. Additivity of observation windows is an
// exact property of the law; the residual measures only arithmetic error.
double verify_gf_multiplicativity(double gamma, double photon_rate, double tau1,
                                  double tau2, long order);

// Same check for (1-z)^(-a) (1-z)^(-b) = (1-z)^(-(a+b)).
double verify_rf_gf_multiplicativity(double a, double b, long order);

}  // namespace photon_gbd
