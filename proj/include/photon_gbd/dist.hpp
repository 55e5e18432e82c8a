// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "photon_gbd/pmf_table.hpp"
#include "photon_gbd/types.hpp"

// Photon-number laws and the split statistics built on top of them.
//
// Everything is evaluated in log space: the counting distributions decay
// fast enough that linear-space probabilities underflow long before the
// regime the identity checks care about (a Poisson mean of 0.3 puts
// ~1e-1100 of mass at n = 200). Ratios of log-pmfs stay perfectly tame
// there, so the split distribution and the residual checks work on logs
// and exponentiate only at the end.

namespace photon_gbd {

// log of x (x+1) ... (x+k-1); zero-length product is 1. Requires x > 0
// unless k == 0. Small k uses a direct sum of logs, which avoids the
// cancellation a Gamma-function difference hits when k << x.
double log_rising_factorial(double x, long k);

// Cumulative table: out[k] = log_rising_factorial(x, k) for k = 0..k_max,
// compensated summation so entry errors do not drift with k.
std::vector<double> log_rising_factorial_prefix(double x, long k_max);

// log C(n, k)
double log_choose(long n, long k);

// Counting law of fully coherent light.
double log_poisson_pmf(long k, double mean);
double poisson_pmf(long k, double mean);

// Counting law of chaotic (thermal) light occupying `cells` phase-space
// cells with mean occupancy w per cell. cells = 1 reduces to the geometric
// law; large cells with w*cells fixed approaches Poisson.
double log_be_pmf(long k, double cells, double w);
double be_pmf(long k, double cells, double w);

// Mean occupancy of a thermal mode at frequency nu (Hz) and temperature T (K).
DegeneracyParam degeneracy_from_temperature(double frequency, double temperature);

double log_binomial_pmf(long k, long n, double p);
double binomial_pmf(long k, long n, double p);

// Conditional split law of thermal light: k of n photons land in a channel
// of fractional size alpha when the undivided beam spans S cells. This is
// the beta-binomial law with shape parameters (alpha*S, (1-alpha)*S).
double log_polya_pmf(long k, long n, double alpha, double s_cells);
double polya_pmf(long k, long n, double alpha, double s_cells);

// The three photon-number laws the library covers, behind one interface.
// `volume` is the extensive knob in each case: phase-space cells for the
// poisson / bose_einstein kinds, observation time for glauber (whose pmf
// comes from its generating-function series).
class StatModel {
 public:
    enum class Kind { poisson, bose_einstein, glauber };

    // mean photons per unit volume
    static StatModel poisson(double density);
    static StatModel bose_einstein(DegeneracyParam w);
    // gamma: bandwidth-like decay parameter; rate: mean photons per unit time
    static StatModel glauber(double gamma, double photon_rate);

    Kind kind() const noexcept { return kind_; }
    double density() const;
    double w() const;
    double gamma() const;
    double photon_rate() const;

    double mean_count(PhaseVolume v) const noexcept;

    double log_pmf(long k, PhaseVolume v) const;
    double pmf(long k, PhaseVolume v) const;

    // out[k] = log_pmf(k, v) for k = 0..k_max; for the glauber kind this
    // costs one series expansion rather than k_max of them.
    std::vector<double> log_pmf_prefix(PhaseVolume v, long k_max) const;

    // Table truncated where the certified remaining mass drops below
    // tail_target (subject to a hard length cap; the recorded tail bound is
    // honest either way).
    PmfTable pmf_table(PhaseVolume v, double tail_target = 1e-12) const;

    std::string describe() const;

 private:
    StatModel(Kind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}

    Kind kind_;
    double a_;  // density | w | gamma
    double b_;  // unused  | unused | photon_rate
};

// Below this log-probability the denominator of the split law is treated as
// numerically degenerate (the conditioning event has probability < e^-10000).
inline constexpr double kGbdLogDenominatorFloor = -1.0e4;

class DegenerateDenominatorError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

// P(k photons in channel A | n photons total), beam split into volumes A
// and B. Defined for any of the three models; for poisson it collapses to
// binomial(n, A/(A+B)) and for bose_einstein to the beta-binomial above.
double gbd(long k, long n, const StatModel& model, PhaseVolume A, PhaseVolume B);

// Full conditional row at fixed total n: value(k) = gbd(k, n, ...).
class GbdTable {
 public:
    GbdTable(long n, std::vector<double> values);

    long n() const noexcept { return n_; }
    double at(long k) const;
    std::span<const double> values() const noexcept { return values_; }
    double sum() const;

 private:
    long n_;
    std::vector<double> values_;
};

GbdTable gbd_table(long n, const StatModel& model, PhaseVolume A, PhaseVolume B);

// Closed forms of the thermal split law at n = 2 and n = 3. Used as
// independent cross-checks of gbd_table and as the fast path for the
// small-n sweeps.
GbdTable two_photon_table(double alpha, double s_cells);
GbdTable three_photon_table(double alpha, double s_cells);

// Largest relative violation of p_n(A+B) = sum_k p_k(A) p_{n-k}(B) over
// n = 0..n_max, evaluated via log-sum-exp. The three-model overload exists
// so a deliberately inconsistent triple can serve as a negative control.
double verify_convolution(const StatModel& model_a, const StatModel& model_b,
                          const StatModel& model_sum, PhaseVolume A, PhaseVolume B,
                          long n_max);
double verify_convolution(const StatModel& model, PhaseVolume A, PhaseVolume B,
                          long n_max);

// Relative violation of rf(a+b, n) = sum_k C(n,k) rf(a,k) rf(b,n-k) at one n.
double verify_vandermonde(double a, double b, long n);

}  // namespace photon_gbd
