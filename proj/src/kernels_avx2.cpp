// SPDX-License-Identifier: Apache-2.0
//
// AVX2/FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma on x86-64 and must only be entered after a runtime CPU check
// (the dispatcher in kernels.cpp guarantees that).

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <limits>

#include "photon_gbd/kernels.hpp"

namespace photon_gbd::kernels::avx2 {

namespace {

inline double hsum(__m256d v) noexcept {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

inline double hmax(__m256d v) noexcept {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_max_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_max_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// Load 4 doubles ending at y[last], lanes reversed so lane i holds y[last-i].
inline __m256d load_rev(const double* y_last3) noexcept {
    return _mm256_permute4x64_pd(_mm256_loadu_pd(y_last3), 0x1B);
}

const __m256d kAbsMask =
    _mm256_castsi256_pd(_mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFLL));

}  // namespace

double sum(std::span<const double> x) noexcept {
    const std::size_t n = x.size();
    const double* p = x.data();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(p + i));
    double s = hsum(acc);
    for (; i < n; ++i) s += p[i];
    return s;
}

double max_val(std::span<const double> x) noexcept {
    const std::size_t n = x.size();
    const double* p = x.data();
    double m = -std::numeric_limits<double>::infinity();
    __m256d acc = _mm256_set1_pd(m);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, _mm256_loadu_pd(p + i));
    m = hmax(acc);
    for (; i < n; ++i) m = p[i] > m ? p[i] : m;
    return m;
}

double dot(std::span<const double> x, std::span<const double> y) noexcept {
    const std::size_t n = x.size();
    const double* px = x.data();
    const double* py = y.data();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(px + i), _mm256_loadu_pd(py + i), acc);
    double s = hsum(acc);
    for (; i < n; ++i) s += px[i] * py[i];
    return s;
}

double dot_rev(std::span<const double> x, std::span<const double> y) noexcept {
    const std::size_t n = x.size();
    const double* px = x.data();
    const double* py = y.data();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(px + i), load_rev(py + n - 4 - i), acc);
    double s = hsum(acc);
    for (; i < n; ++i) s += px[i] * py[n - 1 - i];
    return s;
}

double l1_diff(std::span<const double> x, std::span<const double> y) noexcept {
    const std::size_t n = x.size() < y.size() ? x.size() : y.size();
    const double* px = x.data();
    const double* py = y.data();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(px + i), _mm256_loadu_pd(py + i));
        acc = _mm256_add_pd(acc, _mm256_and_pd(d, kAbsMask));
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += std::fabs(px[i] - py[i]);
    for (std::size_t j = n; j < x.size(); ++j) s += std::fabs(px[j]);
    for (std::size_t j = n; j < y.size(); ++j) s += std::fabs(py[j]);
    return s;
}

void conv_trunc(std::span<const double> a, std::span<const double> b,
                std::span<double> out) noexcept {
    const std::size_t nout = out.size();
    for (std::size_t k = 0; k < nout; ++k) {
        const std::size_t lo = (!b.empty() && k >= b.size()) ? k - b.size() + 1 : 0;
        if (a.empty() || b.empty() || lo >= a.size()) {
            out[k] = 0.0;
            continue;
        }
        const std::size_t hi = k < a.size() ? k : a.size() - 1;
        // sum a[i] * b[k-i] for i in [lo, hi]
        const double* pa = a.data() + lo;
        const double* pb = b.data();  // index k - i
        const std::size_t len = hi - lo + 1;
        __m256d acc = _mm256_setzero_pd();
        std::size_t i = 0;
        for (; i + 4 <= len; i += 4)
            acc = _mm256_fmadd_pd(_mm256_loadu_pd(pa + i),
                                  load_rev(pb + (k - lo - i) - 3), acc);
        double s = hsum(acc);
        for (; i < len; ++i) s += pa[i] * pb[k - lo - i];
        out[k] = s;
    }
}

}  // namespace photon_gbd::kernels::avx2

#endif  // x86-64
