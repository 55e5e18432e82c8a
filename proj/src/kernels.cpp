// SPDX-License-Identifier: Apache-2.0
#include "photon_gbd/kernels.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>

namespace photon_gbd::kernels {

namespace scalar {

double sum(std::span<const double> x) noexcept {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
}

double max_val(std::span<const double> x) noexcept {
    double m = -std::numeric_limits<double>::infinity();
    for (double v : x) m = v > m ? v : m;
    return m;
}

double dot(std::span<const double> x, std::span<const double> y) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

double dot_rev(std::span<const double> x, std::span<const double> y) noexcept {
    const std::size_t n = x.size();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[n - 1 - i];
    return s;
}

double l1_diff(std::span<const double> x, std::span<const double> y) noexcept {
    const std::size_t n = x.size() < y.size() ? x.size() : y.size();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::fabs(x[i] - y[i]);
    for (std::size_t i = n; i < x.size(); ++i) s += std::fabs(x[i]);
    for (std::size_t i = n; i < y.size(); ++i) s += std::fabs(y[i]);
    return s;
}

void conv_trunc(std::span<const double> a, std::span<const double> b,
                std::span<double> out) noexcept {
    const std::size_t nout = out.size();
    for (std::size_t k = 0; k < nout; ++k) {
        const std::size_t lo = k >= b.size() ? k - b.size() + 1 : 0;
        const std::size_t hi = k < a.size() ? k : a.size() - 1;
        double s = 0.0;
        for (std::size_t i = lo; i <= hi && hi < a.size(); ++i) s += a[i] * b[k - i];
        out[k] = s;
    }
}

}  // namespace scalar

namespace {

struct Ops {
    Backend backend;
    std::string_view name;
    double (*sum)(std::span<const double>) noexcept;
    double (*max_val)(std::span<const double>) noexcept;
    double (*dot)(std::span<const double>, std::span<const double>) noexcept;
    double (*dot_rev)(std::span<const double>, std::span<const double>) noexcept;
    double (*l1_diff)(std::span<const double>, std::span<const double>) noexcept;
    void (*conv_trunc)(std::span<const double>, std::span<const double>,
                       std::span<double>) noexcept;
};

constexpr Ops kScalarOps{Backend::scalar, "scalar",
                         scalar::sum,     scalar::max_val, scalar::dot,
                         scalar::dot_rev, scalar::l1_diff, scalar::conv_trunc};

#if defined(__x86_64__) || defined(_M_X64)
constexpr Ops kAvx2Ops{Backend::avx2, "avx2",
                       avx2::sum,     avx2::max_val, avx2::dot,
                       avx2::dot_rev, avx2::l1_diff, avx2::conv_trunc};
#endif

const Ops* select_default() noexcept {
#if defined(__x86_64__) || defined(_M_X64)
    const char* env = std::getenv("PHOTON_GBD_KERNELS");
    if (env != nullptr) {
        if (std::strcmp(env, "scalar") == 0) return &kScalarOps;
        if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) return &kAvx2Ops;
        // "auto" or anything unrecognized falls through to detection
    }
    if (cpu_has_avx2()) return &kAvx2Ops;
#endif
    return &kScalarOps;
}

std::atomic<const Ops*> g_ops{nullptr};

const Ops* ops() noexcept {
    const Ops* p = g_ops.load(std::memory_order_acquire);
    if (p == nullptr) {
        p = select_default();
        g_ops.store(p, std::memory_order_release);
    }
    return p;
}

}  // namespace

bool cpu_has_avx2() noexcept {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend active_backend() noexcept { return ops()->backend; }

std::string_view backend_name() noexcept { return ops()->name; }

bool set_backend(Backend b) noexcept {
    if (b == Backend::scalar) {
        g_ops.store(&kScalarOps, std::memory_order_release);
        return true;
    }
#if defined(__x86_64__) || defined(_M_X64)
    if (b == Backend::avx2 && cpu_has_avx2()) {
        g_ops.store(&kAvx2Ops, std::memory_order_release);
        return true;
    }
#endif
    return false;
}

double sum(std::span<const double> x) noexcept { return ops()->sum(x); }
double max_val(std::span<const double> x) noexcept { return ops()->max_val(x); }
double dot(std::span<const double> x, std::span<const double> y) noexcept {
    return ops()->dot(x, y);
}
double dot_rev(std::span<const double> x, std::span<const double> y) noexcept {
    return ops()->dot_rev(x, y);
}
double l1_diff(std::span<const double> x, std::span<const double> y) noexcept {
    return ops()->l1_diff(x, y);
}
void conv_trunc(std::span<const double> a, std::span<const double> b,
                std::span<double> out) noexcept {
    ops()->conv_trunc(a, b, out);
}

}  // namespace photon_gbd::kernels
