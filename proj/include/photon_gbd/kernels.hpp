// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string_view>

// Data-parallel primitives used by the distribution, series, and histogram
// code. Every kernel exists twice: a scalar reference implementation and an
// AVX2 variant. The active variant is chosen at runtime from CPU features
// (override with PHOTON_GBD_KERNELS=scalar|avx2|auto or set_backend()), and
// the two are equivalence-tested against each other.
//
// Accumulation order differs between variants (lane-wise vs sequential), so
// results agree to rounding, not bit-for-bit. Within one process the backend
// is fixed, which keeps individual runs deterministic.

namespace photon_gbd::kernels {

enum class Backend { scalar, avx2 };

bool cpu_has_avx2() noexcept;
Backend active_backend() noexcept;
std::string_view backend_name() noexcept;

// Returns false (and leaves the backend unchanged) if the CPU lacks support.
bool set_backend(Backend b) noexcept;

// sum x[i]
double sum(std::span<const double> x) noexcept;

// max x[i]; -infinity for an empty span
double max_val(std::span<const double> x) noexcept;

// sum x[i] * y[i]; sizes must match
double dot(std::span<const double> x, std::span<const double> y) noexcept;

// sum x[i] * y[L-1-i], the convolution pairing; sizes must match
double dot_rev(std::span<const double> x, std::span<const double> y) noexcept;

// sum |x[i] - y[i]| with the shorter span zero-extended
double l1_diff(std::span<const double> x, std::span<const double> y) noexcept;

// Truncated Cauchy product: out[k] = sum_{i<=k} a[i] * b[k-i], where
// coefficients past the end of a or b read as zero. out may not alias inputs.
void conv_trunc(std::span<const double> a, std::span<const double> b,
                std::span<double> out) noexcept;

// Reference implementations, always available; the equivalence tests and the
// dispatcher's fallback both use these.
namespace scalar {
double sum(std::span<const double> x) noexcept;
double max_val(std::span<const double> x) noexcept;
double dot(std::span<const double> x, std::span<const double> y) noexcept;
double dot_rev(std::span<const double> x, std::span<const double> y) noexcept;
double l1_diff(std::span<const double> x, std::span<const double> y) noexcept;
void conv_trunc(std::span<const double> a, std::span<const double> b,
                std::span<double> out) noexcept;
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
double sum(std::span<const double> x) noexcept;
double max_val(std::span<const double> x) noexcept;
double dot(std::span<const double> x, std::span<const double> y) noexcept;
double dot_rev(std::span<const double> x, std::span<const double> y) noexcept;
double l1_diff(std::span<const double> x, std::span<const double> y) noexcept;
void conv_trunc(std::span<const double> a, std::span<const double> b,
                std::span<double> out) noexcept;
}  // namespace avx2
#endif

}  // namespace photon_gbd::kernels
