// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <string_view>

// Counter-based generator (Philox 4x32, 10 rounds). Chosen over the stdlib
// engines because output is a pure function of (seed, stream, position):
// runs reproduce bit-for-bit across platforms and standard-library versions,
// and independent streams come from distinct stream ids rather than from
// seed arithmetic.

namespace photon_gbd {

class RngStream {
 public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0) noexcept
        : key_{std::uint32_t(seed), std::uint32_t(seed >> 32)},
          block_index_(0),
          stream_(stream),
          pos_(4) {}

    std::uint32_t next_u32() noexcept {
        if (pos_ == 4) refill();
        return buf_[std::size_t(pos_++)];
    }

    std::uint64_t next_u64() noexcept {
        const std::uint64_t lo = next_u32();
        const std::uint64_t hi = next_u32();
        return (hi << 32) | lo;
    }

    // uniform on the open interval (0, 1); 53-bit resolution, never 0 or 1
    double next_double() noexcept {
        return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    static constexpr std::string_view algorithm() noexcept { return "philox4x32-10"; }

    // one keyed permutation of a 128-bit counter; public for known-answer tests
    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> counter,
                                              std::array<std::uint32_t, 2> key) noexcept;

 private:
    void refill() noexcept {
        buf_ = block({std::uint32_t(block_index_), std::uint32_t(block_index_ >> 32),
                      std::uint32_t(stream_), std::uint32_t(stream_ >> 32)},
                     key_);
        ++block_index_;
        pos_ = 0;
    }

    std::array<std::uint32_t, 2> key_;
    std::uint64_t block_index_;
    std::uint64_t stream_;
    std::array<std::uint32_t, 4> buf_{};
    int pos_;
};

}  // namespace photon_gbd
