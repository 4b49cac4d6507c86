// SPDX-License-Identifier: Apache-2.0
//
// noma-esg  uplink NOMA vs. OMA ergodic sum-rate analysis
// Copyright (C) 2026 The noma-esg authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <utility>

namespace esg {

namespace detail {

// Philox4x32-10 round constants (Salmon et al., "Parallel random numbers:
// as easy as 1, 2, 3", SC'11).
inline constexpr std::uint32_t philox_m0 = 0xD2511F53u;
inline constexpr std::uint32_t philox_m1 = 0xCD9E8D57u;
inline constexpr std::uint32_t philox_w0 = 0x9E3779B9u;
inline constexpr std::uint32_t philox_w1 = 0xBB67AE85u;

inline void mul_hi_lo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo)
{
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key)
{
    for (int round = 0; round < 10; ++round)
    {
        if (round > 0)
        {
            key[0] += philox_w0;
            key[1] += philox_w1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mul_hi_lo(philox_m0, ctr[0], hi0, lo0);
        mul_hi_lo(philox_m1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

} // namespace detail

// splitmix64 finalizer; used to spread master seeds into per-point seeds.
inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index)
{
    return splitmix64(master ^ splitmix64(index + 1));
}

// Counter-based random stream. A (seed, stream) pair names the stream; the
// 128-bit Philox counter is (block, stream), so draws depend only on the pair
// and the draw position, never on which thread makes them. Trial i of a Monte
// Carlo run owns stream i and is reproducible under any scheduling.
class CounterRng
{
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_(stream)
    {
    }

    std::uint64_t next_u64()
    {
        if (word_ >= 4)
            refill();
        const std::uint64_t lo = buf_[word_];
        const std::uint64_t hi = buf_[word_ + 1];
        word_ += 2;
        return lo | (hi << 32);
    }

    // Uniform on (0,1]; safe as a log() argument.
    double uniform_oc() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    // Uniform on [0,1).
    double uniform_co() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Box-Muller pair of independent N(0,1) variates.
    std::pair<double, double> normal_pair()
    {
        const double u1 = uniform_oc();
        const double u2 = uniform_co();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 6.283185307179586476925286766559 * u2;
        return {r * std::cos(t), r * std::sin(t)};
    }

    // Circularly symmetric complex Gaussian CN(0,1): real and imaginary
    // parts independent with variance 1/2 each.
    std::complex<double> next_cn()
    {
        const auto [a, b] = normal_pair();
        constexpr double half_sqrt = 0.70710678118654752440; // sqrt(1/2)
        return {half_sqrt * a, half_sqrt * b};
    }

    // Uniform index in [0, n). Floor of u*n on 53 random bits; the residual
    // bias is O(n * 2^-53) and irrelevant at the n <= 2^20 used here.
    std::uint64_t next_index(std::uint64_t n)
    {
        const auto idx = static_cast<std::uint64_t>(uniform_co() * static_cast<double>(n));
        return idx < n ? idx : n - 1;
    }

  private:
    void refill()
    {
        const std::array<std::uint32_t, 4> ctr = {
            static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
            static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
        buf_ = detail::philox4x32(ctr, key_);
        ++block_;
        word_ = 0;
    }

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_ = 0;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int word_ = 4;
};

// Deterministic pairwise reduction in index order. The split points depend
// only on the length, so the result is identical no matter how the inputs
// were produced or on how many threads.
inline double pairwise_sum(std::span<const double> values)
{
    if (values.size() <= 16)
    {
        double s = 0.0;
        for (const double v : values)
            s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

} // namespace esg
