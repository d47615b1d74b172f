// Copyright 2026 The twinstats Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace twinstats {

using u64 = std::uint64_t;

// Largest bound accepted anywhere; leaves headroom for p+2 and base-prime squares.
inline constexpr u64 kMaxBound = u64{1} << 44;
inline constexpr unsigned kDefaultSegmentBits = 20;

u64 isqrt(u64 n);

// All primes <= limit, ascending. Empty for limit < 2.
std::vector<u64> base_primes(u64 limit);

/**
 * Primality flags for the half-open range [lo, hi).
 *
 * Only odd numbers are stored; 2 is tracked separately. The public
 * accessors speak in terms of all integers in the range.
 * Immutable once constructed, so it can be handed between threads freely.
 */
class SieveSegment {
  public:
    // Throws PreconditionError if lo < 2, lo >= hi, or base misses a prime <= sqrt(hi-1).
    SieveSegment(u64 lo, u64 hi, std::span<const u64> base);

    u64 lo() const { return lo_; }
    u64 hi() const { return hi_; }
    u64 size() const { return hi_ - lo_; }

    // n must lie in [lo, hi).
    bool is_prime(u64 n) const;
    bool test(u64 offset) const { return is_prime(lo_ + offset); }

    u64 count() const;
    // Primes in [from, to) intersected with the segment.
    u64 count(u64 from, u64 to) const;

    template <class F>
    void for_each_prime(F&& f) const {
        for_each_prime(lo_, hi_, std::forward<F>(f));
    }

    // Calls f(p) for every prime p in [from, to) ∩ [lo, hi), ascending.
    template <class F>
    void for_each_prime(u64 from, u64 to, F&& f) const {
        if (from < lo_) from = lo_;
        if (to > hi_) to = hi_;
        if (from >= to) return;
        if (has_two_ && from <= 2 && 2 < to) f(u64{2});
        auto [s0, s1] = slot_range(from, to);
        if (s0 >= s1) return;
        std::size_t w0 = s0 / 64, w1 = (s1 - 1) / 64;
        for (std::size_t w = w0; w <= w1; ++w) {
            u64 word = bits_[w];
            if (w == w0) word &= ~u64{0} << (s0 % 64);
            if (w == w1 && s1 % 64 != 0) word &= (u64{1} << (s1 % 64)) - 1;
            while (word) {
                unsigned b = static_cast<unsigned>(std::countr_zero(word));
                f(first_odd_ + 2 * (u64{w} * 64 + b));
                word &= word - 1;
            }
        }
    }

    std::vector<u64> primes() const;

    friend bool operator==(const SieveSegment&, const SieveSegment&) = default;

  private:
    // Odd slot indices covering [from, to); both clamped to the segment.
    std::pair<u64, u64> slot_range(u64 from, u64 to) const;

    u64 lo_;
    u64 hi_;
    u64 first_odd_;
    u64 slots_;
    bool has_two_;
    std::vector<u64> bits_;
};

inline SieveSegment sieve_segment(u64 lo, u64 hi, std::span<const u64> base) {
    return SieveSegment(lo, hi, base);
}

struct TwinPair {
    u64 p;

    constexpr u64 lower() const { return p; }
    constexpr u64 upper() const { return p + 2; }

    friend constexpr auto operator<=>(const TwinPair&, const TwinPair&) = default;
};

// Fixed-length tiling of [2, end) used by every scan.
class SegmentPlan {
  public:
    SegmentPlan(u64 end, unsigned segment_bits);

    u64 length() const { return length_; }
    u64 end() const { return end_; }
    std::size_t count() const;
    // Index of the segment containing n (n in [2, end)).
    std::size_t index_of(u64 n) const;
    std::pair<u64, u64> bounds(std::size_t index) const;

  private:
    u64 end_;
    u64 length_;
};

// pi(n): number of primes <= n.
u64 prime_count(u64 n, unsigned segment_bits = kDefaultSegmentBits);

// Twin pairs with both members <= n, ascending.
std::vector<TwinPair> twin_stream(u64 n, unsigned segment_bits = kDefaultSegmentBits);

}  // namespace twinstats
