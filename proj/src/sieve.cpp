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

#include "twinstats/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "twinstats/error.hpp"

namespace twinstats {

u64 isqrt(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

std::vector<u64> base_primes(u64 limit) {
    std::vector<u64> primes;
    if (limit < 2) return primes;
    std::vector<char> composite(limit + 1, 0);
    for (u64 i = 2; i * i <= limit; ++i)
        if (!composite[i])
            for (u64 j = i * i; j <= limit; j += i) composite[j] = 1;
    for (u64 i = 2; i <= limit; ++i)
        if (!composite[i]) primes.push_back(i);
    return primes;
}

namespace {

bool trial_division_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d <= n / d; ++d)
        if (n % d == 0) return false;
    return true;
}

// Every prime <= sqrt(hi-1) must be present; only the stretch above max(base) needs checking.
void check_base(u64 hi, std::span<const u64> base) {
    u64 need = isqrt(hi - 1);
    u64 have = base.empty() ? 1 : base.back();
    for (u64 m = have + 1; m <= need; ++m) {
        if (trial_division_prime(m))
            throw PreconditionError("base primes insufficient for segment ending at " +
                                    std::to_string(hi) + ": missing " + std::to_string(m));
    }
}

}  // namespace

SieveSegment::SieveSegment(u64 lo, u64 hi, std::span<const u64> base)
    : lo_(lo), hi_(hi), first_odd_(lo | 1), slots_(0), has_two_(lo <= 2 && 2 < hi) {
    if (lo < 2) throw PreconditionError("segment lo must be >= 2");
    if (lo >= hi) throw PreconditionError("segment requires lo < hi");
    if (hi > kMaxBound + 3) throw PreconditionError("segment exceeds supported bound");
    check_base(hi, base);

    if (hi > first_odd_) slots_ = (hi - first_odd_ + 1) / 2;
    bits_.assign((slots_ + 63) / 64, ~u64{0});
    if (slots_ % 64 != 0) bits_.back() = (u64{1} << (slots_ % 64)) - 1;

    for (u64 p : base) {
        if (p == 2) continue;
        if (p * p >= hi) break;
        u64 start = std::max(p * p, (first_odd_ + p - 1) / p * p);
        if (start % 2 == 0) start += p;
        for (u64 j = (start - first_odd_) / 2; j < slots_; j += p) bits_[j / 64] &= ~(u64{1} << (j % 64));
    }
}

std::pair<u64, u64> SieveSegment::slot_range(u64 from, u64 to) const {
    from = std::max(from, first_odd_);
    if (to <= from) return {0, 0};
    u64 s0 = (from - first_odd_ + 1) / 2;
    u64 s1 = std::min(slots_, (to - first_odd_ + 1) / 2);
    return {s0, std::max(s0, s1)};
}

bool SieveSegment::is_prime(u64 n) const {
    if (n < lo_ || n >= hi_) throw PreconditionError("is_prime: value outside segment");
    if (n == 2) return true;
    if (n % 2 == 0) return false;
    u64 j = (n - first_odd_) / 2;
    return (bits_[j / 64] >> (j % 64)) & 1;
}

u64 SieveSegment::count() const {
    u64 c = has_two_ ? 1 : 0;
    for (u64 w : bits_) c += static_cast<u64>(std::popcount(w));
    return c;
}

u64 SieveSegment::count(u64 from, u64 to) const {
    u64 c = 0;
    for_each_prime(from, to, [&c](u64) { ++c; });
    return c;
}

std::vector<u64> SieveSegment::primes() const {
    std::vector<u64> out;
    out.reserve(count());
    for_each_prime([&out](u64 p) { out.push_back(p); });
    return out;
}

SegmentPlan::SegmentPlan(u64 end, unsigned segment_bits) : end_(end), length_(u64{1} << segment_bits) {
    if (segment_bits < 6 || segment_bits > 32) throw PreconditionError("segment bits must lie in [6, 32]");
    if (end < 2) end_ = 2;
}

std::size_t SegmentPlan::count() const {
    if (end_ <= 2) return 0;
    return static_cast<std::size_t>((end_ - 2 + length_ - 1) / length_);
}

std::size_t SegmentPlan::index_of(u64 n) const {
    return static_cast<std::size_t>((n - 2) / length_);
}

std::pair<u64, u64> SegmentPlan::bounds(std::size_t index) const {
    u64 lo = 2 + static_cast<u64>(index) * length_;
    return {lo, std::min(lo + length_, end_)};
}

u64 prime_count(u64 n, unsigned segment_bits) {
    if (n < 2) return 0;
    auto base = base_primes(isqrt(n));
    SegmentPlan plan(n + 1, segment_bits);
    u64 total = 0;
    for (std::size_t k = 0; k < plan.count(); ++k) {
        auto [lo, hi] = plan.bounds(k);
        total += SieveSegment(lo, hi, base).count();
    }
    return total;
}

std::vector<TwinPair> twin_stream(u64 n, unsigned segment_bits) {
    std::vector<TwinPair> out;
    if (n < 5) return out;
    auto base = base_primes(isqrt(n));
    SegmentPlan plan(n + 1, segment_bits);
    u64 last = 0;
    for (std::size_t k = 0; k < plan.count(); ++k) {
        auto [lo, hi] = plan.bounds(k);
        SieveSegment(lo, hi, base).for_each_prime([&](u64 p) {
            if (last != 0 && p - last == 2) out.push_back(TwinPair{last});
            last = p;
        });
    }
    return out;
}

}  // namespace twinstats
