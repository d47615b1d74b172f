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

#include <cstdint>
#include <map>
#include <utility>

#include "twinstats/error.hpp"
#include "twinstats/sieve.hpp"

namespace twinstats {

// Sparse key -> count histogram. Only nonzero bins are stored.
template <class Tag>
class Histogram {
  public:
    using Bins = std::map<u64, u64>;

    Histogram() = default;
    explicit Histogram(Bins bins) : bins_(std::move(bins)) {
        for (const auto& [k, c] : bins_)
            if (c == 0) throw FormatError("histogram bins must have nonzero counts");
    }

    void add(u64 key, u64 count = 1) {
        if (count != 0) bins_[key] += count;
    }

    const Bins& bins() const { return bins_; }
    bool empty() const { return bins_.empty(); }
    std::size_t size() const { return bins_.size(); }

    u64 count(u64 key) const {
        auto it = bins_.find(key);
        return it == bins_.end() ? 0 : it->second;
    }

    u64 total() const {
        u64 t = 0;
        for (const auto& [k, c] : bins_) t += c;
        return t;
    }

    // Σ key·count.
    u64 weighted_total() const {
        u64 t = 0;
        for (const auto& [k, c] : bins_) t += k * c;
        return t;
    }

    u64 max_key() const { return bins_.empty() ? 0 : bins_.rbegin()->first; }

    friend bool operator==(const Histogram&, const Histogram&) = default;

  private:
    Bins bins_;
};

struct GapTag;
struct SeparationTag;

// d -> m(d, N): arithmetic gaps between upper members of consecutive twins.
using GapHistogram = Histogram<GapTag>;
// s -> mu(s, N): number of primes strictly between consecutive twins.
using SeparationHistogram = Histogram<SeparationTag>;

// The only arithmetic gap that is not a multiple of 6: (3,5) -> (5,7).
inline constexpr u64 kOverlapGap = 2;

struct Extreme {
    u64 key;
    u64 count;
    friend bool operator==(const Extreme&, const Extreme&) = default;
};

// Most frequent gap; ties go to the smallest d.
u64 champion(const GapHistogram& hist);

template <class Tag>
Extreme extremes(const Histogram<Tag>& hist) {
    if (hist.empty()) throw DomainError("extremes of an empty histogram");
    auto it = hist.bins().rbegin();
    return {it->first, it->second};
}

/**
 * Immutable snapshot of every statistic over [2, n].
 *
 * Prime accounting: each prime <= n is exactly one of a twin member
 * (5 counted once), a prime between two consecutive twins, a head prime
 * (before the first twin) or a tail prime (after the last twin's upper
 * member). The first twin has no predecessor and the (3,5)->(5,7) event
 * carries no separation, hence Σμ = pi2 − 2 once n >= 7.
 */
struct Checkpoint {
    u64 n = 0;
    u64 pi = 0;
    u64 pi2 = 0;
    GapHistogram gap_hist;
    SeparationHistogram sep_hist;
    u64 d_max = 0;
    u64 s_max = 0;
    u64 head_primes = 0;
    u64 tail_primes = 0;
    u64 overlap = 0;

    // 2·pi2 − overlap + Σ s·mu + head + tail; equals pi on every valid checkpoint.
    u64 classified_primes() const;
    bool conserves_primes() const { return classified_primes() == pi; }
    // Σμ == pi2 − 2 (n >= 7), Σm == pi2 − 1.
    bool twin_count_identity() const;
    // Σ s·mu − (pi − 2·pi2): the head/tail/overlap terms the closed form drops.
    std::int64_t separation_sum_residual() const;

    friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

// Running state of a single-pass scan. Everything needed to resume.
struct ScanState {
    u64 position = 2;      // next integer not yet consumed
    u64 last_prime = 0;    // 0 = none yet
    u64 prev_upper = 0;    // upper member of the last twin; 0 = none yet
    u64 primes_since = 0;  // primes after prev_upper (before the first twin: unused)
    u64 pi = 0;
    u64 pi2 = 0;
    u64 head_primes = 0;
    u64 overlap = 0;
    GapHistogram gap_hist;
    SeparationHistogram sep_hist;

    friend bool operator==(const ScanState&, const ScanState&) = default;
};

class Scanner {
  public:
    Scanner() = default;
    explicit Scanner(ScanState state) : state_(std::move(state)) {}

    // Consumes [position, min(upto, seg.hi() - 1)]. The segment must contain
    // `position`; anything else is a gap or an overlap and throws SequencingError.
    void consume_segment(const SieveSegment& seg, u64 upto);
    void consume_segment(const SieveSegment& seg) { consume_segment(seg, seg.hi() - 1); }

    // Requires exactly [2, n] consumed.
    Checkpoint take_checkpoint(u64 n) const;

    const ScanState& state() const { return state_; }
    u64 consumed_through() const { return state_.position - 1; }

  private:
    void on_prime(u64 q);

    ScanState state_;
};

}  // namespace twinstats
