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

#include "twinstats/scanstats.hpp"

#include <algorithm>
#include <string>

namespace twinstats {

u64 champion(const GapHistogram& hist) {
    if (hist.empty()) throw DomainError("champion of an empty histogram");
    u64 best = 0, best_count = 0;
    for (const auto& [d, m] : hist.bins()) {
        if (m > best_count) {
            best = d;
            best_count = m;
        }
    }
    return best;
}

u64 Checkpoint::classified_primes() const {
    return 2 * pi2 - overlap + sep_hist.weighted_total() + head_primes + tail_primes;
}

bool Checkpoint::twin_count_identity() const {
    u64 expect_gap = pi2 >= 1 ? pi2 - 1 : 0;
    u64 expect_sep = pi2 >= 2 ? pi2 - 2 : 0;
    return gap_hist.total() == expect_gap && sep_hist.total() == expect_sep;
}

std::int64_t Checkpoint::separation_sum_residual() const {
    auto lhs = static_cast<std::int64_t>(sep_hist.weighted_total());
    auto rhs = static_cast<std::int64_t>(pi) - 2 * static_cast<std::int64_t>(pi2);
    return lhs - rhs;
}

void Scanner::on_prime(u64 q) {
    auto& s = state_;
    bool twin = s.last_prime != 0 && q - s.last_prime == 2;
    if (twin) {
        if (s.prev_upper == 0) {
            // the lower member was provisionally counted as a head prime
            --s.head_primes;
        } else if (s.prev_upper == s.last_prime) {
            ++s.overlap;
            s.gap_hist.add(q - s.prev_upper);
        } else {
            // primes_since includes the lower member q-2
            s.sep_hist.add(s.primes_since - 1);
            s.gap_hist.add(q - s.prev_upper);
        }
        ++s.pi2;
        s.prev_upper = q;
        s.primes_since = 0;
    } else if (s.prev_upper == 0) {
        ++s.head_primes;
    } else {
        ++s.primes_since;
    }
    s.last_prime = q;
    ++s.pi;
}

void Scanner::consume_segment(const SieveSegment& seg, u64 upto) {
    u64 pos = state_.position;
    if (seg.lo() > pos)
        throw SequencingError("segment [" + std::to_string(seg.lo()) + ", " + std::to_string(seg.hi()) +
                              ") leaves a gap after " + std::to_string(pos - 1));
    if (seg.hi() <= pos)
        throw SequencingError("segment [" + std::to_string(seg.lo()) + ", " + std::to_string(seg.hi()) +
                              ") overlaps data already consumed through " + std::to_string(pos - 1));
    if (upto < pos) return;
    u64 end = std::min(upto + 1, seg.hi());
    seg.for_each_prime(pos, end, [this](u64 q) { on_prime(q); });
    state_.position = end;
}

Checkpoint Scanner::take_checkpoint(u64 n) const {
    if (state_.position != n + 1)
        throw SequencingError("checkpoint at " + std::to_string(n) + " but scan has consumed through " +
                              std::to_string(state_.position - 1));
    Checkpoint cp;
    cp.n = n;
    cp.pi = state_.pi;
    cp.pi2 = state_.pi2;
    cp.gap_hist = state_.gap_hist;
    cp.sep_hist = state_.sep_hist;
    cp.d_max = state_.gap_hist.max_key();
    cp.s_max = state_.sep_hist.max_key();
    cp.head_primes = state_.head_primes;
    cp.tail_primes = state_.prev_upper == 0 ? 0 : state_.primes_since;
    cp.overlap = state_.overlap;
    return cp;
}

}  // namespace twinstats
