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

#include "twinstats/scan.hpp"

#include <algorithm>
#include <string>

#include "twinstats/pipeline.hpp"

namespace twinstats {

std::vector<u64> geometric_schedule(u64 start, u64 ratio, u64 n_max) {
    if (ratio < 2) throw PreconditionError("checkpoint ratio must be >= 2");
    std::vector<u64> out;
    if (start < 2) start = 2;
    for (u64 n = start; n <= n_max; n *= ratio) {
        out.push_back(n);
        if (n > n_max / ratio) break;
    }
    return out;
}

ScanState run_scan(const ScanOptions& options, ScanState initial, const ScanHooks& hooks) {
    const u64 n_max = options.n_max;
    if (n_max < 2) throw PreconditionError("scan bound must be >= 2");
    if (n_max > kMaxBound) throw PreconditionError("scan bound exceeds 2^44");
    if (initial.position > n_max + 1)
        throw SequencingError("resume state already covers through " + std::to_string(initial.position - 1) +
                              ", beyond n_max " + std::to_string(n_max));

    std::vector<u64> marks;
    for (u64 n : options.checkpoints)
        if (n + 1 >= initial.position && n >= 2 && n <= n_max) marks.push_back(n);
    std::sort(marks.begin(), marks.end());
    marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
    auto next_mark = marks.begin();

    Scanner scanner(std::move(initial));
    // Checkpoints at n with n+1 == position are due immediately (resume at a checkpoint boundary).
    while (next_mark != marks.end() && *next_mark + 1 == scanner.state().position) {
        if (hooks.on_checkpoint) hooks.on_checkpoint(scanner.take_checkpoint(*next_mark));
        ++next_mark;
    }

    const auto base = base_primes(isqrt(n_max));
    SegmentPlan plan(n_max + 1, options.segment_bits);
    const u64 start = scanner.state().position;
    if (start > n_max) {
        if (hooks.on_state) hooks.on_state(scanner.state());
        return scanner.state();
    }
    const std::size_t first = plan.index_of(start);
    std::size_t done = 0;

    auto produce = [&](std::size_t k) {
        auto [lo, hi] = plan.bounds(k);
        return SieveSegment(lo, hi, base);
    };
    auto consume = [&](SieveSegment&& seg) {
        while (next_mark != marks.end() && *next_mark < seg.hi()) {
            scanner.consume_segment(seg, *next_mark);
            if (hooks.on_checkpoint) hooks.on_checkpoint(scanner.take_checkpoint(*next_mark));
            ++next_mark;
        }
        if (scanner.state().position < seg.hi()) scanner.consume_segment(seg);
        ++done;
        if (hooks.on_state && options.state_every != 0 && done % options.state_every == 0)
            hooks.on_state(scanner.state());
        return !(hooks.should_stop && hooks.should_stop(done));
    };

    unsigned threads = std::max(1u, options.threads);
    run_ordered(first, plan.count(), threads, 2 * static_cast<std::size_t>(threads), produce, consume);

    if (hooks.on_state) hooks.on_state(scanner.state());
    return scanner.state();
}

std::vector<Checkpoint> scan_checkpoints(u64 n_max, std::vector<u64> checkpoints, unsigned segment_bits,
                                         unsigned threads) {
    checkpoints.push_back(n_max);
    ScanOptions options;
    options.n_max = n_max;
    options.checkpoints = std::move(checkpoints);
    options.segment_bits = segment_bits;
    options.threads = threads;
    std::vector<Checkpoint> out;
    ScanHooks hooks;
    hooks.on_checkpoint = [&out](const Checkpoint& cp) { out.push_back(cp); };
    run_scan(options, {}, hooks);
    return out;
}

}  // namespace twinstats
