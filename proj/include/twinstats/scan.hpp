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

#include <cstddef>
#include <functional>
#include <vector>

#include "twinstats/scanstats.hpp"

namespace twinstats {

// start, start·ratio, start·ratio², ... <= n_max.
std::vector<u64> geometric_schedule(u64 start, u64 ratio, u64 n_max);

struct ScanOptions {
    u64 n_max = 0;
    std::vector<u64> checkpoints;  // any order; values outside (consumed, n_max] are ignored
    unsigned segment_bits = kDefaultSegmentBits;
    unsigned threads = 1;
    std::size_t state_every = 64;  // segments between on_state calls
};

struct ScanHooks {
    std::function<void(const Checkpoint&)> on_checkpoint;
    // Called after every `state_every` segments and once at the end.
    std::function<void(const ScanState&)> on_state;
    // Checked after each segment; true simulates an interruption.
    std::function<bool(std::size_t segments_done)> should_stop;
};

// Continues `initial` through n_max. Returns the final state.
ScanState run_scan(const ScanOptions& options, ScanState initial = {}, const ScanHooks& hooks = {});

// Convenience: one uninterrupted scan returning a checkpoint per requested N
// (n_max included), ascending.
std::vector<Checkpoint> scan_checkpoints(u64 n_max, std::vector<u64> checkpoints,
                                         unsigned segment_bits = kDefaultSegmentBits, unsigned threads = 1);

}  // namespace twinstats
