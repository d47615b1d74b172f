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

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "twinstats/sieve.hpp"

namespace twinstats::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,
    kData = 3,
    kResource = 4,
};

enum class C2Mode { Computed, Literature };

struct RunConfig {
    u64 n_max = 0;
    u64 checkpoint_start = u64{1} << 22;
    u64 checkpoint_ratio = 4;
    std::vector<u64> extra_checkpoints;
    unsigned segment_bits = kDefaultSegmentBits;
    unsigned threads = 1;
    std::filesystem::path output_dir = ".";
    std::optional<std::filesystem::path> resume_from;
    C2Mode c2_mode = C2Mode::Computed;
};

// Thrown for malformed numbers; `overflow` separates "too big" from "not a number".
struct NumberError {
    std::string message;
    bool overflow;
};

// Accepts "123", "2^k" and "10^k" (any base^exp with decimal digits). Throws NumberError.
u64 parse_count(std::string_view text);

// Entry point shared by the executable and the tests. argv[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twinstats::cli
