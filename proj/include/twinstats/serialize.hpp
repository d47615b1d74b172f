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
#include <string>
#include <string_view>

#include "twinstats/scanstats.hpp"

namespace twinstats {

inline constexpr int kStateSchemaVersion = 1;

// Checkpoint file:
//   {"n","pi","pi2","d_max","s_max","head_primes","tail_primes","overlap",
//    "gap_hist":[[d,count],...],"sep_hist":[[s,count],...]}
// Keys in that order, bins ascending, single line plus trailing LF.
std::string checkpoint_to_json(const Checkpoint& cp);
Checkpoint checkpoint_from_json(std::string_view text);

// Resume file: ScanState plus "schema_version": 1.
std::string state_to_json(const ScanState& state);
ScanState state_from_json(std::string_view text);

// Two-column CSV, header "d,m" / "s,mu", ascending keys, LF endings.
std::string to_csv(const GapHistogram& hist);
std::string to_csv(const SeparationHistogram& hist);
GapHistogram gap_histogram_from_csv(std::string_view text);
SeparationHistogram separation_histogram_from_csv(std::string_view text);

std::string checkpoint_filename(u64 n);

std::string read_file(const std::filesystem::path& path);
// Writes to a sibling temp file and renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace twinstats
