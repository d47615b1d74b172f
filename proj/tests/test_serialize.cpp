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

#include <doctest.h>

#include <filesystem>
#include <random>

#include "twinstats/error.hpp"
#include "twinstats/scan.hpp"
#include "twinstats/serialize.hpp"

using namespace twinstats;

TEST_CASE("checkpoint JSON layout") {
    auto cp = scan_checkpoints(100, {}).back();
    auto text = checkpoint_to_json(cp);
    CHECK(text ==
          "{\"n\":100,\"pi\":25,\"pi2\":8,\"d_max\":18,\"s_max\":2,\"head_primes\":1,\"tail_primes\":4,"
          "\"overlap\":1,\"gap_hist\":[[2,1],[6,2],[12,3],[18,1]],\"sep_hist\":[[0,2],[1,3],[2,1]]}\n");
}

TEST_CASE("checkpoint and state survive a round trip (random histograms)") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 50; ++t) {
        Checkpoint cp;
        cp.n = rng();
        cp.pi = rng() % 1000;
        for (int i = 0; i < 20; ++i) cp.gap_hist.add(6 * (rng() % 50), 1 + rng() % 9);
        for (int i = 0; i < 20; ++i) cp.sep_hist.add(rng() % 80, 1 + rng() % 9);
        cp.d_max = cp.gap_hist.max_key();
        cp.s_max = cp.sep_hist.max_key();
        CHECK(checkpoint_from_json(checkpoint_to_json(cp)) == cp);
        CHECK(gap_histogram_from_csv(to_csv(cp.gap_hist)) == cp.gap_hist);
        CHECK(separation_histogram_from_csv(to_csv(cp.sep_hist)) == cp.sep_hist);
    }
    ScanOptions o;
    o.n_max = 123'457;
    auto s = run_scan(o);
    CHECK(state_from_json(state_to_json(s)) == s);
}

TEST_CASE("malformed checkpoints are rejected") {
    CHECK_THROWS_AS(checkpoint_from_json("not json"), FormatError);
    CHECK_THROWS_AS(checkpoint_from_json("[1,2]"), FormatError);
    CHECK_THROWS_AS(checkpoint_from_json("{\"n\":5}"), FormatError);
    auto good = checkpoint_to_json(scan_checkpoints(100, {}).back());
    CHECK_NOTHROW(checkpoint_from_json(good));

    auto replace = [&](std::string from, std::string to) {
        auto s = good;
        s.replace(s.find(from), from.size(), to);
        return s;
    };
    CHECK_THROWS_AS(checkpoint_from_json(replace("\"d_max\":18", "\"d_max\":12")), FormatError);
    CHECK_THROWS_AS(checkpoint_from_json(replace("[[2,1],[6,2]", "[[6,2],[2,1]")), FormatError);
    CHECK_THROWS_AS(checkpoint_from_json(replace("[2,1]", "[2,0]")), FormatError);
    CHECK_THROWS_AS(checkpoint_from_json(replace("\"pi\":25", "\"pi\":-25")), FormatError);
}

TEST_CASE("resume file schema is enforced") {
    ScanOptions o;
    o.n_max = 1000;
    auto text = state_to_json(run_scan(o));
    CHECK(text.rfind("{\"schema_version\":1,", 0) == 0);
    auto bump = text;
    bump.replace(bump.find("\"schema_version\":1"), 18, "\"schema_version\":2");
    CHECK_THROWS_AS(state_from_json(bump), FormatError);
    auto tamper = text;
    tamper.replace(tamper.find("\"pi\":"), 5, "\"pi\":1");  // prepends a digit
    CHECK_THROWS_AS(state_from_json(tamper), FormatError);
}

TEST_CASE("CSV format") {
    GapHistogram g({{2, 1}, {6, 4}, {30, 2}});
    CHECK(to_csv(g) == "d,m\n2,1\n6,4\n30,2\n");
    SeparationHistogram s({{0, 3}, {7, 1}});
    CHECK(to_csv(s) == "s,mu\n0,3\n7,1\n");
    CHECK_THROWS_AS(gap_histogram_from_csv("s,mu\n0,3\n"), FormatError);
    CHECK_THROWS_AS(gap_histogram_from_csv("d,m\n6,x\n"), FormatError);
    CHECK_THROWS_AS(gap_histogram_from_csv("d,m\n12,1\n6,1\n"), FormatError);
    CHECK(to_csv(GapHistogram{}) == "d,m\n");
}

TEST_CASE("atomic write replaces the file") {
    auto dir = std::filesystem::temp_directory_path() / "twinstats_atomic";
    std::filesystem::create_directories(dir);
    auto p = dir / "f.json";
    write_file_atomic(p, "one");
    write_file_atomic(p, "two");
    CHECK(read_file(p) == "two");
    CHECK(!std::filesystem::exists(dir / "f.json.tmp"));
    std::filesystem::remove_all(dir);
}
