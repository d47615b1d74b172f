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
#include <span>
#include <string>
#include <vector>

#include "twinstats/scanstats.hpp"
#include "twinstats/theory.hpp"

namespace twinstats {

// What the keep fraction is measured against.
enum class KeepBasis {
    AllBins,        // rank among all nonzero bins < round(keep·n_all)
    RemainingBins,  // first round(keep·n_rest) bins after the head skip
};

/**
 * Bin selection for the log-linear fit.
 *
 * Bins with key < skip_head are dropped, then the tail is cut according to
 * keep_fraction and basis. Zero-count bins never take part.
 *
 * The default reproduces the published comparison table: on the same
 * histograms it matches A_exp/A_theor and B_exp/B_theor at 2^22, 2^24 and
 * 2^26 to ~1e-5. literal() is the other reading of the protocol wording
 * ("skip the first 15 points and the last 40%").
 */
struct FitProtocol {
    u64 skip_head = 8;
    double keep_fraction = 0.4;
    KeepBasis basis = KeepBasis::AllBins;
    bool weighted = false;  // weight each bin by its count

    static FitProtocol table_one() { return {}; }
    static FitProtocol literal() { return {15, 0.6, KeepBasis::RemainingBins, false}; }
};

struct SamplePoint {
    double s;
    double count;
};

struct FitResult {
    u64 n = 0;  // 0 when fitted from bare points
    double a_exp = 0;
    double b_exp = 0;
    double intercept = 0;
    double slope = 0;
    std::size_t points_used = 0;
    double r_squared = 0;
    FitProtocol protocol;
};

std::vector<SamplePoint> to_points(const SeparationHistogram& hist);

// Points that the protocol keeps; `points` must be ascending in s.
std::vector<SamplePoint> select_points(std::span<const SamplePoint> points, const FitProtocol& protocol);

// Least squares of ln(count) on s. InsufficientDataError below 2 usable points.
FitResult fit_exponential(std::span<const SamplePoint> points, const FitProtocol& protocol = {});
FitResult fit_exponential(const SeparationHistogram& hist, const FitProtocol& protocol = {}, u64 n = 0);

struct Residual {
    double s;
    double value;  // ln(count) − (ln a_exp − b_exp·s)
};

struct ResidualReport {
    std::vector<Residual> residuals;
    double max_abs = 0;
    std::size_t sign_runs = 0;
};

ResidualReport residual_diagnostics(std::span<const SamplePoint> points, const FitResult& fit);
ResidualReport residual_diagnostics(const SeparationHistogram& hist, const FitResult& fit);

struct ComparisonRow {
    u64 n;
    double a_ratio_theor;
    double b_ratio_theor;
    double a_ratio_asympt;
    double b_ratio_asympt;
};

// ConsistencyError if the three inputs disagree on N.
ComparisonRow comparison_row(const Checkpoint& checkpoint, const FitResult& fit, const TheoryPrediction& pred);

// {"n","a_exp","b_exp","r_squared","points_used","skip_head","tail_kept_fraction"}
std::string fit_report_json(const FitResult& fit);

}  // namespace twinstats
