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

#include "twinstats/fit.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace twinstats {

std::vector<SamplePoint> to_points(const SeparationHistogram& hist) {
    std::vector<SamplePoint> out;
    out.reserve(hist.size());
    for (const auto& [s, mu] : hist.bins()) out.push_back({static_cast<double>(s), static_cast<double>(mu)});
    return out;
}

std::vector<SamplePoint> select_points(std::span<const SamplePoint> points, const FitProtocol& protocol) {
    if (!(protocol.keep_fraction >= 0.0 && protocol.keep_fraction <= 1.0))
        throw PreconditionError("keep fraction must lie in [0, 1]");
    std::vector<SamplePoint> nonzero;
    for (const auto& p : points)
        if (p.count > 0) nonzero.push_back(p);

    const double head = static_cast<double>(protocol.skip_head);
    std::vector<SamplePoint> out;
    if (protocol.basis == KeepBasis::AllBins) {
        auto keep = static_cast<std::size_t>(std::lround(protocol.keep_fraction * static_cast<double>(nonzero.size())));
        for (std::size_t i = 0; i < keep; ++i)
            if (nonzero[i].s >= head) out.push_back(nonzero[i]);
    } else {
        std::vector<SamplePoint> rest;
        for (const auto& p : nonzero)
            if (p.s >= head) rest.push_back(p);
        auto keep = static_cast<std::size_t>(std::lround(protocol.keep_fraction * static_cast<double>(rest.size())));
        out.assign(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(keep));
    }
    return out;
}

FitResult fit_exponential(std::span<const SamplePoint> points, const FitProtocol& protocol) {
    auto used = select_points(points, protocol);
    if (used.size() < 2) throw InsufficientDataError("exponential fit needs at least 2 usable bins");

    double sw = 0, sx = 0, sy = 0;
    for (const auto& p : used) {
        double w = protocol.weighted ? p.count : 1.0;
        sw += w;
        sx += w * p.s;
        sy += w * std::log(p.count);
    }
    double mx = sx / sw, my = sy / sw;
    double sxx = 0, sxy = 0, syy = 0;
    for (const auto& p : used) {
        double w = protocol.weighted ? p.count : 1.0;
        double dx = p.s - mx, dy = std::log(p.count) - my;
        sxx += w * dx * dx;
        sxy += w * dx * dy;
        syy += w * dy * dy;
    }
    if (sxx == 0) throw InsufficientDataError("exponential fit needs at least 2 distinct s values");

    FitResult r;
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    r.a_exp = std::exp(r.intercept);
    r.b_exp = -r.slope;
    r.points_used = used.size();
    r.protocol = protocol;
    if (syy == 0) {
        r.r_squared = 1.0;
    } else {
        double ss_res = std::max(0.0, syy - r.slope * sxy);
        r.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    }
    return r;
}

FitResult fit_exponential(const SeparationHistogram& hist, const FitProtocol& protocol, u64 n) {
    auto pts = to_points(hist);
    auto r = fit_exponential(pts, protocol);
    r.n = n;
    return r;
}

ResidualReport residual_diagnostics(std::span<const SamplePoint> points, const FitResult& fit) {
    ResidualReport rep;
    int last_sign = 0;
    for (const auto& p : select_points(points, fit.protocol)) {
        double r = std::log(p.count) - (fit.intercept + fit.slope * p.s);
        rep.residuals.push_back({p.s, r});
        rep.max_abs = std::max(rep.max_abs, std::fabs(r));
        int sign = r > 0 ? 1 : (r < 0 ? -1 : 0);
        if (sign != 0 && sign != last_sign) {
            ++rep.sign_runs;
            last_sign = sign;
        }
    }
    return rep;
}

ResidualReport residual_diagnostics(const SeparationHistogram& hist, const FitResult& fit) {
    auto pts = to_points(hist);
    return residual_diagnostics(pts, fit);
}

ComparisonRow comparison_row(const Checkpoint& checkpoint, const FitResult& fit, const TheoryPrediction& pred) {
    if (fit.n != checkpoint.n || pred.n != checkpoint.n)
        throw ConsistencyError("comparison inputs refer to different N (checkpoint " + std::to_string(checkpoint.n) +
                               ", fit " + std::to_string(fit.n) + ", prediction " + std::to_string(pred.n) + ")");
    ComparisonRow row{checkpoint.n, fit.a_exp / pred.a_theor, fit.b_exp / pred.b_theor, fit.a_exp / pred.a_asympt,
                      fit.b_exp / pred.b_asympt};
    for (double v : {row.a_ratio_theor, row.b_ratio_theor, row.a_ratio_asympt, row.b_ratio_asympt})
        if (!std::isfinite(v) || !(v > 0)) throw DomainError("comparison ratio is not finite and positive");
    return row;
}

std::string fit_report_json(const FitResult& fit) {
    nlohmann::ordered_json j;
    j["n"] = fit.n;
    j["a_exp"] = fit.a_exp;
    j["b_exp"] = fit.b_exp;
    j["r_squared"] = fit.r_squared;
    j["points_used"] = fit.points_used;
    j["skip_head"] = fit.protocol.skip_head;
    j["tail_kept_fraction"] = fit.protocol.keep_fraction;
    return j.dump() + "\n";
}

}  // namespace twinstats
