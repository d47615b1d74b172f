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

#include "twinstats/theory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "twinstats/error.hpp"

namespace twinstats {

TwinPrimeConstant twin_prime_constant(u64 prime_cutoff) {
    if (prime_cutoff < 3) throw DomainError("twin prime constant needs a cutoff >= 3");
    double log_sum = 0.0;
    for (u64 p : base_primes(prime_cutoff)) {
        if (p == 2) continue;
        double q = static_cast<double>(p - 1);
        log_sum += std::log1p(-1.0 / (q * q));
    }
    double value = 2.0 * std::exp(log_sum);
    return {value, value / static_cast<double>(prime_cutoff - 1), prime_cutoff};
}

const TwinPrimeConstant& default_twin_prime_constant() {
    static const TwinPrimeConstant c2 = twin_prime_constant(kDefaultTwinConstantCutoff);
    return c2;
}

namespace {

struct Panel {
    double a, fa, m, fm, b, fb, whole;
};

double simpson(double a, double fa, double fm, double b, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double refine(const std::function<double(double)>& f, const Panel& p, double eps, int depth) {
    double lm = 0.5 * (p.a + p.m), rm = 0.5 * (p.m + p.b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(p.a, p.fa, flm, p.m, p.fm);
    double right = simpson(p.m, p.fm, frm, p.b, p.fb);
    double delta = left + right - p.whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
    return refine(f, {p.a, p.fa, lm, flm, p.m, p.fm, left}, eps / 2, depth - 1) +
           refine(f, {p.m, p.fm, rm, frm, p.b, p.fb, right}, eps / 2, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const QuadratureOptions& options) {
    if (a == b) return 0.0;
    // a coarse composite pass sets the scale for the relative target
    constexpr int kPanels = 64;
    double h = (b - a) / kPanels;
    double coarse = 0.0;
    for (int i = 0; i < kPanels; ++i) {
        double x0 = a + i * h, x1 = x0 + h;
        coarse += simpson(x0, f(x0), f(0.5 * (x0 + x1)), x1, f(x1));
    }
    double eps = std::max(options.abs_tol, options.rel_tol * std::fabs(coarse));
    double total = 0.0;
    for (int i = 0; i < kPanels; ++i) {
        double x0 = a + i * h, x1 = (i + 1 == kPanels) ? b : x0 + h;
        double xm = 0.5 * (x0 + x1);
        double f0 = f(x0), fm = f(xm), f1 = f(x1);
        total += refine(f, {x0, f0, xm, fm, x1, f1, simpson(x0, f0, fm, x1, f1)}, eps / kPanels, options.max_depth);
    }
    return total;
}

namespace {

// ∫_2^x du/ln^k(u) becomes ∫ e^t/t^k dt under u = e^t.
double log_integral(double x, int power) {
    if (!(x > 2.0)) throw DomainError("logarithmic integral needs x > 2");
    return adaptive_simpson([power](double t) { return std::exp(t) / std::pow(t, power); }, std::log(2.0),
                            std::log(x));
}

}  // namespace

double li(double x) { return log_integral(x, 1); }
double li2(double x) { return log_integral(x, 2); }

AbPrediction predict_ab_exact(u64 pi, u64 pi2) {
    if (pi <= 2 * pi2)
        throw DegenerateRegimeError("pi = " + std::to_string(pi) + " <= 2*pi2 = " + std::to_string(2 * pi2));
    double rest = static_cast<double>(pi - 2 * pi2);
    double t = static_cast<double>(pi2);
    return {t * t / rest, t / rest};
}

AbAsymptotic predict_ab_asympt(double x, double c2) {
    double l = std::log(x);
    double l3 = l * l * l;
    return {c2 * c2 * x / l3, c2 * c2 * x * x / l3, c2 / l};
}

double smax_from_ab(const AbPrediction& ab) {
    if (!(ab.a > 0.0) || !(ab.b > 0.0)) throw DegenerateRegimeError("ln(A)/B needs A > 0 and B > 0");
    return std::log(ab.a) / ab.b;
}

SmaxPrediction predict_smax(u64 pi, u64 pi2, double c2) {
    auto ab = predict_ab_exact(pi, pi2);
    double p = static_cast<double>(pi), t = static_cast<double>(pi2);
    double inner = p - 2.0 * c2 * t;
    if (!(inner > 0.0) || !(t > 0.0)) throw DegenerateRegimeError("pi - 2*c2*pi2 must be positive");
    return {p / t * (2.0 * std::log(t) - std::log(inner)), smax_from_ab(ab)};
}

double smax_asympt(u64 n, double c2) {
    double l = std::log(static_cast<double>(n));
    return l * l / c2;
}

TheoryPrediction predict(u64 n, u64 pi, u64 pi2, double c2) {
    auto ab = predict_ab_exact(pi, pi2);
    auto asym = predict_ab_asympt(static_cast<double>(n), c2);
    auto smax = predict_smax(pi, pi2, c2);
    return {n, ab.a, ab.b, asym.a, asym.a_printed, asym.b, smax.paper, smax.derived, smax_asympt(n, c2), c2};
}

}  // namespace twinstats
