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

#include <functional>

#include "twinstats/sieve.hpp"

namespace twinstats {

// Literature value of the twin-prime constant, to the printed digits.
inline constexpr double kTwinPrimeConstantLiterature = 1.32032;
inline constexpr u64 kDefaultTwinConstantCutoff = 1'000'000;

struct TwinPrimeConstant {
    double value;  // 2·Π_{2<p<=cutoff} (1 − 1/(p−1)²)
    // The true constant lies in [value − bound, value]: the omitted factors are
    // all in (0,1) and their product is >= 1 − Σ_{m>=cutoff} 1/m² >= 1 − 1/(cutoff−1).
    double bound;
    u64 cutoff;
};

// Throws DomainError for cutoff < 3.
TwinPrimeConstant twin_prime_constant(u64 prime_cutoff);

// Partial product at kDefaultTwinConstantCutoff, computed once.
const TwinPrimeConstant& default_twin_prime_constant();

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_depth = 48;
};

// Adaptive Simpson with Richardson correction on [a, b].
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const QuadratureOptions& options = {});

// ∫_2^x du/ln u and ∫_2^x du/ln²u. DomainError for x <= 2.
double li(double x);
double li2(double x);

struct AbPrediction {
    double a;
    double b;
};

// A ≈ pi2²/(pi − 2·pi2), B ≈ pi2/(pi − 2·pi2). DegenerateRegimeError when pi <= 2·pi2.
AbPrediction predict_ab_exact(u64 pi, u64 pi2);

struct AbAsymptotic {
    double a;          // c2²·N/ln³N, the form that follows from the exact prediction
    double a_printed;  // c2²·N²/ln³N as printed; one power of N too many
    double b;          // c2/ln N
};

AbAsymptotic predict_ab_asympt(double n, double c2);

struct SmaxPrediction {
    double paper;    // (pi/pi2)·(2·ln pi2 − ln(pi − 2·c2·pi2))
    double derived;  // ln(A)/B, the solution of A·e^{−B·s} = 1
};

// ln(A)/B. DegenerateRegimeError unless A > 0 and B > 0.
double smax_from_ab(const AbPrediction& ab);

SmaxPrediction predict_smax(u64 pi, u64 pi2, double c2);

// ln²N / c2.
double smax_asympt(u64 n, double c2);

struct TheoryPrediction {
    u64 n;
    double a_theor;
    double b_theor;
    double a_asympt;
    double a_asympt_printed;
    double b_asympt;
    double s_max_paper;
    double s_max_derived;
    double s_max_asympt;
    double c2_used;
};

TheoryPrediction predict(u64 n, u64 pi, u64 pi2, double c2);

}  // namespace twinstats
