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

#include <cmath>

#include "oracle.hpp"
#include "twinstats/error.hpp"
#include "twinstats/scan.hpp"
#include "twinstats/theory.hpp"

using namespace twinstats;

TEST_CASE("twin prime constant") {
    CHECK(twin_prime_constant(3).value == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(twin_prime_constant(4).value == twin_prime_constant(3).value);
    CHECK_THROWS_AS(twin_prime_constant(2), DomainError);

    auto c = twin_prime_constant(1'000'000);
    CHECK(std::floor(c.value * 1e5 + 0.5) / 1e5 == doctest::Approx(1.32032).epsilon(1e-12));
    CHECK(c.bound <= 1e-5);
    CHECK(std::fabs(c.value - kTwinPrimeConstantLiterature) <= 1e-5);

    auto small = twin_prime_constant(10'000);
    CHECK(std::fabs(small.value - c.value) <= small.bound);
    CHECK(small.value >= c.value);
}

TEST_CASE("twin prime constant decreases with the cutoff and converges") {
    double prev = 2.0, prev_bound = 1.0;
    for (u64 cutoff : {3ull, 5ull, 7ull, 100ull, 1000ull, 10'000ull, 100'000ull}) {
        auto c = twin_prime_constant(cutoff);
        CHECK(c.value < prev);
        if (cutoff > 3) CHECK(prev - c.value <= prev_bound);
        prev = c.value;
        prev_bound = c.bound;
    }
}

TEST_CASE("li and li2 match a fixed-step Simpson oracle at 10^6") {
    auto f1 = [](long double u) { return 1.0L / std::log(u); };
    auto f2 = [](long double u) { return 1.0L / (std::log(u) * std::log(u)); };
    long double ref1 = oracle::simpson_graded(f1, 2.0L, 1e6L, 1'000'000);
    long double ref2 = oracle::simpson_graded(f2, 2.0L, 1e6L, 1'000'000);
    CHECK(std::fabs(li(1e6) - ref1) / ref1 <= 1e-10);
    CHECK(std::fabs(li2(1e6) - ref2) / ref2 <= 1e-10);
    CHECK(std::fabs(li(1e6) - ref1) <= 1.0);
    MESSAGE("li(1e6) = " << li(1e6) << ", li2(1e6) = " << li2(1e6));
}

TEST_CASE("logarithmic integrals near the lower limit and outside the domain") {
    CHECK(li(2.0 + 1e-9) == doctest::Approx(1e-9 / std::log(2.0)).epsilon(1e-6));
    CHECK(li2(2.0 + 1e-9) == doctest::Approx(1e-9 / (std::log(2.0) * std::log(2.0))).epsilon(1e-6));
    CHECK_THROWS_AS(li(2.0), DomainError);
    CHECK_THROWS_AS(li2(1.5), DomainError);
}

TEST_CASE("logarithmic integrals are additive") {
    auto f1 = [](double u) { return 1.0 / std::log(u); };
    auto f2 = [](double u) { return 1.0 / (std::log(u) * std::log(u)); };
    for (double a : {10.0, 1e4, 1e7}) {
        for (double b : {2.0 * a, 1e3 * a}) {
            double mid1 = adaptive_simpson(f1, a, b), mid2 = adaptive_simpson(f2, a, b);
            CHECK(std::fabs(li(a) + mid1 - li(b)) <= 2 * 1e-10 * li(b));
            CHECK(std::fabs(li2(a) + mid2 - li2(b)) <= 2 * 1e-10 * li2(b));
        }
    }
}

TEST_CASE("logarithmic integrals against sieve counts") {
    const u64 pi = prime_count(1'000'000);
    CHECK(std::fabs(li(1e6) - static_cast<double>(pi)) < 200);
    // Hardy–Littlewood closeness is observed, not a theorem: 8248 vs 8169 is ~1%.
    const double c2 = default_twin_prime_constant().value;
    const double pi2 = static_cast<double>(twin_stream(1'000'000).size());
    double rel = std::fabs(c2 * li2(1e6) - pi2) / pi2;
    MESSAGE("c2*li2(1e6) = " << c2 * li2(1e6) << " vs pi2 = " << pi2 << " (rel " << rel << ")");
    CHECK(rel < 0.015);
}

TEST_CASE("exact A, B prediction") {
    auto ab = predict_ab_exact(100, 10);
    CHECK(ab.a == doctest::Approx(1.25));
    CHECK(ab.b == doctest::Approx(0.125));
    CHECK_THROWS_AS(predict_ab_exact(4, 2), DegenerateRegimeError);
    CHECK_THROWS_AS(predict_ab_exact(19, 10), DegenerateRegimeError);
    CHECK_THROWS_AS(predict_ab_exact(6, 3), DegenerateRegimeError);  // N = 13

    auto cp = scan_checkpoints(u64{1} << 24, {}).back();
    auto p = predict_ab_exact(cp.pi, cp.pi2);
    CHECK(p.a > 0);
    CHECK(p.b > 0);
    CHECK(p.b < 1);
    CHECK(std::isfinite(p.a));
}

TEST_CASE("asymptotic A, B") {
    CHECK(predict_ab_asympt(std::exp(10.0), 1.32032).b == doctest::Approx(0.132032).epsilon(1e-12));
    auto x = predict_ab_asympt(1e6, 1.3);
    CHECK(x.a_printed == doctest::Approx(x.a * 1e6).epsilon(1e-12));

    // d/dN [N / ln^3 N] > 0 for N > e^3
    const double c2 = 1.32032;
    for (double n = std::exp(3.0) * 1.01; n < 1e12; n *= 1.7) {
        double h = n * 1e-6;
        double deriv = (predict_ab_asympt(n + h, c2).a - predict_ab_asympt(n - h, c2).a) / (2 * h);
        CHECK(deriv > 0);
    }
}

TEST_CASE("maximal separation predictions") {
    CHECK(smax_from_ab({std::exp(1.0), 1.0}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(smax_from_ab({0.0, 1.0}), DegenerateRegimeError);

    const double c2 = 1.32032;
    const double l = 26 * std::log(2.0);
    CHECK(smax_asympt(u64{1} << 26, c2) == doctest::Approx(l * l / c2).epsilon(1e-14));
    CHECK(smax_asympt(u64{1} << 26, c2) == doctest::Approx(245.99).epsilon(1e-4));

    auto cp = scan_checkpoints(u64{1} << 26, {}).back();
    auto sm = predict_smax(cp.pi, cp.pi2, c2);
    auto ab = predict_ab_exact(cp.pi, cp.pi2);
    CHECK(sm.derived == doctest::Approx(std::log(ab.a) / ab.b));
    double spread = std::fabs(sm.paper - sm.derived) / sm.derived;
    MESSAGE("2^26: s_max paper " << sm.paper << ", derived " << sm.derived << ", spread " << spread);
    CHECK(sm.paper > sm.derived);
    CHECK(spread < 0.25);

    CHECK_THROWS_AS(predict_smax(4, 2, c2), DegenerateRegimeError);
}

TEST_CASE("prediction invariants over the checkpoint schedule") {
    const double c2 = default_twin_prime_constant().value;
    auto cps = scan_checkpoints(u64{1} << 26, geometric_schedule(u64{1} << 16, 4, u64{1} << 26));
    REQUIRE(cps.size() >= 4);
    double prev_ratio = 1e9;
    for (const auto& cp : cps) {
        auto p = predict(cp.n, cp.pi, cp.pi2, c2);
        INFO("N = " << cp.n);
        CHECK(p.a_theor > 0);
        CHECK(p.b_theor > 0);
        CHECK(p.b_theor < 1);
        CHECK(p.b_asympt == c2 / std::log(static_cast<double>(cp.n)));
        // first-order inversion of the geometric-series sums
        CHECK(std::fabs(p.a_theor / p.b_theor - static_cast<double>(cp.pi2)) / static_cast<double>(cp.pi2) <=
              p.b_theor);
        double ratio = p.b_theor / p.b_asympt;
        CHECK(ratio < prev_ratio);
        CHECK(ratio > 1);
        prev_ratio = ratio;
    }
}
