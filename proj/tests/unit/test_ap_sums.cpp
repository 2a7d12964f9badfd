#include <doctest.h>

#include <cmath>
#include <numbers>

#include "../oracles.hpp"
#include "twosq/ap_sums.hpp"
#include "twosq/constants.hpp"
#include "twosq/errors.hpp"

using namespace twosq;

namespace {

const FactorTable& table() {
    static const FactorTable t(300'000);
    return t;
}

const std::vector<uint64_t>& r2t() {
    static const auto t = oracle::r2_table(300'000);
    return t;
}

}  // namespace

TEST_CASE("sum of r examples") {
    APQuery q;
    q.N = 20;
    CHECK(empirical_sum_r(table(), q) == 32);
    q.N = 4;
    q.q = 3;
    CHECK(empirical_sum_r(table(), q) == 4);
    q.N = 0;
    CHECK(empirical_sum_r(table(), q) == 0);
    APQuery p;
    p.N = 1000;
    CHECK(predicted_sum_r(p) == doctest::Approx(std::numbers::pi * 1000 / 2));
    p.q = 3;
    CHECK(predicted_sum_r(p) == doctest::Approx(2 * std::numbers::pi * 1000 / 9));
    p.q = 1;
    p.d = 5;
    CHECK(predicted_sum_r(p) == doctest::Approx(9.0 / 5 * std::numbers::pi * 1000 / 10));
}

TEST_CASE("empirical sums against naive loops") {
    const auto& r = r2t();
    for (auto [qq, a, d] : std::vector<std::tuple<uint64_t, uint64_t, uint64_t>>{
             {1, 0, 1}, {3, 1, 1}, {3, 2, 5}, {1, 0, 5}, {15, 7, 1}, {7, 3, 11}}) {
        APQuery q;
        q.N = 20'000;
        q.q = qq;
        q.a = a;
        q.d = d;
        uint64_t s = 0, s2 = 0;
        for (uint64_t n = 1; n <= q.N; ++n)
            if (n % 4 == 1 && n % qq == a % qq && n % d == 0) {
                s += r[n];
                s2 += r[n] * r[n];
            }
        CHECK(empirical_sum_r(table(), q) == s);
        CHECK(empirical_sum_r2(table(), q) == s2);
    }
    for (auto [qq, d1, d2] : std::vector<std::tuple<uint64_t, uint64_t, uint64_t>>{{1, 1, 1}, {1, 5, 3}, {3, 1, 5}}) {
        APQuery q;
        q.N = 20'000;
        q.q = qq;
        q.d1 = d1;
        q.d2 = d2;
        q.h = qq == 3 ? 12 : 4;
        uint64_t s = 0;
        for (uint64_t n = 1; n <= q.N; ++n)
            if (n % 4 == 1 && n % qq == 1 % qq && n % d1 == 0 && (n + q.h) % d2 == 0) s += r[n] * r[n + q.h];
        CHECK(empirical_sum_rr(table(), q) == s);
    }
}

TEST_CASE("pair and square sums small cases") {
    APQuery q;
    q.N = 20;
    CHECK(empirical_sum_rr(table(), q) == 160);
    CHECK(empirical_sum_r2(table(), q) == 224);
    q.N = 0;
    CHECK(empirical_sum_rr(table(), q) == 0);
}

TEST_CASE("hypotheses are enforced") {
    APQuery q;
    q.N = 100;
    q.q = 9;
    CHECK_THROWS_AS(validate(q, APSum::r), ValidationError);
    q.q = 3;
    q.a = 3;
    CHECK_THROWS_AS(validate(q, APSum::r), ValidationError);
    q.a = 1;
    q.d = 3;
    CHECK_THROWS_AS(validate(q, APSum::r), ValidationError);
    APQuery h;
    h.N = 100;
    h.h = 20;  // 5 does not divide 2q
    CHECK_THROWS_AS(validate(h, APSum::rr), ValidationError);
    h.h = 6;
    CHECK_THROWS_AS(validate(h, APSum::rr), ValidationError);
    h.h = 8;
    CHECK_NOTHROW(validate(h, APSum::rr));
}

TEST_CASE("singular series: Euler form against the r-sum") {
    CHECK(std::abs(gamma_singular_series(1, 1, 1).value - 8 / (std::numbers::pi * std::numbers::pi)) < 1e-5);
    const double g3 = gamma_singular_series(1, 1, 3).value;
    CHECK(std::abs(g3 - 8 / (std::numbers::pi * std::numbers::pi) / (1 - 1.0 / 9)) < 1e-5);
    for (uint64_t q : {1ULL, 3ULL, 7ULL, 15ULL})
        for (uint64_t d1 : {1ULL, 5ULL, 13ULL, 11ULL})
            for (uint64_t d2 : {1ULL, 3ULL, 17ULL, 21ULL}) {
                if (std::gcd(d1, d2) != 1 || std::gcd(d1 * d2, q) != 1) continue;
                const auto e = gamma_singular_series(d1, d2, q, 100'000);
                CHECK(std::abs(e.value - oracle::gamma_direct(d1, d2, q, 20'000)) < 1e-3);
            }
}

TEST_CASE("square-sum bracket assembly") {
    APQuery q;
    q.N = 1000;
    const double A2 = special_constants().A2.value;
    CHECK(r2_bracket(q) == doctest::Approx(std::log(1000.0) + A2));
    CHECK(predicted_sum_r2(q) == doctest::Approx((std::log(1000.0) + A2) * 1000));
    q.q = 3;
    CHECK(r2_bracket(q) == doctest::Approx(std::log(1000.0) + A2 + std::log(3.0) / 4));
}

TEST_CASE("correlation reports") {
    APQuery q;
    q.N = 100'000;
    const auto rep = correlate(table(), q, APSum::r);
    CHECK(rep.rel_error < 0.01);
    CHECK(rep.rel_error == doctest::Approx(std::abs(rep.empirical - rep.predicted_main) / rep.predicted_main));
    CHECK(to_json(rep).contains("params"));
    CHECK_FALSE(to_json(rep).contains("runtime_ms"));
}
