#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "../oracles.hpp"
#include "twosq/aux_sums.hpp"
#include "twosq/constants.hpp"
#include "twosq/errors.hpp"

using namespace twosq;

namespace {

// Terms a <= v: squarefree, all prime factors = 1 mod 4 and coprime to W.
std::vector<uint64_t> naive_support(uint64_t v, uint64_t W) {
    std::vector<uint64_t> out;
    for (uint64_t a = 1; a <= v; ++a) {
        if (oracle::mobius(a) == 0 || std::gcd(a, W) != 1) continue;
        bool ok = true;
        for (uint64_t p = 2; p <= a; ++p)
            if (a % p == 0 && oracle::is_prime(p) && p % 4 != 1) ok = false;
        if (ok) out.push_back(a);
    }
    return out;
}

double g4_over_id(uint64_t n) {
    double h = 1.0;
    for (uint64_t p = 2; p <= n; ++p)
        if (n % p == 0 && oracle::is_prime(p)) h *= (4.0 * p * p - 3.0 * p + 1) / (double(p) * p * (p + 1));
    return h;
}

double g6(uint64_t p) {
    const double P = double(p);
    return (P - 1) * (P - 1) * (2 * P + 1) * std::log(P) / ((P + 1) * (4 * P * P - 3 * P + 1));
}

}  // namespace

TEST_CASE("trivial ranges") {
    for (uint64_t v : {2ULL, 3ULL, 4ULL}) {
        const auto p = make_aux_params(v, 1);
        const double lv = std::log(double(v));
        CHECK(x_direct(p) == doctest::Approx(lv));
        CHECK(y_direct(p) == doctest::Approx(lv * lv));
        CHECK(z1_direct(p) == doctest::Approx(lv * lv));
        CHECK(z2_direct(p) == 0.0);
    }
}

TEST_CASE("X at v = 30") {
    const auto p = make_aux_params(30, 1);
    const double l = std::log(30.0);
    double expect = l;
    for (double a : {5.0, 13.0, 17.0, 29.0}) expect -= std::log(30.0 / a) / a;
    CHECK(x_direct(p) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("support generation and coprimality") {
    for (uint64_t W : {1ULL, 5ULL, 65ULL, 105ULL}) {
        const auto p = make_aux_params(2000, W);
        std::vector<uint64_t> got;
        for (const auto& t : aux_support(p)) {
            got.push_back(t.a);
            CHECK(std::gcd(t.a, W) == 1);
            CHECK(t.mu == oracle::mobius(t.a));
        }
        std::sort(got.begin(), got.end());
        CHECK(got == naive_support(2000, W));
    }
    CHECK(make_aux_params(100, 105).W1 == 5);
    CHECK_THROWS_AS(make_aux_params(100, 9), ValidationError);
    CHECK_THROWS_AS(make_aux_params(100, 2), ValidationError);
}

TEST_CASE("double sums against direct pair loops") {
    const uint64_t v = 600;
    const auto p = make_aux_params(v, 1);
    const auto sup = naive_support(v, 1);
    const double lv = std::log(double(v));
    double y = 0.0, z1 = 0.0, z2 = 0.0;
    for (uint64_t a : sup)
        for (uint64_t b : sup) {
            const double ua = oracle::mobius(a) / oracle::g2(a) * (lv - std::log(double(a)));
            const double ub = oracle::mobius(b) / oracle::g2(b) * (lv - std::log(double(b)));
            const uint64_t l = a / std::gcd(a, b) * b;
            z1 += ua * ub * g4_over_id(l);
            double s6 = 0.0;
            for (uint64_t q = 2; q <= l; ++q)
                if (l % q == 0 && oracle::is_prime(q)) s6 += g6(q);
            z2 += ua * ub * g4_over_id(l) * s6;
            if (std::gcd(a, b) == 1) {
                double g7a = 1, g7b = 1;
                for (uint64_t q = 2; q <= a; ++q)
                    if (a % q == 0 && oracle::is_prime(q)) g7a *= double(q + 1);
                for (uint64_t q = 2; q <= b; ++q)
                    if (b % q == 0 && oracle::is_prime(q)) g7b *= double(q + 1);
                y += oracle::mobius(a) * oracle::mobius(b) / (g7a * g7b) * (lv - std::log(double(a))) *
                     (lv - std::log(double(b)));
            }
        }
    CHECK(y_direct(p) == doctest::Approx(y).epsilon(1e-12));
    CHECK(z1_direct(p) == doctest::Approx(z1).epsilon(1e-12));
    CHECK(z2_direct(p) == doctest::Approx(z2).epsilon(1e-12));
}

TEST_CASE("predicted forms") {
    const auto p = make_aux_params(100'000, 1);
    const double A = special_constants().A.value, lv = std::log(1e5);
    CHECK(x_predicted(p) == doctest::Approx(8 * A * std::sqrt(lv) / std::numbers::pi));
    CHECK(y_predicted(p) / (x_predicted(p) * x_predicted(p)) == doctest::Approx(1.0));
    CHECK(z2_predicted(p) < 0);
    CHECK(z2_predicted(make_aux_params(100'000, 105)) < 0);
}

TEST_CASE("Z2 sign on small ranges") {
    for (uint64_t v = 100; v <= 3000; v += 100) CHECK(z2_direct(make_aux_params(v, 1)) < 0);
}

TEST_CASE("guards") {
    AuxGuard g;
    g.max_pairs = 10;
    CHECK_THROWS_AS(y_direct(make_aux_params(1000, 1), g), ResourceGuardError);
    g.max_v = 10;
    CHECK_THROWS_AS(x_direct(make_aux_params(1000, 1), g), ResourceGuardError);
}
