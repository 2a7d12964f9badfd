#include <doctest.h>

#include <cmath>

#include "../oracles.hpp"
#include "twosq/errors.hpp"
#include "twosq/hooley.hpp"

using namespace twosq;

namespace {

double t_naive(uint64_t n, uint64_t v) {
    double s = 0.0;
    for (uint64_t a = 1; a <= std::min(n, v); ++a) {
        if (n % a != 0) continue;
        const int mu = oracle::mobius(a);
        if (mu == 0) continue;
        bool ok = true;
        for (uint64_t p = 2; p <= a; ++p)
            if (a % p == 0 && oracle::is_prime(p) && p % 4 != 1) ok = false;
        if (!ok) continue;
        s += mu / oracle::g2(a) * (1 - std::log(double(a)) / std::log(double(v)));
    }
    return s;
}

}  // namespace

TEST_CASE("t weight examples") {
    const auto p = rho_params_from_v(100);
    CHECK(t_weight(p, trial_factorize(1)) == 1.0);
    CHECK(t_weight(p, trial_factorize(3)) == 1.0);
    const double expect = 1 - 5.0 / 9.0 * (1 - std::log(5.0) / std::log(100.0));
    CHECK(std::abs(t_weight(p, trial_factorize(5)) - expect) < 1e-14);
    CHECK(rho(p, trial_factorize(3)) == 0.0);
    CHECK(rho(p, trial_factorize(1)) == 4.0);
    CHECK(std::abs(rho(p, trial_factorize(5)) - 8 * expect) < 1e-13);
}

TEST_CASE("t weight against divisor enumeration") {
    for (uint64_t v : {2ULL, 13ULL, 100ULL, 1000ULL}) {
        const auto p = rho_params_from_v(v);
        for (uint64_t n = 1; n <= 3000; ++n) CHECK(std::abs(t_weight(p, trial_factorize(n)) - t_naive(n, v)) < 1e-12);
    }
}

TEST_CASE("rho vanishes off the sums of two squares") {
    const auto p = rho_params_from_v(1000);
    for (uint64_t n = 1; n <= 5000; ++n) {
        const auto f = trial_factorize(n);
        if (!is_sum_of_two_squares(f)) CHECK(rho(p, f) == 0.0);
    }
}

TEST_CASE("t weight is one without small split primes") {
    const auto p = rho_params_from_v(50);
    for (uint64_t n : {3ULL * 7 * 11, 53ULL * 61, 9ULL, 2ULL * 59})
        CHECK(t_weight(p, trial_factorize(n)) == 1.0);
}

TEST_CASE("v from N") {
    CHECK(floor_power(1000, 1.0 / 3.0) == 10);
    CHECK(floor_power(1'000'000, 0.5) == 1000);
    const auto p = make_rho_params(1'000'000, 0.5);
    CHECK(p.v == 1000);
    CHECK_THROWS_AS(make_rho_params(10, 0.1), ValidationError);
    CHECK_THROWS_AS(rho_params_from_v(1), ValidationError);
}
