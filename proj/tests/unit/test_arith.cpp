#include <doctest.h>

#include <cmath>

#include "../oracles.hpp"
#include "twosq/arith.hpp"
#include "twosq/errors.hpp"
#include "twosq/primes.hpp"

using namespace twosq;

TEST_CASE("factor table smallest prime factors") {
    FactorTable t10(10);
    CHECK(t10.smallest_prime_factor(4) == 2);
    CHECK(t10.smallest_prime_factor(9) == 3);
    CHECK(t10.smallest_prime_factor(7) == 7);
    CHECK(FactorTable(2).smallest_prime_factor(2) == 2);
    FactorTable big(1'000'000);
    CHECK(big.smallest_prime_factor(999983) == 999983);
    CHECK(oracle::is_prime(999983));
    for (uint64_t n = 2; n <= 5000; ++n) CHECK(big.is_prime(n) == oracle::is_prime(n));
}

TEST_CASE("factorize matches trial division") {
    FactorTable t(100'000);
    CHECK(t.factorize(1).factors.empty());
    CHECK(t.factorize(12).factors == std::vector<PrimePower>{{2, 2}, {3, 1}});
    CHECK(t.factorize(9999).factors == std::vector<PrimePower>{{3, 2}, {11, 1}, {101, 1}});
    for (uint64_t n = 1; n <= 100'000; n += 37) {
        CHECK(t.factorize(n).factors == trial_factorize(n).factors);
        CHECK(t.factorize(n).value() == n);
    }
    CHECK_THROWS_AS(t.factorize(100'001), ValidationError);
}

TEST_CASE("multiplicative functions against divisor loops") {
    CHECK(mobius(trial_factorize(6)) == 1);
    CHECK(mobius(trial_factorize(30)) == -1);
    CHECK(mobius(trial_factorize(12)) == 0);
    CHECK(euler_phi(trial_factorize(10)) == 4);
    CHECK(sigma(trial_factorize(6)) == 12);
    CHECK(tau_k(trial_factorize(12), 2) == 6);
    CHECK(tau_k(trial_factorize(4), 3) == 6);
    for (uint64_t n = 1; n <= 2000; ++n) {
        const auto f = trial_factorize(n);
        CHECK(mobius(f) == oracle::mobius(n));
        CHECK(euler_phi(f) == oracle::phi(n));
        CHECK(sigma(f) == oracle::sigma(n));
        if (n <= 300) CHECK(tau_k(f, 3) == oracle::tau_k(n, 3));
    }
}

TEST_CASE("chi4 and r2") {
    CHECK(chi4(1) == 1);
    CHECK(chi4(2) == 0);
    CHECK(chi4(7) == -1);
    CHECK(chi4(-1) == -1);
    CHECK(r2(trial_factorize(1)) == 4);
    CHECK(r2(trial_factorize(3)) == 0);
    CHECK(r2(trial_factorize(25)) == 12);
    const auto table = oracle::r2_table(20'000);
    for (uint64_t n = 1; n <= 20'000; ++n) {
        const auto f = trial_factorize(n);
        CHECK(r2(f) == table[n]);
        CHECK(is_sum_of_two_squares(f) == (table[n] > 0));
    }
    FactorTable t(100);
    CHECK(is_sum_of_two_squares(t, 0));
    CHECK(is_sum_of_two_squares(t, 9));
    CHECK_FALSE(is_sum_of_two_squares(t, 21));
    CHECK(is_sum_of_two_squares(t, 2));
}

TEST_CASE("lattice counts and square identities") {
    CHECK(rd_bruteforce(5, 2) == 8);
    CHECK(rd_bruteforce(9, 3) == 30);
    CHECK(rd_bruteforce(0, 4) == 1);
    for (uint64_t n = 0; n <= 200; ++n)
        for (int d = 1; d <= 4; ++d) CHECK(rd_bruteforce(n, d) == oracle::rd(n, d));
    CHECK(rd_square_identity(3, 3).rhs == 30);
    CHECK(rd_square_identity(2, 4).rhs == 24);
    CHECK(rd_square_identity(1, 3).rhs == 6);
    CHECK_THROWS_AS(rd_bruteforce(2'000'000, 2), ResourceGuardError);
    try {
        rd_bruteforce(100, 9);
    } catch (const ResourceGuardError& e) {
        CHECK(e.estimated_cost() > 0);
    }
}

TEST_CASE("odd n breaks the four-square identity by a factor of three") {
    for (uint64_t n = 1; n <= 25; n += 2) {
        const auto s = rd_square_identity(n, 4);
        CHECK(s.rhs == 3 * s.lhs);
        CHECK(s.lhs == 8 * oracle::sigma(n * n));
    }
}

TEST_CASE("g-functions at primes") {
    CHECK(g_prime(GFunction::g2, 5) == Rational(9, 5));
    CHECK(g_prime(GFunction::g2, 3) == Rational(1, 3));
    CHECK(g_prime(GFunction::g1, 3) == Rational(4, 3));
    CHECK(g_prime(GFunction::g3, 5) == Rational(8, 15));
    CHECK(g_prime(GFunction::g4, 5) == Rational(43, 15));
    CHECK(g_value(GFunction::g7, trial_factorize(15)) == 24);
    CHECK(g_prime(GFunction::g1, 2) == 1);
    CHECK_THROWS_AS(g_prime(GFunction::g2, 2), ValidationError);
    CHECK_THROWS_AS(g_value(GFunction::g2, trial_factorize(9)), ValidationError);
    CHECK(std::abs(g_log_prime_value(GLogFunction::g5, 3) - std::log(3.0) / 8) < 1e-15);
}

TEST_CASE("g-functions are multiplicative on coprime squarefree arguments") {
    std::vector<uint64_t> sf;
    for (uint64_t n = 1; n <= 300; n += 2)
        if (oracle::mobius(n) != 0) sf.push_back(n);
    for (uint64_t a : sf)
        for (uint64_t b : sf) {
            if (std::gcd(a, b) != 1 || a * b > 10'000) continue;
            const auto fa = trial_factorize(a), fb = trial_factorize(b), fab = trial_factorize(a * b);
            for (auto g : {GFunction::g1, GFunction::g2, GFunction::g3, GFunction::g4, GFunction::g7})
                CHECK(g_value(g, fab) == g_value(g, fa) * g_value(g, fb));
            for (auto g : {GLogFunction::g5, GLogFunction::g6}) {
                LogSum s = g_log_sum(g, fa);
                s += g_log_sum(g, fb);
                CHECK(g_log_sum(g, fab).to_string() == s.to_string());
            }
        }
}

TEST_CASE("Ramanujan sums against the exponential sum") {
    CHECK(ramanujan_sum(1, 17) == 1);
    CHECK(ramanujan_sum(3, 3) == 2);
    CHECK(ramanujan_sum(3, 1) == -1);
    for (uint64_t r = 1; r <= 200; r += 3)
        for (int64_t h = 0; h <= 200; h += 7) CHECK(std::abs(ramanujan_sum(r, h) - oracle::ramanujan_sum(r, h)) < 1e-9);
}

TEST_CASE("convolution transforms") {
    const PrimeRule inv = [](uint64_t p) -> Rational { return Rational(1) / make_rational_u(p); };
    const PrimeRule inv_sq = [](uint64_t p) -> Rational { return Rational(1) / make_rational_u(p * p); };
    const auto star = convolution_transform(TransformKind::star, inv);
    const auto dstar = convolution_transform(TransformKind::double_star, inv);
    const auto gdstar = convolution_transform(TransformKind::double_star, inv_sq);
    for (uint64_t p : {3ULL, 7ULL, 11ULL}) {
        CHECK(star(p) == make_rational_u(p - 1));
        CHECK(dstar(p) == 0);
        CHECK(gdstar(p) == 1 - Rational(1) / make_rational_u(p));
    }
    CHECK(evaluate_squarefree(star, trial_factorize(21)) == 12);
}

TEST_CASE("primes helpers") {
    CHECK(primes_up_to(30) == std::vector<uint32_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
    CHECK(isqrt_u64(99) == 9);
    CHECK(is_perfect_square(144));
    CHECK(inverse_mod(3, 7) == 5);
    const uint64_t x = crt_pair(2, 3, 1, 4);
    CHECK(x % 3 == 2);
    CHECK(x % 4 == 1);
}
