#pragma once

#include <cstdint>
#include <vector>

namespace twosq {

// All primes <= limit, ascending.
std::vector<uint32_t> primes_up_to(uint64_t limit);

uint64_t gcd_u64(uint64_t a, uint64_t b);
uint64_t isqrt_u64(uint64_t n);
bool is_perfect_square(uint64_t n);

// a^-1 mod m for gcd(a,m)=1, m >= 1.
uint64_t inverse_mod(uint64_t a, uint64_t m);

// Smallest nonnegative x with x = r1 (mod m1), x = r2 (mod m2), coprime moduli.
uint64_t crt_pair(uint64_t r1, uint64_t m1, uint64_t r2, uint64_t m2);

int64_t mod_floor(int64_t a, int64_t m);

}  // namespace twosq
