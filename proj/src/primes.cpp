#include "twosq/primes.hpp"

#include <cmath>
#include <numeric>

namespace twosq {

std::vector<uint32_t> primes_up_to(uint64_t limit) {
    std::vector<uint32_t> out;
    if (limit < 2) return out;
    std::vector<bool> composite(limit + 1, false);
    for (uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(static_cast<uint32_t>(i));
        for (uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

uint64_t gcd_u64(uint64_t a, uint64_t b) { return std::gcd(a, b); }

uint64_t isqrt_u64(uint64_t n) {
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_perfect_square(uint64_t n) {
    uint64_t r = isqrt_u64(n);
    return r * r == n;
}

uint64_t inverse_mod(uint64_t a, uint64_t m) {
    if (m == 1) return 0;
    __int128 t = 0, new_t = 1;
    __int128 r = m, new_r = a % m;
    while (new_r != 0) {
        __int128 q = r / new_r;
        __int128 tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (t < 0) t += m;
    return static_cast<uint64_t>(t);
}

uint64_t crt_pair(uint64_t r1, uint64_t m1, uint64_t r2, uint64_t m2) {
    r1 %= m1;
    r2 %= m2;
    // x = r1 + m1 * ((r2 - r1) * m1^-1 mod m2)
    unsigned __int128 diff = (r2 + m2 - r1 % m2) % m2;
    unsigned __int128 k = diff * inverse_mod(m1 % m2, m2) % m2;
    return static_cast<uint64_t>(r1 + m1 * k);
}

int64_t mod_floor(int64_t a, int64_t m) {
    int64_t r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace twosq
