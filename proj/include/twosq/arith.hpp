#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "twosq/rational.hpp"

namespace twosq {

struct PrimePower {
    uint64_t prime;
    int exponent;
    bool operator==(const PrimePower&) const = default;
};

// Primes ascending. The empty factorization is n = 1.
struct Factorization {
    std::vector<PrimePower> factors;

    uint64_t value() const;
    bool is_squarefree() const;
    std::vector<uint64_t> primes() const;
};

// Smallest-prime-factor table on [0, limit].
class FactorTable {
public:
    static constexpr uint64_t kMaxLimit = 4'000'000'000ULL;

    explicit FactorTable(uint64_t limit);

    uint64_t limit() const { return limit_; }
    uint32_t smallest_prime_factor(uint64_t n) const;
    bool is_prime(uint64_t n) const;
    Factorization factorize(uint64_t n) const;
    const std::vector<uint32_t>& primes() const { return primes_; }

private:
    uint64_t limit_;
    std::vector<uint32_t> spf_;
    std::vector<uint32_t> primes_;
};

// Trial division, for arguments beyond any table.
Factorization trial_factorize(uint64_t n);

int mobius(const Factorization& f);
uint64_t euler_phi(const Factorization& f);
uint64_t tau_k(const Factorization& f, int k);
uint64_t sigma(const Factorization& f);

int chi4(int64_t n);

// r(n) = #{(x,y) : x^2 + y^2 = n}, n >= 1.
uint64_t r2(const Factorization& f);
bool is_sum_of_two_squares(const Factorization& f);
bool is_sum_of_two_squares(const FactorTable& table, uint64_t n);

struct BruteforceGuard {
    int max_dimension = 6;
    uint64_t max_n = 1'000'000;
    double max_cost = 5e9;
};

// Direct lattice count of |xi|^2 = n in Z^d.
uint64_t rd_bruteforce(uint64_t n, int d, const BruteforceGuard& guard = {});

struct SquareIdentity {
    uint64_t lhs;  // r_d(n^2) by direct count
    uint64_t rhs;  // closed form from the factorization of n
    bool holds;
};

// n = 2^k m, m odd.
// d = 3: r3(n^2) = 6 prod_{p^a || m} (sigma(p^a) - chi4(p) sigma(p^{a-1}))
// d = 4: r4(n^2) = 24 sigma(m^2)
SquareIdentity rd_square_identity(uint64_t n, int d, const BruteforceGuard& guard = {});

// Rational-valued multiplicative g-functions on odd squarefree integers.
enum class GFunction { g1 = 1, g2 = 2, g3 = 3, g4 = 4, g7 = 7 };
// Additive log-valued g-functions, summed over p | n.
enum class GLogFunction { g5 = 5, g6 = 6 };

Rational g_prime(GFunction id, uint64_t p);
LogSum g_log_prime(GLogFunction id, uint64_t p);
Rational g_value(GFunction id, const Factorization& f);
LogSum g_log_sum(GLogFunction id, const Factorization& f);
double g_log_prime_value(GLogFunction id, uint64_t p);

// c_r(h) = mu(r/(r,h)) phi(r) / phi(r/(r,h)).
int64_t ramanujan_sum(uint64_t r, int64_t h);

using PrimeRule = std::function<Rational(uint64_t)>;

enum class TransformKind { star, double_star };

// f*(p) = (1 - f(p)) / f(p); f**(p) = 1 - p f(p). Multiplicative on squarefree n.
PrimeRule convolution_transform(TransformKind kind, PrimeRule base);
Rational evaluate_squarefree(const PrimeRule& rule, const Factorization& f);

}  // namespace twosq
