#include "twosq/arith.hpp"

#include <cmath>
#include <complex>
#include <new>
#include <sstream>

#include "twosq/errors.hpp"
#include "twosq/primes.hpp"

namespace twosq {

double LogSum::value() const {
    double s = 0.0;
    for (const auto& [p, c] : terms_) s += c.get_d() * std::log(static_cast<double>(p));
    return s;
}

std::string LogSum::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, c] : terms_) {
        if (!first) os << " + ";
        os << "(" << c.get_str() << ")*log(" << p << ")";
        first = false;
    }
    return os.str();
}

uint64_t Factorization::value() const {
    uint64_t v = 1;
    for (const auto& pp : factors)
        for (int i = 0; i < pp.exponent; ++i) v *= pp.prime;
    return v;
}

bool Factorization::is_squarefree() const {
    for (const auto& pp : factors)
        if (pp.exponent > 1) return false;
    return true;
}

std::vector<uint64_t> Factorization::primes() const {
    std::vector<uint64_t> out;
    out.reserve(factors.size());
    for (const auto& pp : factors) out.push_back(pp.prime);
    return out;
}

FactorTable::FactorTable(uint64_t limit) : limit_(limit) {
    require(limit >= 2, "factor table limit must be >= 2");
    if (limit > kMaxLimit)
        throw ResourceGuardError("factor table limit exceeds 32-bit entry range",
                                 static_cast<double>(limit) * 4.0);
    try {
        spf_.assign(limit + 1, 0);
        // linear sieve: each composite is written once by its smallest prime
        for (uint64_t i = 2; i <= limit; ++i) {
            if (spf_[i] == 0) {
                spf_[i] = static_cast<uint32_t>(i);
                primes_.push_back(static_cast<uint32_t>(i));
            }
            const uint32_t si = spf_[i];
            for (uint32_t p : primes_) {
                if (p > si || static_cast<uint64_t>(p) * i > limit) break;
                spf_[static_cast<uint64_t>(p) * i] = p;
            }
        }
    } catch (const std::bad_alloc&) {
        throw ResourceGuardError("factor table allocation failed", static_cast<double>(limit) * 4.0);
    }
}

uint32_t FactorTable::smallest_prime_factor(uint64_t n) const {
    require(n >= 2 && n <= limit_, "argument outside factor table range");
    return spf_[n];
}

bool FactorTable::is_prime(uint64_t n) const {
    require(n <= limit_, "argument outside factor table range");
    return n >= 2 && spf_[n] == n;
}

Factorization FactorTable::factorize(uint64_t n) const {
    require(n >= 1 && n <= limit_, "factorize: n outside [1, limit]");
    Factorization f;
    while (n > 1) {
        uint32_t p = spf_[n];
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.factors.push_back({p, e});
    }
    return f;
}

Factorization trial_factorize(uint64_t n) {
    require(n >= 1, "trial_factorize: n must be >= 1");
    Factorization f;
    for (uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.factors.push_back({p, e});
    }
    if (n > 1) f.factors.push_back({n, 1});
    return f;
}

int mobius(const Factorization& f) {
    for (const auto& pp : f.factors)
        if (pp.exponent > 1) return 0;
    return (f.factors.size() % 2) ? -1 : 1;
}

uint64_t euler_phi(const Factorization& f) {
    uint64_t v = 1;
    for (const auto& pp : f.factors) {
        v *= pp.prime - 1;
        for (int i = 1; i < pp.exponent; ++i) v *= pp.prime;
    }
    return v;
}

uint64_t tau_k(const Factorization& f, int k) {
    require(k >= 1, "tau_k: k must be >= 1");
    uint64_t v = 1;
    for (const auto& pp : f.factors) {
        // C(e + k - 1, k - 1)
        uint64_t c = 1;
        for (int i = 1; i <= k - 1; ++i) c = c * (pp.exponent + i) / i;
        v *= c;
    }
    return v;
}

uint64_t sigma(const Factorization& f) {
    uint64_t v = 1;
    for (const auto& pp : f.factors) {
        uint64_t s = 1, pw = 1;
        for (int i = 0; i < pp.exponent; ++i) {
            pw *= pp.prime;
            s += pw;
        }
        v *= s;
    }
    return v;
}

int chi4(int64_t n) {
    int64_t r = mod_floor(n, 4);
    if (r == 1) return 1;
    if (r == 3) return -1;
    return 0;
}

uint64_t r2(const Factorization& f) {
    // 4 * sum_{d|n} chi4(d), evaluated prime by prime
    uint64_t v = 4;
    for (const auto& pp : f.factors) {
        int c = chi4(static_cast<int64_t>(pp.prime));
        if (c == 1) v *= pp.exponent + 1;
        else if (c == -1 && pp.exponent % 2) return 0;
    }
    return v;
}

bool is_sum_of_two_squares(const Factorization& f) {
    for (const auto& pp : f.factors)
        if (pp.prime % 4 == 3 && pp.exponent % 2) return false;
    return true;
}

bool is_sum_of_two_squares(const FactorTable& table, uint64_t n) {
    if (n == 0) return true;
    return is_sum_of_two_squares(table.factorize(n));
}

namespace {

uint64_t count_rep(uint64_t n, int d) {
    if (d == 1) {
        if (n == 0) return 1;
        return is_perfect_square(n) ? 2 : 0;
    }
    uint64_t s = isqrt_u64(n);
    uint64_t total = count_rep(n, d - 1);
    for (uint64_t x = 1; x <= s; ++x) total += 2 * count_rep(n - x * x, d - 1);
    return total;
}

}  // namespace

uint64_t rd_bruteforce(uint64_t n, int d, const BruteforceGuard& guard) {
    require(d >= 1, "rd_bruteforce: dimension must be >= 1");
    double cost = std::pow(2.0 * std::sqrt(static_cast<double>(n)) + 1.0, d - 1);
    if (d > guard.max_dimension || n > guard.max_n || cost > guard.max_cost)
        throw ResourceGuardError("rd_bruteforce refused: n=" + std::to_string(n) +
                                     " d=" + std::to_string(d) + " exceeds enumeration guard",
                                 cost);
    return count_rep(n, d);
}

SquareIdentity rd_square_identity(uint64_t n, int d, const BruteforceGuard& guard) {
    require(n >= 1, "rd_square_identity: n must be >= 1");
    require(d == 3 || d == 4, "rd_square_identity: only d in {3,4} supported");
    Factorization f = trial_factorize(n);
    Factorization odd;
    for (const auto& pp : f.factors)
        if (pp.prime != 2) odd.factors.push_back(pp);

    uint64_t rhs = 0;
    if (d == 3) {
        int64_t prod = 6;
        for (const auto& pp : odd.factors) {
            Factorization pa{{{pp.prime, pp.exponent}}};
            Factorization pa1{{{pp.prime, pp.exponent - 1}}};
            if (pp.exponent - 1 == 0) pa1.factors.clear();
            int64_t term = static_cast<int64_t>(sigma(pa)) -
                           chi4(static_cast<int64_t>(pp.prime)) * static_cast<int64_t>(sigma(pa1));
            prod *= term;
        }
        rhs = static_cast<uint64_t>(prod);
    } else {
        Factorization sq = odd;
        for (auto& pp : sq.factors) pp.exponent *= 2;
        rhs = 24 * sigma(sq);
    }
    uint64_t lhs = rd_bruteforce(n * n, d, guard);
    return {lhs, rhs, lhs == rhs};
}

Rational g_prime(GFunction id, uint64_t p) {
    const Rational P = make_rational_u(p);
    if (id == GFunction::g1) return 1 - Rational(chi4(static_cast<int64_t>(p))) / P;
    if (id == GFunction::g7) return P + 1;
    require(p % 2 == 1, "g_" + std::to_string(static_cast<int>(id)) + " is defined on odd primes only");
    const bool one = p % 4 == 1;
    switch (id) {
        case GFunction::g2:
            return one ? Rational(2 - 1 / P) : Rational(1 / P);
        case GFunction::g3:
            return one ? Rational((P - 1) * (P - 1) / (P * (P + 1))) : g_prime(GFunction::g1, p);
        case GFunction::g4:
            return one ? Rational((4 * P * P - 3 * P + 1) / (P * (P + 1))) : g_prime(GFunction::g2, p);
        default:
            break;
    }
    throw InternalError("unhandled g-function");
}

LogSum g_log_prime(GLogFunction id, uint64_t p) {
    require(p % 2 == 1, "g_" + std::to_string(static_cast<int>(id)) + " is defined on odd primes only");
    const Rational P = make_rational_u(p);
    const bool one = p % 4 == 1;
    Rational c;
    if (id == GLogFunction::g5) {
        c = one ? Rational((2 * P + 1) / (P * P - 1)) : Rational(1 / (P * P - 1));
    } else {
        c = one ? Rational((P - 1) * (P - 1) * (2 * P + 1) / ((P + 1) * (4 * P * P - 3 * P + 1)))
                : Rational(1);
    }
    LogSum s;
    s.add(p, c);
    return s;
}

double g_log_prime_value(GLogFunction id, uint64_t p) { return g_log_prime(id, p).value(); }

Rational g_value(GFunction id, const Factorization& f) {
    require(f.is_squarefree(), "g-function argument must be squarefree");
    Rational v = 1;
    for (const auto& pp : f.factors) v *= g_prime(id, pp.prime);
    return v;
}

LogSum g_log_sum(GLogFunction id, const Factorization& f) {
    require(f.is_squarefree(), "g-function argument must be squarefree");
    LogSum s;
    for (const auto& pp : f.factors) s += g_log_prime(id, pp.prime);
    return s;
}

int64_t ramanujan_sum(uint64_t r, int64_t h) {
    require(r >= 1, "ramanujan_sum: r must be >= 1");
    uint64_t g = gcd_u64(r, static_cast<uint64_t>(h < 0 ? -h : h));
    if (h == 0) g = r;
    uint64_t q = r / g;
    Factorization fq = trial_factorize(q);
    int mu = mobius(fq);
    if (mu == 0) return 0;
    return mu * static_cast<int64_t>(euler_phi(trial_factorize(r)) / euler_phi(fq));
}

PrimeRule convolution_transform(TransformKind kind, PrimeRule base) {
    if (kind == TransformKind::star) {
        return [base](uint64_t p) -> Rational {
            Rational fp = base(p);
            require(fp != 0, "convolution transform: base rule vanishes at p=" + std::to_string(p));
            return (1 - fp) / fp;
        };
    }
    return [base](uint64_t p) -> Rational { return 1 - make_rational_u(p) * base(p); };
}

Rational evaluate_squarefree(const PrimeRule& rule, const Factorization& f) {
    require(f.is_squarefree(), "argument must be squarefree");
    Rational v = 1;
    for (const auto& pp : f.factors) v *= rule(pp.prime);
    return v;
}

}  // namespace twosq
