#include "twosq/ap_sums.hpp"

#include <cmath>
#include <numbers>

#include "twosq/errors.hpp"
#include "twosq/primes.hpp"

namespace twosq {

namespace {

void require_odd_squarefree(uint64_t x, const char* name) {
    require(x >= 1, std::string(name) + " must be positive");
    require(x % 2 == 1, std::string(name) + " must be odd");
    require(trial_factorize(x).is_squarefree(), std::string(name) + " must be squarefree");
}

uint64_t checked_mul(uint64_t a, uint64_t b) {
    require(b == 0 || a <= (uint64_t(1) << 62) / b, "combined modulus too large");
    return a * b;
}

struct Progression {
    uint64_t start;  // least element >= 1
    uint64_t step;
};

// n = residues[i] mod moduli[i], pairwise coprime moduli
Progression combine(std::initializer_list<std::pair<uint64_t, uint64_t>> congruences) {
    uint64_t r = 0, m = 1;
    for (auto [res, mod] : congruences) {
        r = crt_pair(r, m, res % mod, mod);
        m = checked_mul(m, mod);
    }
    return {r == 0 ? m : r, m};
}

}  // namespace

const char* to_string(APSum kind) {
    switch (kind) {
        case APSum::r: return "sum_r";
        case APSum::rr: return "sum_rr";
        case APSum::r2: return "sum_r2";
    }
    return "?";
}

void validate(const APQuery& q, APSum kind) {
    require_odd_squarefree(q.q, "q");
    require(gcd_u64(q.a % q.q, q.q) == 1, "(a, q) must be 1");
    if (kind == APSum::rr) {
        require_odd_squarefree(q.d1, "d1");
        require_odd_squarefree(q.d2, "d2");
        require(gcd_u64(q.d1, q.q) == 1 && gcd_u64(q.d2, q.q) == 1, "d1, d2 must be coprime to q");
        require(gcd_u64(q.d1, q.d2) == 1, "(d1, d2) must be 1");
        require(q.h > 0 && q.h % 4 == 0, "h must be positive and divisible by 4");
        require(gcd_u64((q.a + q.h) % q.q, q.q) == 1, "(a + h, q) must be 1");
        for (const auto& pp : trial_factorize(q.h).factors)
            require(pp.prime == 2 || q.q % pp.prime == 0,
                    "every prime dividing h must divide 2q (p=" + std::to_string(pp.prime) + ")");
    } else {
        require_odd_squarefree(q.d, "d");
        require(gcd_u64(q.d, q.q) == 1, "(d, q) must be 1");
    }
}

uint64_t empirical_sum_r(const FactorTable& table, const APQuery& q) {
    validate(q, APSum::r);
    if (q.N == 0) return 0;
    require(q.N <= table.limit(), "N exceeds factor table limit");
    Progression pr = combine({{q.a, q.q}, {1, 4}, {0, q.d}});
    uint64_t s = 0;
    for (uint64_t n = pr.start; n <= q.N; n += pr.step) s += r2(table.factorize(n));
    return s;
}

double predicted_sum_r(const APQuery& q) {
    validate(q, APSum::r);
    const double g1 = to_double(g_value(GFunction::g1, trial_factorize(q.q)));
    const double g2 = to_double(g_value(GFunction::g2, trial_factorize(q.d)));
    return g1 * g2 / (2.0 * double(q.q) * double(q.d)) * std::numbers::pi * double(q.N);
}

ConstantEstimate gamma_singular_series(uint64_t d1, uint64_t d2, uint64_t q, uint64_t prime_bound) {
    require_odd_squarefree(q, "q");
    require_odd_squarefree(d1, "d1");
    require_odd_squarefree(d2, "d2");
    require(gcd_u64(d1, d2) == 1, "(d1, d2) must be 1");
    require(gcd_u64(d1, q) == 1 && gcd_u64(d2, q) == 1, "d1, d2 must be coprime to q");
    require(prime_bound >= 3, "prime bound must be >= 3");
    const uint64_t dd = d1 * d2;
    double log_tail = 0.0;
    for (uint32_t p : primes_up_to(prime_bound)) {
        if (p == 2 || q % p == 0 || dd % p == 0) continue;
        log_tail += std::log1p(-1.0 / (double(p) * double(p)));
    }
    Rational finite = 1;
    for (uint64_t p : trial_factorize(dd).primes()) finite *= 1 - Rational(chi4(int64_t(p))) / make_rational_u(p);
    finite *= g_value(GFunction::g2, trial_factorize(d1)) * g_value(GFunction::g2, trial_factorize(d2));
    finite /= make_rational_u(dd);
    ConstantEstimate est;
    est.value = to_double(finite) * std::exp(log_tail);
    // missing factors prod_{p>P}(1-p^-2) lie in [1 - 1/P, 1]
    est.error_bound = std::abs(est.value) / double(prime_bound);
    est.truncation_point = prime_bound;
    est.method = "exact local factors at p | d1 d2, truncated product of (1 - p^-2) elsewhere";
    return est;
}

uint64_t empirical_sum_rr(const FactorTable& table, const APQuery& q) {
    validate(q, APSum::rr);
    if (q.N == 0) return 0;
    require(q.N + q.h <= table.limit(), "N + h exceeds factor table limit");
    const uint64_t shift = (q.d2 - q.h % q.d2) % q.d2;
    Progression pr = combine({{q.a, q.q}, {1, 4}, {0, q.d1}, {shift, q.d2}});
    uint64_t s = 0;
    for (uint64_t n = pr.start; n <= q.N; n += pr.step) {
        const uint64_t r = r2(table.factorize(n));
        if (r == 0) continue;
        s += r * r2(table.factorize(n + q.h));
    }
    return s;
}

double predicted_sum_rr(const APQuery& q, uint64_t prime_bound) {
    validate(q, APSum::rr);
    const double g1 = to_double(g_value(GFunction::g1, trial_factorize(q.q)));
    const double gamma = gamma_singular_series(q.d1, q.d2, q.q, prime_bound).value;
    return g1 * g1 * gamma / double(q.q) * std::numbers::pi * std::numbers::pi * double(q.N);
}

uint64_t empirical_sum_r2(const FactorTable& table, const APQuery& q) {
    validate(q, APSum::r2);
    if (q.N == 0) return 0;
    require(q.N <= table.limit(), "N exceeds factor table limit");
    Progression pr = combine({{q.a, q.q}, {1, 4}, {0, q.d}});
    uint64_t s = 0;
    for (uint64_t n = pr.start; n <= q.N; n += pr.step) {
        const uint64_t r = r2(table.factorize(n));
        s += r * r;
    }
    return s;
}

double r2_bracket(const APQuery& q) {
    LogSum extra;
    LogSum g5 = g_log_sum(GLogFunction::g5, trial_factorize(q.q));
    LogSum g6 = g_log_sum(GLogFunction::g6, trial_factorize(q.d));
    extra += g5;
    extra += g5;
    extra -= g6;
    extra -= g6;
    return std::log(double(q.N)) + special_constants().A2.value + extra.value();
}

double predicted_sum_r2(const APQuery& q) {
    validate(q, APSum::r2);
    require(q.N >= 1, "N must be positive for the predicted main term");
    const double g3 = to_double(g_value(GFunction::g3, trial_factorize(q.q)));
    const double g4 = to_double(g_value(GFunction::g4, trial_factorize(q.d)));
    return g3 * g4 / (double(q.q) * double(q.d)) * r2_bracket(q) * double(q.N);
}

CorrelationReport correlate(const FactorTable& table, const APQuery& q, APSum kind) {
    Stopwatch sw;
    double emp = 0.0, pred = 0.0;
    json params = {{"N", q.N}, {"q", q.q}, {"a", q.a % q.q}};
    switch (kind) {
        case APSum::r:
            emp = double(empirical_sum_r(table, q));
            pred = predicted_sum_r(q);
            params["d"] = q.d;
            break;
        case APSum::rr:
            emp = double(empirical_sum_rr(table, q));
            pred = predicted_sum_rr(q);
            params["d1"] = q.d1;
            params["d2"] = q.d2;
            params["h"] = q.h;
            break;
        case APSum::r2:
            emp = double(empirical_sum_r2(table, q));
            pred = predicted_sum_r2(q);
            params["d"] = q.d;
            break;
    }
    return make_report(to_string(kind), emp, pred, params, sw.elapsed_ms());
}

}  // namespace twosq
