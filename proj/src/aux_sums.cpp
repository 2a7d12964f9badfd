#include "twosq/aux_sums.hpp"

#include <cmath>
#include <numbers>

#include "twosq/arith.hpp"
#include "twosq/constants.hpp"
#include "twosq/errors.hpp"
#include "twosq/primes.hpp"

namespace twosq {

namespace {

void dfs(const std::vector<uint32_t>& ps, std::size_t from, uint64_t v, AuxTerm& cur,
         std::vector<AuxTerm>& out) {
    out.push_back(cur);
    for (std::size_t i = from; i < ps.size(); ++i) {
        const uint64_t p = ps[i];
        if (cur.a > v / p) break;
        cur.a *= p;
        cur.mu = -cur.mu;
        cur.primes.push_back(ps[i]);
        dfs(ps, i + 1, v, cur, out);
        cur.primes.pop_back();
        cur.mu = -cur.mu;
        cur.a /= p;
    }
}

void guard_pairs(std::size_t terms, const AuxGuard& guard) {
    const double pairs = double(terms) * double(terms);
    if (pairs > guard.max_pairs)
        throw ResourceGuardError("auxiliary double sum over " + std::to_string(terms) + " terms refused",
                                 pairs);
}

// Per-term data shared by the Z sums: u = mu/g2 log(v/a), h = g4/id, G6 = sum_{p|a} g6(p).
struct ZTerm {
    uint64_t a;
    double u;
    double h;
    double g6;
};

std::vector<ZTerm> z_terms(const AuxParams& p, const std::vector<AuxTerm>& sup) {
    std::vector<ZTerm> out;
    out.reserve(sup.size());
    const double lv = std::log(double(p.v));
    for (const auto& t : sup) {
        double inv_g2 = 1.0, h = 1.0, g6 = 0.0;
        for (uint32_t q : t.primes) {
            const double P = q;
            inv_g2 *= P / (2 * P - 1);
            h *= (4 * P * P - 3 * P + 1) / (P * P * (P + 1));
            g6 += g_log_prime_value(GLogFunction::g6, q);
        }
        out.push_back({t.a, t.mu * inv_g2 * (lv - std::log(double(t.a))), h, g6});
    }
    return out;
}

double g4_over_id(uint64_t g, const std::vector<uint32_t>& primes_of_a) {
    double h = 1.0;
    for (uint32_t q : primes_of_a)
        if (g % q == 0) {
            const double P = q;
            h *= (4 * P * P - 3 * P + 1) / (P * P * (P + 1));
        }
    return h;
}

double g6_of(uint64_t g, const std::vector<uint32_t>& primes_of_a) {
    double s = 0.0;
    for (uint32_t q : primes_of_a)
        if (g % q == 0) s += g_log_prime_value(GLogFunction::g6, q);
    return s;
}

double z_sum(const AuxParams& p, const AuxGuard& guard, bool with_g6) {
    auto sup = aux_support(p, guard);
    guard_pairs(sup.size(), guard);
    auto zs = z_terms(p, sup);
    double total = 0.0;
    for (std::size_t i = 0; i < zs.size(); ++i) {
        for (std::size_t j = 0; j < zs.size(); ++j) {
            const uint64_t g = gcd_u64(zs[i].a, zs[j].a);
            // g4([a,b])/[a,b] = h(a) h(b) / h((a,b))
            double hl = zs[i].h * zs[j].h;
            if (g > 1) hl /= g4_over_id(g, sup[i].primes);
            double term = zs[i].u * zs[j].u * hl;
            if (with_g6) {
                double s6 = zs[i].g6 + zs[j].g6;
                if (g > 1) s6 -= g6_of(g, sup[i].primes);
                term *= s6;
            }
            total += term;
        }
    }
    return total;
}

double g1_of(uint64_t W1) { return to_double(g_value(GFunction::g1, trial_factorize(W1))); }

}  // namespace

AuxParams make_aux_params(uint64_t v, uint64_t W) {
    require(v >= 2, "v must be >= 2");
    require(W >= 1 && W % 2 == 1, "W must be odd and positive");
    Factorization f = trial_factorize(W);
    require(f.is_squarefree(), "W must be squarefree");
    AuxParams p{v, W, 1};
    for (uint64_t q : f.primes())
        if (q % 4 == 1) p.W1 *= q;
    return p;
}

std::vector<AuxTerm> aux_support(const AuxParams& p, const AuxGuard& guard) {
    if (p.v > guard.max_v)
        throw ResourceGuardError("auxiliary support enumeration refused for v=" + std::to_string(p.v),
                                 double(p.v));
    std::vector<uint32_t> ps;
    for (uint32_t q : primes_up_to(p.v))
        if (q % 4 == 1 && p.W % q != 0) ps.push_back(q);
    std::vector<AuxTerm> out;
    AuxTerm cur{1, 1, {}};
    dfs(ps, 0, p.v, cur, out);
    for (const auto& t : out) ensure(gcd_u64(t.a, p.W) == 1, "support element shares a factor with W");
    return out;
}

double x_direct(const AuxParams& p, const AuxGuard& guard) {
    const double lv = std::log(double(p.v));
    double s = 0.0;
    for (const auto& t : aux_support(p, guard)) s += t.mu / double(t.a) * (lv - std::log(double(t.a)));
    return s;
}

double y_direct(const AuxParams& p, const AuxGuard& guard) {
    auto sup = aux_support(p, guard);
    guard_pairs(sup.size(), guard);
    const double lv = std::log(double(p.v));
    std::vector<double> w(sup.size());
    for (std::size_t i = 0; i < sup.size(); ++i) {
        double g7 = 1.0;
        for (uint32_t q : sup[i].primes) g7 *= double(q) + 1.0;
        w[i] = sup[i].mu / g7 * (lv - std::log(double(sup[i].a)));
    }
    double s = 0.0;
    for (std::size_t i = 0; i < sup.size(); ++i)
        for (std::size_t j = 0; j < sup.size(); ++j)
            if (gcd_u64(sup[i].a, sup[j].a) == 1) s += w[i] * w[j];
    return s;
}

double z1_direct(const AuxParams& p, const AuxGuard& guard) { return z_sum(p, guard, false); }
double z2_direct(const AuxParams& p, const AuxGuard& guard) { return z_sum(p, guard, true); }

double x_predicted(const AuxParams& p) {
    const double A = special_constants().A.value;
    return 8 * A * std::sqrt(std::log(double(p.v))) / (std::numbers::pi * g1_of(p.W1));
}

double y_predicted(const AuxParams& p) {
    const double A = special_constants().A.value, g = g1_of(p.W1);
    return 64 * A * A * std::log(double(p.v)) / (std::numbers::pi * std::numbers::pi * g * g);
}

double z1_predicted(const AuxParams& p) {
    const double A = special_constants().A.value, g = g1_of(p.W1);
    return 32 * A * A * A * std::sqrt(std::log(double(p.v))) / (std::numbers::pi * std::numbers::pi * g * g * g);
}

double z2_predicted(const AuxParams& p) {
    const double A = special_constants().A.value, g = g1_of(p.W1);
    return -16 * A * A * A * std::pow(std::log(double(p.v)), 1.5) /
           (std::numbers::pi * std::numbers::pi * g * g * g);
}

const char* to_string(AuxSum s) {
    switch (s) {
        case AuxSum::x: return "X";
        case AuxSum::y: return "Y";
        case AuxSum::z1: return "Z1";
        case AuxSum::z2: return "Z2";
    }
    return "?";
}

CorrelationReport aux_report(const AuxParams& p, AuxSum s, const AuxGuard& guard) {
    Stopwatch sw;
    double emp = 0.0, pred = 0.0;
    switch (s) {
        case AuxSum::x: emp = x_direct(p, guard); pred = x_predicted(p); break;
        case AuxSum::y: emp = y_direct(p, guard); pred = y_predicted(p); break;
        case AuxSum::z1: emp = z1_direct(p, guard); pred = z1_predicted(p); break;
        case AuxSum::z2: emp = z2_direct(p, guard); pred = z2_predicted(p); break;
    }
    return make_report(to_string(s), emp, pred, json{{"v", p.v}, {"W", p.W}, {"W1", p.W1}}, sw.elapsed_ms());
}

}  // namespace twosq
