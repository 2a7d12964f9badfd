#include "twosq/sieve_sums.hpp"

#include <cmath>
#include <numbers>

#include "twosq/errors.hpp"
#include "twosq/primes.hpp"
#include "twosq/quadrature.hpp"

namespace twosq {

namespace {

constexpr double kPi = std::numbers::pi;

// Support indices of divisors d | m with d in the weight table's support.
template <class Scalar>
void support_divisors(const WeightTable<Scalar>& table, const FactorTable& factors, uint64_t m,
                      std::vector<std::size_t>& out) {
    out.clear();
    std::vector<uint64_t> prods{1};
    for (const auto& pp : factors.factorize(m).factors) {
        if (pp.prime % 4 != 3 || table.W() % pp.prime == 0) continue;
        const std::size_t cur = prods.size();
        for (std::size_t i = 0; i < cur; ++i)
            if (prods[i] <= table.R() / pp.prime) prods.push_back(prods[i] * pp.prime);
    }
    for (uint64_t d : prods) {
        long s = table.support_index(d);
        if (s >= 0) out.push_back(std::size_t(s));
    }
}

struct Congruence {
    __int128 r, m;
    bool ok;
};

// x = r1 (mod m1), x = r2 (mod m2), general moduli
Congruence merge(Congruence a, __int128 r2, __int128 m2) {
    if (!a.ok) return a;
    const __int128 g = gcd_u64(uint64_t(a.m), uint64_t(m2));
    const __int128 diff = ((r2 - a.r) % m2 + m2) % m2;
    if (diff % g != 0) return {0, 0, false};
    const __int128 m1g = a.m / g, m2g = m2 / g;
    const __int128 inv = m2g == 1 ? 0 : (__int128)inverse_mod(uint64_t(m1g % m2g), uint64_t(m2g));
    const __int128 t = (diff / g) % m2g * inv % m2g;
    const __int128 M = a.m * m2g;
    return {((a.r + a.m * t) % M + M) % M, M, true};
}

__int128 floor_div(__int128 a, __int128 b) {
    __int128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// #{n in [lo, hi) : n = r (mod M)}
__int128 count_in_range(__int128 lo, __int128 hi, __int128 r, __int128 M) {
    return floor_div(hi - 1 - r, M) - floor_div(lo - 1 - r, M);
}

}  // namespace

const char* to_string(SieveSum s) {
    switch (s) {
        case SieveSum::S1: return "S1";
        case SieveSum::S2: return "S2";
        case SieveSum::S3: return "S3";
        case SieveSum::S4: return "S4";
    }
    return "?";
}

template <class Scalar>
void for_each_sieve_n(const SieveParams& params, const AdmissibleTuple& tuple, const WeightTable<Scalar>& table,
                      const FactorTable& factors,
                      const std::function<void(uint64_t, const Scalar&)>& visit) {
    const std::size_t k = tuple.size();
    require(table.k() == k, "weight table dimension differs from tuple size");
    require(table.W() == params.W && table.R() == params.R, "weight table built for other parameters");
    require(int64_t(params.N) + tuple.min() >= 1, "N + min(h) must be positive");
    require(2 * params.N - 1 + uint64_t(std::max<int64_t>(tuple.max(), 0)) <= factors.limit(),
            "2N + max(h) exceeds factor table limit");
    const uint64_t v0 = find_v0(params.W, tuple.h());
    const uint64_t step = 4 * params.W;
    const uint64_t r = crt_pair(v0, params.W, 1, 4);
    uint64_t n = params.N + (r + step - params.N % step) % step;
    std::vector<std::vector<std::size_t>> divs(k);
    std::vector<std::size_t> pos(k), idx(k);
    for (; n < 2 * params.N; n += step) {
        bool empty = false;
        for (std::size_t i = 0; i < k; ++i) {
            support_divisors(table, factors, uint64_t(int64_t(n) + tuple[i]), divs[i]);
            if (divs[i].empty()) empty = true;
        }
        Scalar s(0);
        if (!empty) {
            std::fill(pos.begin(), pos.end(), 0);
            while (true) {
                for (std::size_t i = 0; i < k; ++i) idx[i] = divs[i][pos[i]];
                long at = table.find_by_index(idx);
                if (at >= 0) s += table.lambda(std::size_t(at));
                std::size_t i = 0;
                while (i < k && ++pos[i] == divs[i].size()) pos[i++] = 0;
                if (i == k) break;
            }
        }
        visit(n, s);
    }
}

template void for_each_sieve_n<double>(const SieveParams&, const AdmissibleTuple&, const WeightTable<double>&,
                                       const FactorTable&, const std::function<void(uint64_t, const double&)>&);
template void for_each_sieve_n<Rational>(const SieveParams&, const AdmissibleTuple&,
                                         const WeightTable<Rational>&, const FactorTable&,
                                         const std::function<void(uint64_t, const Rational&)>&);

SieveSumResult s_direct(SieveSum which, const SieveParams& params, const AdmissibleTuple& tuple,
                        const WeightTable<double>& table, const FactorTable& factors, std::size_t m, std::size_t l) {
    const std::size_t k = tuple.size();
    if (which != SieveSum::S1) require(m < k, "m out of range");
    if (which == SieveSum::S3) require(l < k && l != m, "S3 needs l != m within the tuple");
    const RhoParams rp = rho_params_from_v(params.v);
    SieveSumResult out;
    double total = 0.0;
    auto rho_at = [&](uint64_t x) {
        double v = rho(rp, factors.factorize(x));
        if (v < 0) ++out.negative_rho;
        return v;
    };
    for_each_sieve_n<double>(params, tuple, table, factors, [&](uint64_t n, const double& s) {
        ++out.terms;
        const double w = s * s;
        if (w == 0.0) return;
        switch (which) {
            case SieveSum::S1: total += w; break;
            case SieveSum::S2: total += w * rho_at(uint64_t(int64_t(n) + tuple[m])); break;
            case SieveSum::S3:
                total += w * rho_at(uint64_t(int64_t(n) + tuple[m])) * rho_at(uint64_t(int64_t(n) + tuple[l]));
                break;
            case SieveSum::S4: {
                const double r = rho_at(uint64_t(int64_t(n) + tuple[m]));
                total += w * r * r;
                break;
            }
        }
    });
    out.value = total;
    return out;
}

Rational s1_direct_exact(const SieveParams& params, const AdmissibleTuple& tuple,
                         const WeightTable<Rational>& table, const FactorTable& factors) {
    Rational total = 0;
    for_each_sieve_n<Rational>(params, tuple, table, factors, [&](uint64_t, const Rational& s) {
        if (s != 0) total += s * s;
    });
    return total;
}

Rational s1_pair_expansion(const SieveParams& params, const AdmissibleTuple& tuple,
                           const WeightTable<Rational>& table) {
    const std::size_t k = tuple.size();
    const uint64_t v0 = find_v0(params.W, tuple.h());
    Rational total = 0;
    for (std::size_t i = 0; i < table.size(); ++i) {
        auto d = table.tuple(i);
        for (std::size_t j = 0; j < table.size(); ++j) {
            auto e = table.tuple(j);
            Congruence c{__int128(v0), __int128(params.W), true};
            c = merge(c, 1, 4);
            for (std::size_t a = 0; a < k && c.ok; ++a) {
                const uint64_t L = d[a] / gcd_u64(d[a], e[a]) * e[a];
                c = merge(c, ((-__int128(tuple[a])) % L + L) % L, L);
            }
            if (!c.ok) continue;
            const __int128 cnt = count_in_range(params.N, 2 * __int128(params.N), c.r, c.m);
            if (cnt == 0) continue;
            total += table.lambda(i) * table.lambda(j) * make_rational(int64_t(cnt));
        }
    }
    return total;
}

double s_predicted(SieveSum which, const SieveParams& params, const TestFunctionSpec& spec, std::size_t m,
                   std::size_t l) {
    const std::size_t k = spec.k();
    const double B = b_constant(params).value;
    const double base = std::pow(B, double(k)) * double(params.N) / double(params.W);
    const double ratio = params.log_R / params.log_v;
    auto fv = [&](FunctionalKind kind) {
        double v = functional_value(spec, kind, FunctionalMethod::closed_form, m, l).value;
        require(v != 0.0, "sieve functional vanishes; prediction undefined");
        return v;
    };
    switch (which) {
        case SieveSum::S1: return base * fv(FunctionalKind::L) / 4.0;
        case SieveSum::S2: return 4 * std::sqrt(ratio) * base * fv(FunctionalKind::L_m) / kPi;
        case SieveSum::S3: return 64 * ratio * base * fv(FunctionalKind::L_ml) / (kPi * kPi);
        case SieveSum::S4:
            return 2 * std::sqrt(ratio) * (std::log(double(params.N)) / params.log_v + 1) * base *
                   fv(FunctionalKind::L_m) / kPi;
    }
    throw InternalError("unhandled sieve sum");
}

CorrelationReport tech_sum_check(uint64_t R, uint64_t D0, const PrimeDoubleRule& f, const RealRule& G,
                                 const std::string& label) {
    Stopwatch sw;
    require(R >= 2, "R must be >= 2");
    const WSplit w = w_modulus(D0);
    const double log_R = std::log(double(R));
    double direct = 0.0;
    for (uint64_t d : enumerate_support(R, w.W)) {
        double fd = 1.0;
        for (uint64_t p : trial_factorize(d).primes()) fd *= f(p);
        direct += fd * G(d == 1 ? 0.0 : std::log(double(d)) / log_R);
    }
    auto integral = integrate_inv_sqrt(G, 1.0, 1e-11);
    const double pred = b_constant(w.W3, log_R) * integral.value;
    return make_report(label, direct, pred, json{{"R", R}, {"D0", D0}, {"W", w.W}}, sw.elapsed_ms());
}

CGammaResult c_gamma_check(uint64_t D0, const PrimeDoubleRule& alpha, uint64_t prime_bound) {
    require(prime_bound >= 3, "prime bound must be >= 3");
    const WSplit w = w_modulus(D0);
    double log_plain = 0.0, log_acc = 0.0, log_corr = 0.0;
    for (uint32_t p : primes_up_to(prime_bound)) {
        const double P = p;
        double gamma = 0.0;
        if (p % 4 == 3 && w.W % p != 0) {
            const double a = alpha(p);
            gamma = 1.0 + a;
            log_corr -= std::log1p(-a / (P - 1));
        }
        require(gamma < P, "gamma(p) must be < p");
        const double lf = -std::log1p(-gamma / P) + 0.5 * std::log1p(-1.0 / P);
        log_plain += lf;
        log_acc += lf - 0.5 * std::log1p(-double(chi4(p)) / P);
    }
    const double L1 = special_constants().L1_chi4.value;
    CGammaResult r;
    r.prime_bound = prime_bound;
    r.truncated = std::exp(log_plain);
    r.accelerated = std::exp(log_acc) / std::sqrt(L1);
    r.closed_form = special_constants().A.value / std::sqrt(L1) * double(euler_phi(trial_factorize(w.W3))) /
                    double(w.W3);
    r.alpha_correction = std::exp(log_corr);
    r.rel_gap = relative_error(r.accelerated, r.closed_form);
    r.slack = D0 > 0 ? 1.0 / double(D0) : 1.0;
    return r;
}

Rational sJ_direct(const WeightTable<Rational>& table, const std::vector<std::size_t>& J, uint64_t p1, uint64_t p2,
                   std::size_t m, const PrimeRule& f, const PrimeRule& g, double max_pairs) {
    const std::size_t k = table.k();
    require(J.size() <= 2, "|J| must be at most 2");
    for (std::size_t j : J) require(j < k, "J index out of range");
    require(m < k, "m out of range");
    const double pairs = double(table.size()) * double(table.size());
    if (pairs > max_pairs) throw ResourceGuardError("sJ_direct pair enumeration refused", pairs);
    std::vector<bool> inJ(k, false);
    for (std::size_t j : J) inJ[j] = true;
    Rational total = 0;
    std::vector<uint64_t> lcms(k);
    for (std::size_t i = 0; i < table.size(); ++i) {
        auto d = table.tuple(i);
        if (d[m] % p1 != 0) continue;
        for (std::size_t j = 0; j < table.size(); ++j) {
            auto e = table.tuple(j);
            if (e[m] % p2 != 0) continue;
            bool coprime = true;
            for (std::size_t a = 0; a < k && coprime; ++a) {
                lcms[a] = d[a] / gcd_u64(d[a], e[a]) * e[a];
                if (gcd_u64(lcms[a], table.W()) != 1) coprime = false;
                for (std::size_t b = 0; b < a && coprime; ++b)
                    if (gcd_u64(lcms[a], lcms[b]) != 1) coprime = false;
            }
            if (!coprime) continue;
            Rational term = table.lambda(i) * table.lambda(j);
            for (std::size_t a = 0; a < k; ++a)
                term *= evaluate_squarefree(inJ[a] ? g : f, trial_factorize(lcms[a]));
            total += term;
        }
    }
    return total;
}

double sJ_predicted(const SieveParams& params, const TestFunctionSpec& spec, const std::vector<std::size_t>& J) {
    require(J.size() <= 2, "|J| must be at most 2");
    const double B = b_constant(params).value;
    FunctionalKind kind = J.empty() ? FunctionalKind::L : (J.size() == 1 ? FunctionalKind::L_m : FunctionalKind::L_ml);
    const std::size_t m = J.empty() ? 0 : J[0];
    const std::size_t l = J.size() == 2 ? J[1] : (m == 0 ? 1 : 0);
    const double L = functional_value(spec, kind, FunctionalMethod::closed_form, m, l).value;
    return std::pow(B, double(spec.k() + J.size())) * L;
}

}  // namespace twosq
