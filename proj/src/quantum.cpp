#include "twosq/quantum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "twosq/errors.hpp"
#include "twosq/primes.hpp"

namespace twosq {

namespace {

void shell_rec(uint64_t rest, int left, Point& cur, std::vector<Point>& out) {
    if (left == 1) {
        if (!is_perfect_square(rest)) return;
        const int64_t x = int64_t(isqrt_u64(rest));
        cur.push_back(-x);
        out.push_back(cur);
        cur.pop_back();
        if (x != 0) {
            cur.push_back(x);
            out.push_back(cur);
            cur.pop_back();
        }
        return;
    }
    const int64_t s = int64_t(isqrt_u64(rest));
    for (int64_t x = -s; x <= s; ++x) {
        cur.push_back(x);
        shell_rec(rest - uint64_t(x * x), left - 1, cur, out);
        cur.pop_back();
    }
}

Rational pow2_ratio(int k) {
    // 2^k / (2^k - 1)
    mpz_class p = 1;
    p <<= k;
    return Rational(p, p - 1);
}

std::optional<Rational> exact_sqrt(const Rational& q) {
    const mpz_class& num = q.get_num();
    const mpz_class& den = q.get_den();
    if (num < 0 || !mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    mpz_class a, b;
    mpz_sqrt(a.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(b.get_mpz_t(), den.get_mpz_t());
    return Rational(a, b);
}

struct Accumulator {
    double value = 0.0;
    Rational exact = 0;
    bool is_exact = true;

    void add(const Rational& wa, const Rational& wb) {
        if (auto r = exact_sqrt(Rational(wa * wb))) {
            exact += *r;
            value += to_double(*r);
        } else {
            is_exact = false;
            value += std::sqrt(to_double(wa) * to_double(wb));
        }
    }

    FourierCoefficient finish(Point tau) const {
        FourierCoefficient c;
        c.tau = std::move(tau);
        c.value = is_exact ? to_double(exact) : value;
        if (is_exact) c.exact = exact;
        return c;
    }
};

double norm2(const Point& p) {
    double s = 0.0;
    for (int64_t x : p) s += double(x) * double(x);
    return s;
}

void check_pairs(const CoefficientFamily& f, const QuantumGuard& guard) {
    const double pairs = double(f.points.size()) * double(f.points.size());
    if (pairs > guard.max_pairs)
        throw ResourceGuardError("pair enumeration over " + std::to_string(f.points.size()) + " points refused",
                                 pairs);
}

}  // namespace

SphereShell enumerate_shell(uint64_t n, int d, const BruteforceGuard& guard) {
    require(d >= 1, "dimension must be >= 1");
    const double cost = std::pow(2.0 * std::sqrt(double(n)) + 1.0, d - 1);
    if (d > guard.max_dimension || n > guard.max_n || cost > guard.max_cost)
        throw ResourceGuardError("shell enumeration refused: n=" + std::to_string(n) + " d=" + std::to_string(d),
                                 cost);
    SphereShell s{n, d, {}};
    Point cur;
    shell_rec(n, d, cur, s.points);
    return s;
}

std::vector<std::pair<uint64_t, uint64_t>> decompose_Mk(uint64_t M, const std::vector<uint64_t>& a_list) {
    std::vector<std::pair<uint64_t, uint64_t>> out;
    for (std::size_t j = 0; j < a_list.size(); ++j) {
        const uint64_t a = a_list[j];
        require(a <= isqrt_u64(M), "M - a_" + std::to_string(j + 1) + "^2 is negative");
        const uint64_t m = M - a * a;
        uint64_t b = isqrt_u64(m / 2);
        while (2 * b * b < m) ++b;
        bool found = false;
        for (; b * b <= m; ++b) {
            const uint64_t rest = m - b * b;
            if (is_perfect_square(rest)) {
                out.emplace_back(b, isqrt_u64(rest));
                found = true;
                break;
            }
        }
        require(found, "M - a_" + std::to_string(j + 1) + "^2 = " + std::to_string(m) + " is not a sum of two squares");
    }
    return out;
}

FamilyRule parse_family_rule(const std::string& name) {
    if (name == "main") return FamilyRule::main;
    if (name == "ql_i") return FamilyRule::ql_i;
    if (name == "ql_ii") return FamilyRule::ql_ii;
    throw ValidationError("unknown family rule '" + name + "' (main, ql_i, ql_ii)");
}

std::string family_rule_name(FamilyRule rule) {
    switch (rule) {
        case FamilyRule::main: return "main";
        case FamilyRule::ql_i: return "ql_i";
        case FamilyRule::ql_ii: return "ql_ii";
    }
    return "?";
}

CoefficientFamily build_family(const FamilyInputs& in, int k, const QuantumGuard& guard) {
    require(k >= 1, "k must be >= 1");
    require(k <= 60, "k must be <= 60");
    require(in.a.size() >= std::size_t(k), "need at least k values a_j");
    require(!in.M.empty(), "M is required");
    require(in.M.size() == 1 || in.M.size() >= std::size_t(k), "need one M per stage or a single M");
    require(in.pad >= 0, "pad must be >= 0");
    const std::vector<uint64_t> a(in.a.begin(), in.a.begin() + k);
    {
        std::set<uint64_t> seen(a.begin(), a.end());
        require(seen.size() == a.size(), "a_j must be distinct");
        require(*seen.begin() >= 1, "a_j must be >= 1");
    }
    int base = in.d;
    switch (in.rule) {
        case FamilyRule::main:
            if (base == 0) base = 3;
            require(base == 3, "main rule lives in dimension 3 (use pad for more)");
            break;
        case FamilyRule::ql_i:
            if (base == 0) base = 4;
            require(base == 4, "ql_i rule lives in dimension 4 (use pad for more)");
            break;
        case FamilyRule::ql_ii:
            require(base >= 5, "ql_ii rule needs d >= 5");
            break;
    }

    CoefficientFamily f;
    f.rule = in.rule;
    f.k = k;
    f.dim = base + in.pad;
    f.M = in.M.size() == 1 ? in.M[0] : in.M[std::size_t(k - 1)];
    f.bc = decompose_Mk(f.M, a);
    const Rational pre = pow2_ratio(k);

    for (int j = 1; j <= k; ++j) {
        const uint64_t aj = a[std::size_t(j - 1)];
        const auto [b, c] = f.bc[std::size_t(j - 1)];
        std::vector<Point> head;
        if (in.rule == FamilyRule::main) {
            head = {{int64_t(aj)}, {-int64_t(aj)}};
        } else {
            head = enumerate_shell(aj * aj, base - 2).points;
            require(!head.empty(), "a_" + std::to_string(j) + "^2 has no representation in dimension " +
                                       std::to_string(base - 2));
        }
        mpz_class denom = 1;
        denom <<= (in.rule == FamilyRule::main ? j + 1 : j);
        if (in.rule != FamilyRule::main) denom *= mpz_class(std::to_string(head.size()));
        const Rational w = pre / Rational(denom);
        if (f.points.size() + head.size() > guard.max_points)
            throw ResourceGuardError("family support exceeds point guard", double(f.points.size() + head.size()));
        for (auto& h : head) {
            Point p = h;
            p.push_back(int64_t(b));
            p.push_back(int64_t(c));
            p.resize(std::size_t(f.dim), 0);
            f.points.push_back(std::move(p));
            f.weight.push_back(w);
            f.block.push_back(j);
        }
        f.block_count.push_back(head.size());
    }

    Rational total = 0;
    for (const auto& w : f.weight) total += w;
    ensure(total == 1, "coefficient family is not normalized: sum = " + total.get_str());
    std::set<Point> distinct(f.points.begin(), f.points.end());
    ensure(distinct.size() == f.points.size(), "coefficient family repeats a frequency");
    for (const auto& p : f.points) ensure(uint64_t(norm2(p)) == f.M, "frequency off the shell");
    return f;
}

FourierCoefficient b_tau(const CoefficientFamily& family, const Point& tau) {
    require(tau.size() == std::size_t(family.dim), "tau has the wrong dimension");
    std::map<Point, std::size_t> index;
    for (std::size_t i = 0; i < family.points.size(); ++i) index.emplace(family.points[i], i);
    Accumulator acc;
    Point eta(tau.size());
    for (std::size_t i = 0; i < family.points.size(); ++i) {
        for (std::size_t t = 0; t < tau.size(); ++t) eta[t] = family.points[i][t] - tau[t];
        auto it = index.find(eta);
        if (it != index.end()) acc.add(family.weight[i], family.weight[it->second]);
    }
    return acc.finish(tau);
}

std::map<Point, FourierCoefficient> all_b_tau(const CoefficientFamily& family, const QuantumGuard& guard) {
    check_pairs(family, guard);
    std::map<Point, Accumulator> acc;
    Point tau(std::size_t(family.dim));
    for (std::size_t i = 0; i < family.points.size(); ++i)
        for (std::size_t j = 0; j < family.points.size(); ++j) {
            for (std::size_t t = 0; t < tau.size(); ++t) tau[t] = family.points[i][t] - family.points[j][t];
            acc[tau].add(family.weight[i], family.weight[j]);
        }
    std::map<Point, FourierCoefficient> out;
    for (const auto& [t, a] : acc) out.emplace(t, a.finish(t));
    return out;
}

LimitEstimate ctau_limit(const FamilyInputs& in, const Point& tau, int k_max, const QuantumGuard& guard) {
    require(k_max >= 2, "k_max must be >= 2");
    const auto last = b_tau(build_family(in, k_max, guard), tau);
    const auto prev = b_tau(build_family(in, k_max - 1, guard), tau);
    return {last.value, std::abs(last.value - prev.value), last.exact};
}

double lp_partial_sum(const CoefficientFamily& family, double epsilon, double radius, const QuantumGuard& guard) {
    require(epsilon >= 0 && epsilon < 2, "epsilon must lie in [0, 2)");
    double s = 0.0;
    for (const auto& [t, c] : all_b_tau(family, guard))
        if (norm2(t) <= radius * radius) s += std::pow(std::abs(c.value), 2 - epsilon);
    return s;
}

double sigma_rho(const CoefficientFamily& family, double rho, const QuantumGuard& guard) {
    double s = 0.0;
    for (const auto& [t, c] : all_b_tau(family, guard))
        if (norm2(t) < rho * rho) s += std::abs(c.value);
    return s;
}

std::vector<LowerBoundCheck> lower_bound_checks(const CoefficientFamily& family, double epsilon,
                                                const QuantumGuard& guard) {
    require(family.rule != FamilyRule::main, "lower bounds apply to ql_i and ql_ii families");
    require(epsilon > 0 && epsilon <= 1, "epsilon must lie in (0, 1]");
    const auto table = all_b_tau(family, guard);
    const double pre = std::ldexp(1.0, family.k) / (std::ldexp(1.0, family.k) - 1);
    std::vector<LowerBoundCheck> out;
    for (int i = 1; i <= family.k; ++i) {
        const auto [b, c2] = family.bc[std::size_t(i - 1)];
        const double a2 = double(family.M - b * b - c2 * c2);
        const double radius = 2 * std::sqrt(a2);
        const double r = double(family.block_count[std::size_t(i - 1)]);
        LowerBoundCheck c;
        c.i = i;
        double s = 0.0;
        const double expo = family.rule == FamilyRule::ql_i ? 2 - epsilon : 1.0;
        for (const auto& [t, coef] : table)
            if (norm2(t) <= radius * radius * (1 + 1e-12)) s += std::pow(std::abs(coef.value), expo);
        c.computed = s;
        c.bound = family.rule == FamilyRule::ql_i
                      ? std::pow(pre, 2 - epsilon) * std::pow(std::ldexp(r, i), epsilon) / std::ldexp(1.0, 2 * i)
                      : pre * r / std::ldexp(1.0, i);
        c.holds = c.computed >= c.bound * (1 - 1e-12);
        out.push_back(c);
    }
    return out;
}

PrefixClauses prefix_clauses(const std::vector<uint64_t>& a) {
    PrefixClauses pc;
    for (std::size_t j = 0; j < a.size(); ++j) {
        require(a[j] >= 1, "a_j must be >= 1");
        pc.r_a.push_back(r2(trial_factorize(a[j])));
        Factorization f = trial_factorize(a[j]);
        for (auto& pp : f.factors) pp.exponent *= 2;
        pc.r_a_squared.push_back(r2(f));
        if (pc.r_a_squared.back() < pc.r_a.back()) pc.r_square_dominates = false;
        if (j > 0 && !(pc.r_a[j - 1] < pc.r_a[j])) pc.r2_increasing = false;
        pc.max_even_exponent = std::max(pc.max_even_exponent, std::countr_zero(a[j]));
    }
    return pc;
}

std::string point_key(const Point& p) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(p[i]);
    }
    return s;
}

std::vector<std::string> family_csv(const CoefficientFamily& family) {
    std::vector<std::string> rows;
    for (std::size_t i = 0; i < family.points.size(); ++i)
        rows.push_back(std::to_string(family.block[i]) + "," + point_key(family.points[i]) + "," +
                       family.weight[i].get_num().get_str() + "," + family.weight[i].get_den().get_str());
    return rows;
}

json btau_json(const std::map<Point, FourierCoefficient>& table) {
    json j = json::object();
    for (const auto& [t, c] : table) {
        json e = {{"value", c.value}};
        if (c.exact) e["exact"] = c.exact->get_str();
        j[point_key(t)] = e;
    }
    return j;
}

}  // namespace twosq
