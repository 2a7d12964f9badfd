#include "twosq/constants.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "twosq/errors.hpp"
#include "twosq/primes.hpp"

namespace twosq {

namespace {

constexpr std::array<double, 8> kBernoulli = {1.0 / 6,     -1.0 / 30, 1.0 / 42,        -1.0 / 30,
                                              5.0 / 66,    -691.0 / 2730, 7.0 / 6, -3617.0 / 510};

// x^-a (c0 + c1 log x)
struct PowLog {
    double a, c0, c1;
    double eval(double x) const { return std::pow(x, -a) * (c0 + c1 * std::log(x)); }
    PowLog derivative() const { return {a + 1, -a * c0 + c1, -a * c1}; }
};

double factorial(int n) {
    double f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// sum_{k=1}^{terms} B_2k/(2k)! * f^{(2k-1)}(x)
template <class Deriv>
double em_correction(int terms, Deriv odd_derivative, double* last_term) {
    double s = 0.0;
    double t = 0.0;
    for (int k = 1; k <= terms; ++k) {
        t = kBernoulli[k - 1] / factorial(2 * k) * odd_derivative(2 * k - 1);
        s += t;
    }
    if (last_term) *last_term = std::abs(t);
    return s;
}

}  // namespace

double euler_gamma_em(int n, int terms) {
    double h = 0.0;
    for (int i = n; i >= 1; --i) h += 1.0 / i;
    double s = h - std::log(static_cast<double>(n)) - 1.0 / (2.0 * n);
    for (int k = 1; k <= terms; ++k) s += kBernoulli[k - 1] / (2.0 * k * std::pow(n, 2 * k));
    return s;
}

double zeta_prime_2_em(int n, int terms) {
    // sum_{m>=1} log m / m^2 = head + integral + f(n)/2 - sum B_2k/(2k)! f^{(2k-1)}(n)
    PowLog f{2, 0, 1};
    double head = 0.0;
    for (int m = n - 1; m >= 2; --m) head += std::log(static_cast<double>(m)) / (double(m) * m);
    const double x = n;
    double tail = (std::log(x) + 1.0) / x + f.eval(x) / 2.0;
    tail -= em_correction(terms, [&](int order) {
        PowLog g = f;
        for (int i = 0; i < order; ++i) g = g.derivative();
        return g.eval(x);
    }, nullptr);
    return -(head + tail);
}

double L_prime_1_em(int n, int terms) {
    // sum_{m>=0} h(m), h(x) = g(4x+1) - g(4x+3), g(u) = log u / u
    PowLog g{1, 0, 1};
    auto h = [&](double x) { return g.eval(4 * x + 1) - g.eval(4 * x + 3); };
    double head = 0.0;
    for (int m = n - 1; m >= 0; --m) head += h(m);
    const double x = n;
    const double l1 = std::log(4 * x + 1), l3 = std::log(4 * x + 3);
    double tail = (l3 * l3 - l1 * l1) / 8.0 + h(x) / 2.0;
    tail -= em_correction(terms, [&](int order) {
        PowLog d = g;
        for (int i = 0; i < order; ++i) d = d.derivative();
        return std::pow(4.0, order) * (d.eval(4 * x + 1) - d.eval(4 * x + 3));
    }, nullptr);
    return -(head + tail);
}

double L1_chi4_series(int n, int terms) {
    PowLog g{1, 1, 0};
    auto h = [&](double x) { return g.eval(4 * x + 1) - g.eval(4 * x + 3); };
    double head = 0.0;
    for (int m = n - 1; m >= 0; --m) head += h(m);
    const double x = n;
    double tail = 0.25 * std::log((4 * x + 3) / (4 * x + 1)) + h(x) / 2.0;
    tail -= em_correction(terms, [&](int order) {
        PowLog d = g;
        for (int i = 0; i < order; ++i) d = d.derivative();
        return std::pow(4.0, order) * (d.eval(4 * x + 1) - d.eval(4 * x + 3));
    }, nullptr);
    return head + tail;
}

ConstantEstimate landau_ramanujan_A(uint64_t prime_bound) {
    require(prime_bound >= 3, "landau_ramanujan_A: prime bound must be >= 3");
    if (prime_bound > 2'000'000'000ULL)
        throw ResourceGuardError("landau_ramanujan_A: prime bound too large", double(prime_bound));
    double log_sum = 0.0;
    for (uint32_t p : primes_up_to(prime_bound)) {
        if (p % 4 != 3) continue;
        const double x = 1.0 / (double(p) * double(p));
        log_sum += std::log1p(-x);
    }
    const double value = std::exp(-0.5 * log_sum) / std::numbers::sqrt2;
    const double P = static_cast<double>(prime_bound);
    // sum_{p>P} -log(1-p^-2) <= sum_{n>P} n^-2 / (1-P^-2) < 1/(P (1-P^-2))
    const double tail_log = 0.5 / (P * (1.0 - 1.0 / (P * P)));
    ConstantEstimate est;
    est.value = value;
    est.error_bound = value * std::expm1(tail_log);
    est.truncation_point = prime_bound;
    est.method = "Euler product over p = 3 mod 4 up to the prime bound; tail bounded by sum_{n>P} n^-2";
    return est;
}

double assemble_A2(double gamma, double L_ratio, double zeta_ratio) {
    return 2 * gamma - 1 + 2 * L_ratio - 2 * zeta_ratio + (4.0 / 3.0) * std::numbers::ln2;
}

const SpecialConstants& special_constants() {
    static const SpecialConstants cached = [] {
        SpecialConstants c;
        constexpr int n = 40, terms = 7;
        c.L1_chi4 = {std::numbers::pi / 4, 0.0, 0, "exact: pi/4"};
        c.euler_gamma = {euler_gamma_em(n, terms), 1e-15, n, "Euler-Maclaurin on H_n - log n"};
        const double zeta2 = std::numbers::pi * std::numbers::pi / 6;
        c.zeta_prime_ratio_2 = {zeta_prime_2_em(n, terms) / zeta2, 1e-14, n,
                                "Euler-Maclaurin on sum log m / m^2, divided by pi^2/6"};
        c.L_prime_ratio_1 = {L_prime_1_em(n, terms) / c.L1_chi4.value, 1e-14, n,
                             "Euler-Maclaurin on paired residues 1, 3 mod 4, divided by pi/4"};
        c.A2 = {assemble_A2(c.euler_gamma.value, c.L_prime_ratio_1.value, c.zeta_prime_ratio_2.value),
                1e-13, n, "assembled from gamma, L'/L and zeta'/zeta"};
        c.A = landau_ramanujan_A(kDefaultPrimeBound);
        return c;
    }();
    return cached;
}

}  // namespace twosq
