#include "twosq/hooley.hpp"

#include <cmath>
#include <vector>

#include "twosq/errors.hpp"

namespace twosq {

uint64_t floor_power(uint64_t x, double theta) {
    long double p = std::pow(static_cast<long double>(x), static_cast<long double>(theta));
    return static_cast<uint64_t>(std::floor(p * (1.0L + 1e-12L)));
}

RhoParams make_rho_params(uint64_t N, double theta1) {
    require(N >= 1, "N must be positive");
    require(theta1 > 0.0 && theta1 < 1.0, "theta1 must lie in (0, 1)");
    RhoParams p = rho_params_from_v(floor_power(N, theta1));
    p.N = N;
    p.theta1 = theta1;
    return p;
}

RhoParams rho_params_from_v(uint64_t v) {
    require(v >= 2, "v = floor(N^theta1) must be at least 2");
    RhoParams p;
    p.v = v;
    p.log_v = std::log(static_cast<double>(v));
    return p;
}

double t_weight(const RhoParams& params, const Factorization& f) {
    // squarefree divisors built from primes = 1 mod 4, pruned at v
    std::vector<uint64_t> ps;
    for (const auto& pp : f.factors)
        if (pp.prime % 4 == 1 && pp.prime <= params.v) ps.push_back(pp.prime);
    struct Item { uint64_t a; double coeff; };
    std::vector<Item> items{{1, 1.0}};
    for (uint64_t p : ps) {
        const double c = -static_cast<double>(p) / (2.0 * static_cast<double>(p) - 1.0);
        const std::size_t m = items.size();
        for (std::size_t i = 0; i < m; ++i) {
            if (items[i].a > params.v / p) continue;
            items.push_back({items[i].a * p, items[i].coeff * c});
        }
    }
    double t = 0.0;
    for (const auto& it : items)
        t += it.coeff * (1.0 - std::log(static_cast<double>(it.a)) / params.log_v);
    return t;
}

double rho(const RhoParams& params, const Factorization& f) {
    const uint64_t r = r2(f);
    if (r == 0) return 0.0;
    return t_weight(params, f) * static_cast<double>(r);
}

}  // namespace twosq
