#include "twosq/sieve_params.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "twosq/arith.hpp"
#include "twosq/errors.hpp"
#include "twosq/hooley.hpp"
#include "twosq/primes.hpp"

namespace twosq {

WSplit w_modulus(uint64_t D0) {
    WSplit w{1, 1, 1};
    for (uint32_t p : primes_up_to(D0)) {
        if (p == 2) continue;
        require(w.W <= (uint64_t(1) << 62) / p, "W overflows 64 bits; lower D0");
        w.W *= p;
        (p % 4 == 1 ? w.W1 : w.W3) *= p;
    }
    return w;
}

SieveParams make_sieve_params(uint64_t N, double theta1, double theta2, uint64_t D0, bool relaxed) {
    require(N >= 2, "N must be >= 2");
    require(theta1 > 0 && theta2 > 0, "theta1, theta2 must be positive");
    if (!relaxed)
        require(theta1 + theta2 < kThetaSumBound, "theta1 + theta2 must be < 1/18 (pass relaxed to override)");
    SieveParams p;
    p.N = N;
    p.theta1 = theta1;
    p.theta2 = theta2;
    p.D0 = D0;
    p.theta_constraint_relaxed = theta1 + theta2 >= kThetaSumBound;
    p.v = floor_power(N, theta1);
    require(p.v >= 2, "v = floor(N^theta1) must be >= 2");
    p.R = std::max<uint64_t>(1, floor_power(N, theta2 / 2));
    p.log_v = std::log(double(p.v));
    p.log_R = std::log(double(p.R));
    WSplit w = w_modulus(D0);
    p.W = w.W;
    p.W1 = w.W1;
    p.W3 = w.W3;
    return p;
}

AdmissibilityReport check_admissible(const std::vector<int64_t>& h) {
    std::set<int64_t> distinct(h.begin(), h.end());
    require(distinct.size() == h.size(), "tuple elements must be distinct");
    AdmissibilityReport rep;
    for (uint32_t p : primes_up_to(h.size())) {
        std::vector<bool> hit(p, false);
        for (int64_t x : h) hit[mod_floor(x, p)] = true;
        auto it = std::find(hit.begin(), hit.end(), false);
        if (it == hit.end()) {
            rep.admissible = false;
            rep.covering_prime = p;
            return rep;
        }
        rep.witnesses.push_back({p, int64_t(it - hit.begin())});
    }
    return rep;
}

AdmissibleTuple::AdmissibleTuple(std::vector<int64_t> h) : h_(std::move(h)) {
    require(!h_.empty(), "tuple must be nonempty");
    for (int64_t x : h_) require(x % 4 == 0, "every shift must be divisible by 4");
    auto rep = check_admissible(h_);
    require(rep.admissible, "tuple is not admissible (covers all residues mod " +
                                std::to_string(rep.covering_prime.value_or(0)) + ")");
}

int64_t AdmissibleTuple::min() const { return *std::min_element(h_.begin(), h_.end()); }
int64_t AdmissibleTuple::max() const { return *std::max_element(h_.begin(), h_.end()); }

uint64_t find_v0(uint64_t W, const std::vector<int64_t>& h) {
    require(W >= 1, "W must be positive");
    for (uint64_t v0 = 0; v0 < W; ++v0) {
        bool ok = true;
        for (int64_t x : h)
            if (gcd_u64(uint64_t(mod_floor(int64_t(v0) + x, int64_t(W))), W) != 1) {
                ok = false;
                break;
            }
        if (ok) return v0;
    }
    throw InternalError("no residue v0 with (v0 + h_i, W) = 1; tuple not admissible for W");
}

std::vector<uint64_t> enumerate_support(uint64_t R, uint64_t W) {
    require(R >= 1, "R must be >= 1");
    std::vector<uint32_t> ps;
    for (uint32_t p : primes_up_to(R))
        if (p % 4 == 3 && W % p != 0) ps.push_back(p);
    std::vector<uint64_t> out;
    std::vector<std::pair<uint64_t, std::size_t>> stack{{1, 0}};
    while (!stack.empty()) {
        auto [n, from] = stack.back();
        stack.pop_back();
        out.push_back(n);
        for (std::size_t i = from; i < ps.size() && n <= R / ps[i]; ++i) stack.push_back({n * ps[i], i + 1});
    }
    std::sort(out.begin(), out.end());
    return out;
}

double b_constant(uint64_t W3, double log_R) {
    const double A = special_constants().A.value;
    const double ratio = double(euler_phi(trial_factorize(W3))) / double(W3);
    return 2 * A / std::numbers::pi * ratio * std::sqrt(log_R);
}

ConstantEstimate b_constant(const SieveParams& p) {
    ConstantEstimate e;
    e.value = b_constant(p.W3, p.log_R);
    e.error_bound = e.value * special_constants().A.error_bound / special_constants().A.value;
    e.truncation_point = special_constants().A.truncation_point;
    e.method = "(2A/pi) phi(W3)/W3 sqrt(log R)";
    return e;
}

}  // namespace twosq
