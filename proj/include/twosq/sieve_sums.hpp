#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "twosq/arith.hpp"
#include "twosq/constants.hpp"
#include "twosq/functionals.hpp"
#include "twosq/hooley.hpp"
#include "twosq/report.hpp"
#include "twosq/sieve_params.hpp"
#include "twosq/weights.hpp"

namespace twosq {

enum class SieveSum { S1, S2, S3, S4 };
const char* to_string(SieveSum s);

struct SieveSumResult {
    double value = 0.0;
    std::size_t terms = 0;          // n visited
    std::size_t negative_rho = 0;   // n + h with rho < 0 among visited slots
};

// Visits n in [N, 2N), n = v0 (mod W), n = 1 (mod 4), calling visit(n, sum of lambda over divisor tuples).
template <class Scalar>
void for_each_sieve_n(const SieveParams& params, const AdmissibleTuple& tuple, const WeightTable<Scalar>& table,
                      const FactorTable& factors,
                      const std::function<void(uint64_t, const Scalar&)>& visit);

SieveSumResult s_direct(SieveSum which, const SieveParams& params, const AdmissibleTuple& tuple,
                        const WeightTable<double>& table, const FactorTable& factors, std::size_t m = 0,
                        std::size_t l = 1);

// S1 in exact arithmetic, two independent ways: per-n squares, and the lambda_d lambda_e
// expansion with exact progression counts.
Rational s1_direct_exact(const SieveParams& params, const AdmissibleTuple& tuple,
                         const WeightTable<Rational>& table, const FactorTable& factors);
Rational s1_pair_expansion(const SieveParams& params, const AdmissibleTuple& tuple,
                           const WeightTable<Rational>& table);

double s_predicted(SieveSum which, const SieveParams& params, const TestFunctionSpec& spec, std::size_t m = 0,
                   std::size_t l = 1);

using RealRule = std::function<double(double)>;
using PrimeDoubleRule = std::function<double(uint64_t)>;

// sum_{d <= R in support} mu^2(d) f(d) G(log d / log R) against B int_0^1 G(x) dx/sqrt x
CorrelationReport tech_sum_check(uint64_t R, uint64_t D0, const PrimeDoubleRule& f, const RealRule& G,
                                 const std::string& label = "tech_sum");

struct CGammaResult {
    double truncated = 0.0;      // plain Euler product to the bound
    double accelerated = 0.0;    // each factor times (1 - chi(p)/p)^{-1/2}, completed by L(1)^{-1/2}
    double closed_form = 0.0;    // A / sqrt(L(1)) * phi(W3)/W3
    double alpha_correction = 0.0;  // prod_{p !| W, p = 3 mod 4} (1 - alpha(p)/(p-1))^{-1}
    double rel_gap = 0.0;        // |accelerated - closed_form| / closed_form
    uint64_t prime_bound = 0;
    double slack = 0.0;          // 1/D0
};

// gamma(p) = 1 + alpha(p) for p !| W, p = 3 mod 4, and 0 otherwise.
CGammaResult c_gamma_check(uint64_t D0, const PrimeDoubleRule& alpha, uint64_t prime_bound = kDefaultPrimeBound);

// Lemma-style double sum over (d, e) tuple pairs with W, [d_i, e_i] pairwise coprime,
// p1 | d_m, p2 | e_m; f on coordinates outside J, g on J. Exact.
Rational sJ_direct(const WeightTable<Rational>& table, const std::vector<std::size_t>& J, uint64_t p1, uint64_t p2,
                   std::size_t m, const PrimeRule& f, const PrimeRule& g, double max_pairs = 5e7);

// B^{k+|J|} L_J(F)
double sJ_predicted(const SieveParams& params, const TestFunctionSpec& spec, const std::vector<std::size_t>& J);

}  // namespace twosq
