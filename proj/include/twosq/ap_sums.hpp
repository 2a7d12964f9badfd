#pragma once

#include <cstdint>

#include "twosq/arith.hpp"
#include "twosq/constants.hpp"
#include "twosq/report.hpp"

namespace twosq {

struct APQuery {
    uint64_t N = 0;
    uint64_t q = 1;
    uint64_t a = 1;
    uint64_t d = 1;
    uint64_t d1 = 1;
    uint64_t d2 = 1;
    uint64_t h = 4;
};

enum class APSum { r, rr, r2 };

const char* to_string(APSum kind);

// Throws ValidationError naming the violated hypothesis.
void validate(const APQuery& q, APSum kind);

uint64_t empirical_sum_r(const FactorTable& table, const APQuery& q);
double predicted_sum_r(const APQuery& q);

ConstantEstimate gamma_singular_series(uint64_t d1, uint64_t d2, uint64_t q,
                                       uint64_t prime_bound = kDefaultPrimeBound);

uint64_t empirical_sum_rr(const FactorTable& table, const APQuery& q);
double predicted_sum_rr(const APQuery& q, uint64_t prime_bound = kDefaultPrimeBound);

uint64_t empirical_sum_r2(const FactorTable& table, const APQuery& q);
double predicted_sum_r2(const APQuery& q);
// Bracket log N + A2 + 2 sum_{p|q} g5 - 2 sum_{p|d} g6, exposed for diagnostics.
double r2_bracket(const APQuery& q);

CorrelationReport correlate(const FactorTable& table, const APQuery& q, APSum kind);

}  // namespace twosq
