#pragma once

#include <cstdint>

#include "twosq/arith.hpp"

namespace twosq {

struct RhoParams {
    uint64_t N = 0;
    double theta1 = 0.0;
    uint64_t v = 0;
    double log_v = 0.0;
};

// floor(x^theta) with a relative nudge so exact integer powers are not lost to rounding.
uint64_t floor_power(uint64_t x, double theta);

RhoParams make_rho_params(uint64_t N, double theta1);
RhoParams rho_params_from_v(uint64_t v);

// sum over squarefree a | n, a <= v, p | a => p = 1 mod 4, of mu(a)/g2(a) (1 - log a / log v)
double t_weight(const RhoParams& params, const Factorization& f);
double rho(const RhoParams& params, const Factorization& f);

}  // namespace twosq
