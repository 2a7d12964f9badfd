#pragma once

#include <cstdint>
#include <string>

namespace twosq {

struct ConstantEstimate {
    double value = 0.0;
    double error_bound = 0.0;        // bound on |value - true value|
    uint64_t truncation_point = 0;   // prime bound or series length; 0 when exact
    std::string method;
};

// (1/sqrt 2) prod_{p = 3 mod 4, p <= prime_bound} (1 - p^-2)^{-1/2}
ConstantEstimate landau_ramanujan_A(uint64_t prime_bound);

struct SpecialConstants {
    ConstantEstimate L1_chi4;          // L(1, chi4) = pi/4
    ConstantEstimate euler_gamma;
    ConstantEstimate zeta_prime_ratio_2;  // zeta'(2)/zeta(2)
    ConstantEstimate L_prime_ratio_1;     // L'(1,chi4)/L(1,chi4)
    ConstantEstimate A2;               // 2g - 1 + 2L'/L - 2 zeta'/zeta + (4/3) log 2
    ConstantEstimate A;                // Landau-Ramanujan at the default bound
};

// Computed once and cached.
const SpecialConstants& special_constants();

double assemble_A2(double gamma, double L_ratio, double zeta_ratio);

// Series evaluations behind special_constants, exposed for diagnostics.
double euler_gamma_em(int n, int terms);
double zeta_prime_2_em(int n, int terms);
double L_prime_1_em(int n, int terms);
double L1_chi4_series(int n, int terms);

inline constexpr uint64_t kDefaultPrimeBound = 1'000'000;

}  // namespace twosq
