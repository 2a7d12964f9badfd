#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>

#include "twosq/weights.hpp"

namespace twosq {

enum class FunctionalKind { L, L_m, L_ml };
enum class FunctionalMethod { closed_form, quadrature };

const char* to_string(FunctionalKind k);
const char* to_string(FunctionalMethod m);

struct FunctionalValue {
    double value = 0.0;
    FunctionalMethod method = FunctionalMethod::closed_form;
    double tolerance = 0.0;
};

// 1-D integrals over the support [0, beta/k] of one coordinate:
// I2 = int g(kx)^2 dx/sqrt x, I1 = int g(kx) dx/sqrt x.
struct CoordinateIntegrals {
    double I1, I2;
};

CoordinateIntegrals coordinate_integrals_closed(std::size_t bin_size, double beta);
CoordinateIntegrals coordinate_integrals_quadrature(std::size_t bin_size, double beta, double abs_tol = 1e-9);

// L_k, L_{k;m}, L_{k;m,l} for the product-form F; m, l are 0-based coordinates.
FunctionalValue functional_value(const TestFunctionSpec& spec, FunctionalKind kind, FunctionalMethod method,
                                 std::size_t m = 0, std::size_t l = 1);

// Ratio forms for a single bin of size k: L_m/L = pi^2/(pi+2) sqrt(beta/k), L_ml/L = its square.
double ratio_m_closed(std::size_t k, double beta);
double ratio_ml_closed(std::size_t k, double beta);

// Tensor Gauss-Legendre evaluation of the defining k-dimensional integrals without using
// the product structure of F; feasible for k <= 4.
double functional_direct(const TestFunctionSpec& spec, FunctionalKind kind, std::size_t m = 0,
                         std::size_t l = 1, int nodes = 24);

// Per-bin factorization: L_k(F) = prod_i L_{|B_i|}(F_i) and the analogous forms with m, l.
double functional_factorized(const TestFunctionSpec& spec, FunctionalKind kind, std::size_t m = 0,
                             std::size_t l = 1);

}  // namespace twosq
