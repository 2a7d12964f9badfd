#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace twosq {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t panels = 0;
    bool converged = true;
};

// Adaptive Simpson on [a,b] to absolute tolerance; refuses to split past max_panels.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol = 1e-9, std::size_t max_panels = 1'000'000);

// int_0^c f(t)/sqrt(t) dt via t = u^2, i.e. 2 int_0^sqrt(c) f(u^2) du.
QuadratureResult integrate_inv_sqrt(const std::function<double(double)>& f, double c,
                                    double abs_tol = 1e-9, std::size_t max_panels = 1'000'000);

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

GaussRule gauss_legendre(int n);

}  // namespace twosq
