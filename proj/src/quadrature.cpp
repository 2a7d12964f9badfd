#include "twosq/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "twosq/errors.hpp"

namespace twosq {

namespace {

struct SimpsonState {
    const std::function<double(double)>& f;
    std::size_t panels;
    std::size_t max_panels;
    bool converged;
    double err;
};

double simpson_step(SimpsonState& st, double a, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = st.f(lm), frm = st.f(rm);
    const double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15 * tol || depth > 60 || st.panels + 1 >= st.max_panels) {
        if (std::abs(delta) > 15 * tol) st.converged = false;
        st.err += std::abs(delta) / 15;
        ++st.panels;
        return left + right + delta / 15;
    }
    ++st.panels;
    return simpson_step(st, a, m, fa, flm, fm, left, tol / 2, depth + 1) +
           simpson_step(st, m, b, fm, frm, fb, right, tol / 2, depth + 1);
}

}  // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol, std::size_t max_panels) {
    require(abs_tol > 0, "quadrature tolerance must be positive");
    QuadratureResult out;
    if (a == b) return out;
    SimpsonState st{f, 1, max_panels, true, 0.0};
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
    out.value = simpson_step(st, a, b, fa, fm, fb, whole, abs_tol, 0);
    out.panels = st.panels;
    out.converged = st.converged;
    out.error_estimate = st.err;
    return out;
}

QuadratureResult integrate_inv_sqrt(const std::function<double(double)>& f, double c,
                                    double abs_tol, std::size_t max_panels) {
    require(c >= 0, "integration bound must be nonnegative");
    auto g = [&](double u) { return 2.0 * f(u * u); };
    return adaptive_simpson(g, 0.0, std::sqrt(c), abs_tol, max_panels);
}

GaussRule gauss_legendre(int n) {
    require(n >= 1, "Gauss-Legendre order must be >= 1");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1 - x * x) * dp * dp);
    }
    return rule;
}

}  // namespace twosq
