#include "twosq/functionals.hpp"

#include <cmath>
#include <numbers>

#include "twosq/errors.hpp"
#include "twosq/quadrature.hpp"

namespace twosq {

namespace {

constexpr double kPi = std::numbers::pi;

void check_coords(const TestFunctionSpec& spec, FunctionalKind kind, std::size_t m, std::size_t l) {
    if (kind == FunctionalKind::L) return;
    require(m < spec.k(), "functional: m out of range");
    if (kind == FunctionalKind::L_ml) {
        require(l < spec.k(), "functional: l out of range");
        require(m != l, "functional: m and l must differ");
    }
}

}  // namespace

const char* to_string(FunctionalKind k) {
    switch (k) {
        case FunctionalKind::L: return "L";
        case FunctionalKind::L_m: return "L_m";
        case FunctionalKind::L_ml: return "L_ml";
    }
    return "?";
}

const char* to_string(FunctionalMethod m) {
    return m == FunctionalMethod::closed_form ? "closed_form" : "quadrature";
}

CoordinateIntegrals coordinate_integrals_closed(std::size_t bin_size, double beta) {
    const double s = std::sqrt(beta / double(bin_size));
    return {kPi / 2 * s, (kPi + 2) / 4 * s};
}

CoordinateIntegrals coordinate_integrals_quadrature(std::size_t bin_size, double beta, double abs_tol) {
    const double k = double(bin_size);
    auto g = [=](double t) { return 1.0 / (1.0 + k * t / beta); };
    const double cap = beta / k;
    auto i1 = integrate_inv_sqrt(g, cap, abs_tol);
    auto i2 = integrate_inv_sqrt([&](double t) { double v = g(t); return v * v; }, cap, abs_tol);
    if (!i1.converged || !i2.converged)
        throw InternalError("quadrature did not reach tolerance; achieved " +
                            std::to_string(std::max(i1.error_estimate, i2.error_estimate)));
    return {i1.value, i2.value};
}

double ratio_m_closed(std::size_t k, double beta) {
    return kPi * kPi / (kPi + 2) * std::sqrt(beta / double(k));
}

double ratio_ml_closed(std::size_t k, double beta) {
    const double r = kPi * kPi / (kPi + 2);
    return r * r * beta / double(k);
}

FunctionalValue functional_value(const TestFunctionSpec& spec, FunctionalKind kind, FunctionalMethod method,
                                 std::size_t m, std::size_t l) {
    check_coords(spec, kind, m, l);
    FunctionalValue out;
    out.method = method;
    const auto& bins = spec.bins();
    if (method == FunctionalMethod::closed_form) {
        double L = 1.0;
        for (const Bin& b : bins) L *= std::pow(coordinate_integrals_closed(b.size, b.beta).I2, double(b.size));
        auto rm = [&](std::size_t c) {
            const Bin& b = bins[spec.bin_of(c)];
            return ratio_m_closed(b.size, b.beta);
        };
        if (kind == FunctionalKind::L) out.value = L;
        else if (kind == FunctionalKind::L_m) out.value = L * rm(m);
        else if (spec.bin_of(m) == spec.bin_of(l)) {
            const Bin& b = bins[spec.bin_of(m)];
            out.value = L * ratio_ml_closed(b.size, b.beta);
        } else {
            out.value = L * rm(m) * rm(l);
        }
        return out;
    }
    const double tol = 1e-9;
    out.tolerance = tol;
    std::vector<CoordinateIntegrals> per;
    for (const Bin& b : bins) per.push_back(coordinate_integrals_quadrature(b.size, b.beta, tol));
    double v = 1.0;
    for (std::size_t j = 0; j < spec.k(); ++j) {
        const auto& ci = per[spec.bin_of(j)];
        const bool special = (kind != FunctionalKind::L && j == m) || (kind == FunctionalKind::L_ml && j == l);
        v *= special ? ci.I1 * ci.I1 : ci.I2;
    }
    out.value = v;
    return out;
}

double functional_direct(const TestFunctionSpec& spec, FunctionalKind kind, std::size_t m, std::size_t l,
                         int nodes) {
    check_coords(spec, kind, m, l);
    const std::size_t k = spec.k();
    require(k <= 4, "direct functional assembly limited to k <= 4");
    const GaussRule rule = gauss_legendre(nodes);
    std::vector<double> x(k, 0.0);
    std::vector<std::size_t> inner, outer;
    for (std::size_t j = 0; j < k; ++j) {
        const bool in = (kind != FunctionalKind::L && j == m) || (kind == FunctionalKind::L_ml && j == l);
        (in ? inner : outer).push_back(j);
    }
    // int over dims of f, with x_j = u^2 and dx/sqrt x = 2 du on u in [0, sqrt(cap_j)]
    auto integrate = [&](auto&& self, const std::vector<std::size_t>& dims, std::size_t pos,
                         const std::function<double()>& f) -> double {
        if (pos == dims.size()) return f();
        const std::size_t j = dims[pos];
        const double half = 0.5 * std::sqrt(spec.coordinate_cap(j));
        double s = 0.0;
        for (int i = 0; i < nodes; ++i) {
            const double u = half * (rule.nodes[i] + 1.0);
            x[j] = u * u;
            s += rule.weights[i] * half * 2.0 * self(self, dims, pos + 1, f);
        }
        return s;
    };
    if (kind == FunctionalKind::L) {
        return integrate(integrate, outer, 0, [&] { double F = spec.F(x); return F * F; });
    }
    return integrate(integrate, outer, 0, [&] {
        double in = integrate(integrate, inner, 0, [&] { return spec.F(x); });
        return in * in;
    });
}

double functional_factorized(const TestFunctionSpec& spec, FunctionalKind kind, std::size_t m, std::size_t l) {
    check_coords(spec, kind, m, l);
    // each bin is its own single-bin spec; L_k(F) is the product of the bin functionals
    double L = 1.0;
    std::vector<double> per_bin;
    std::size_t offset = 0;
    double ratio = 1.0;
    for (std::size_t i = 0; i < spec.bins().size(); ++i) {
        const Bin& b = spec.bins()[i];
        TestFunctionSpec sub = TestFunctionSpec::single(b.size, b.beta);
        const double Li = functional_value(sub, FunctionalKind::L, FunctionalMethod::quadrature).value;
        L *= Li;
        const bool has_m = kind != FunctionalKind::L && m >= offset && m < offset + b.size;
        const bool has_l = kind == FunctionalKind::L_ml && l >= offset && l < offset + b.size;
        if (has_m && has_l)
            ratio *= functional_value(sub, FunctionalKind::L_ml, FunctionalMethod::quadrature, m - offset, l - offset).value / Li;
        else if (has_m)
            ratio *= functional_value(sub, FunctionalKind::L_m, FunctionalMethod::quadrature, m - offset).value / Li;
        else if (has_l)
            ratio *= functional_value(sub, FunctionalKind::L_m, FunctionalMethod::quadrature, l - offset).value / Li;
        offset += b.size;
    }
    return L * ratio;
}

}  // namespace twosq
