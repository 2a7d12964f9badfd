#include "twosq/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace twosq {

double relative_error(double empirical, double predicted) {
    if (predicted == 0.0) return empirical == 0.0 ? 0.0 : INFINITY;
    return std::abs(empirical - predicted) / std::abs(predicted);
}

CorrelationReport make_report(std::string quantity, double empirical, double predicted, json params,
                              double runtime_ms) {
    CorrelationReport r;
    r.quantity = std::move(quantity);
    r.empirical = empirical;
    r.predicted_main = predicted;
    r.rel_error = relative_error(empirical, predicted);
    r.params = std::move(params);
    r.runtime_ms = runtime_ms;
    return r;
}

json to_json(const CorrelationReport& r) {
    return json{{"quantity", r.quantity},
                {"empirical", r.empirical},
                {"predicted_main", r.predicted_main},
                {"rel_error", r.rel_error},
                {"params", r.params}};
}

std::size_t count_inversions(std::span<const double> errors) {
    std::size_t inv = 0;
    for (std::size_t i = 1; i < errors.size(); ++i)
        if (std::abs(errors[i]) > std::abs(errors[i - 1])) ++inv;
    return inv;
}

double round_sig(double x, int digits) {
    if (!std::isfinite(x) || x == 0.0) return x;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return std::strtod(buf, nullptr);
}

json round_numbers(const json& j, int digits) {
    if (j.is_number_float()) return round_sig(j.get<double>(), digits);
    if (j.is_array()) {
        json out = json::array();
        for (const auto& e : j) out.push_back(round_numbers(e, digits));
        return out;
    }
    if (j.is_object()) {
        json out = json::object();
        for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = round_numbers(it.value(), digits);
        return out;
    }
    return j;
}

}  // namespace twosq
