#pragma once

#include <chrono>
#include <cstddef>
#include <span>
#include <string>

#include <json.hpp>

namespace twosq {

using json = nlohmann::json;

struct CorrelationReport {
    std::string quantity;
    double empirical = 0.0;
    double predicted_main = 0.0;
    double rel_error = 0.0;
    json params = json::object();
    double runtime_ms = 0.0;
};

double relative_error(double empirical, double predicted);

CorrelationReport make_report(std::string quantity, double empirical, double predicted, json params,
                              double runtime_ms);

// Timing is excluded so that reports are byte-stable across runs.
json to_json(const CorrelationReport& r);

// Number of i with |e[i+1]| > |e[i]|.
std::size_t count_inversions(std::span<const double> errors);

// Round to 12 significant digits for emitted reports.
double round_sig(double x, int digits = 12);
json round_numbers(const json& j, int digits = 12);

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace twosq
