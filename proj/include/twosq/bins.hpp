#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twosq/arith.hpp"
#include "twosq/sieve_params.hpp"
#include "twosq/weights.hpp"

namespace twosq {

// Consecutive bins over the tuple: bin i holds sizes[i] elements.
struct BinPartition {
    std::vector<std::size_t> sizes;
    std::vector<double> betas;
    std::vector<double> mu;
    std::vector<double> t;

    // betas default to 2^-i (i = 1, 2, ...) when omitted; mu, t default to 1.
    static BinPartition from_sizes(std::vector<std::size_t> sizes, std::vector<double> betas = {});

    std::size_t bins() const { return sizes.size(); }
    std::size_t k() const;
    std::size_t start(std::size_t bin) const;
    BinPartition truncated(std::size_t M) const;
    TestFunctionSpec spec() const;
};

struct TheoremConstants {
    double Delta;
    double c;
    uint64_t k1_min;
};

TheoremConstants theorem_constants(double theta1, double theta2);

// mu_i = c (k_i/2^i)^{1/2}, t_i = c (k_i/2^i)^{1/3}, floored at 1; returns warnings.
std::vector<std::string> default_mu_t(BinPartition& partition, double theta1, double theta2);

struct Feasibility {
    double lhs;  // Delta * sum (2^i/k_i)^{1/6}
    double rhs;  // (k_1/2)^{1/3}
    bool holds;
};

// Bin sizes as reals so that sizes like 2^{7i} stay representable.
Feasibility feasibility(const std::vector<double>& bin_sizes, double Delta);

// k_1 = max(k1_min, 2^7 + 1), k_i = 2^{7i} + 1 for i >= 2.
std::vector<double> theorem_bin_sizes(std::size_t M, uint64_t k1_min);

struct SecondMoment {
    double evaluator_a = 0.0;
    double evaluator_b = 0.0;
    double rel_diff = 0.0;
    double s1 = 0.0;
    std::size_t negative_rho = 0;
};

SecondMoment second_moment_lhs(const SieveParams& params, const AdmissibleTuple& tuple,
                               const BinPartition& partition, const WeightTable<double>& table,
                               const FactorTable& factors);

std::optional<std::pair<uint64_t, uint64_t>> two_square_certificate(uint64_t m);

struct WitnessRecord {
    uint64_t n = 0;
    std::vector<std::vector<int64_t>> accepted;  // per bin, all h with n + h in the set
    std::vector<int64_t> chosen;                  // per bin, smallest accepted h
    std::vector<std::pair<uint64_t, uint64_t>> certificates;  // x^2 + y^2 = n + chosen
};

struct WitnessQuery {
    uint64_t N = 0;
    uint64_t n_limit = 0;  // exclusive; 0 means 2N
    uint64_t W = 1;
    std::size_t max_records = 0;  // 0 means unlimited
};

std::vector<WitnessRecord> witness_search(const WitnessQuery& q, const std::vector<int64_t>& h,
                                          const BinPartition& partition, const FactorTable& factors);

// Rechecks every accepted entry by trial division and every certificate by arithmetic.
bool verify_witness(const WitnessRecord& record, const std::vector<int64_t>& h, const BinPartition& partition);

// Rows "n,bin,h,x,y" for chosen elements.
std::vector<std::string> witness_csv(const std::vector<WitnessRecord>& records);

struct PigeonholeRow {
    uint64_t n;
    std::vector<int64_t> h;
};

struct PigeonholeResult {
    std::vector<int64_t> a;
    std::vector<uint64_t> n;
    std::size_t depth = 0;
    std::vector<std::vector<std::size_t>> surviving;  // row indices after each column
};

PigeonholeResult pigeonhole_extract(const std::vector<PigeonholeRow>& rows);

// h_i = -(2 * 5^i)^2, i = 1..i_max
AdmissibleTuple jakobson_tuple(int i_max);

}  // namespace twosq
