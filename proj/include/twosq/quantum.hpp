#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twosq/arith.hpp"
#include "twosq/rational.hpp"
#include "twosq/report.hpp"

namespace twosq {

using Point = std::vector<int64_t>;

struct SphereShell {
    uint64_t n = 0;
    int d = 0;
    std::vector<Point> points;  // lexicographic
};

SphereShell enumerate_shell(uint64_t n, int d, const BruteforceGuard& guard = {});

// Lexicographically least (b, c) with b >= c >= 0 and b^2 + c^2 = M - a^2, per a in a_list.
std::vector<std::pair<uint64_t, uint64_t>> decompose_Mk(uint64_t M, const std::vector<uint64_t>& a_list);

enum class FamilyRule { main, ql_i, ql_ii };

FamilyRule parse_family_rule(const std::string& name);
std::string family_rule_name(FamilyRule rule);

struct FamilyInputs {
    FamilyRule rule = FamilyRule::main;
    std::vector<uint64_t> a;  // a_1, a_2, ... distinct and >= 1
    // M[k-1] is the shell used at stage k; a single entry is used for every k.
    std::vector<uint64_t> M;
    int d = 0;    // ambient dimension before padding; 0 picks 3 (main), 4 (ql_i)
    int pad = 0;  // extra zero coordinates appended to every frequency
};

struct CoefficientFamily {
    FamilyRule rule = FamilyRule::main;
    int k = 0;
    int dim = 0;
    uint64_t M = 0;
    std::vector<Point> points;
    std::vector<Rational> weight;  // |a_xi|^2
    std::vector<int> block;        // j with xi in block j (1-based)
    std::vector<std::pair<uint64_t, uint64_t>> bc;  // (b_j, c_j), per j
    std::vector<uint64_t> block_count;              // points per j
};

struct QuantumGuard {
    std::size_t max_points = 200'000;
    double max_pairs = 5e7;
};

// Throws InternalError if the weights do not sum to exactly 1 or points repeat.
CoefficientFamily build_family(const FamilyInputs& in, int k, const QuantumGuard& guard = {});

struct FourierCoefficient {
    Point tau;
    double value = 0.0;
    std::optional<Rational> exact;  // set when every contributing pair lies in one block
};

FourierCoefficient b_tau(const CoefficientFamily& family, const Point& tau);

// All nonzero b_tau, keyed by tau.
std::map<Point, FourierCoefficient> all_b_tau(const CoefficientFamily& family, const QuantumGuard& guard = {});

struct LimitEstimate {
    double value = 0.0;   // b_tau(k_max)
    double delta = 0.0;   // |b_tau(k_max) - b_tau(k_max - 1)|
    std::optional<Rational> exact;
};

LimitEstimate ctau_limit(const FamilyInputs& in, const Point& tau, int k_max, const QuantumGuard& guard = {});

// Sum of |b_tau|^{2 - epsilon} over |tau| <= radius.
double lp_partial_sum(const CoefficientFamily& family, double epsilon, double radius, const QuantumGuard& guard = {});
// Sum of |b_tau| over |tau| < rho.
double sigma_rho(const CoefficientFamily& family, double rho, const QuantumGuard& guard = {});

struct LowerBoundCheck {
    int i = 0;
    double computed = 0.0;
    double bound = 0.0;
    bool holds = false;
};

// ql_i: partial sum at radius 2a_i against (2^k/(2^k-1))^{2-eps} (2^i r(a_i^2))^eps / 4^i.
// ql_ii: partial sum of |b| at radius 2a_i against (2^k/(2^k-1)) r_{d-2}(a_i^2) / 2^i.
std::vector<LowerBoundCheck> lower_bound_checks(const CoefficientFamily& family, double epsilon,
                                                const QuantumGuard& guard = {});

struct PrefixClauses {
    bool r_square_dominates = true;  // r(a_j^2) >= r(a_j) for every j
    bool r2_increasing = true;       // r(a_j) < r(a_{j+1})
    std::vector<uint64_t> r_a;
    std::vector<uint64_t> r_a_squared;
    int max_even_exponent = 0;       // largest b with 2^b dividing some a_j
};

PrefixClauses prefix_clauses(const std::vector<uint64_t>& a);

// Rows "j,x1,...,xd,weight_num,weight_den".
std::vector<std::string> family_csv(const CoefficientFamily& family);
json btau_json(const std::map<Point, FourierCoefficient>& table);
std::string point_key(const Point& p);

}  // namespace twosq
