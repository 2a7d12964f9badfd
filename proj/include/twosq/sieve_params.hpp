#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twosq/constants.hpp"

namespace twosq {

struct SieveParams {
    uint64_t N = 0;
    double theta1 = 0.0;
    double theta2 = 0.0;
    uint64_t D0 = 10;
    uint64_t v = 0;
    uint64_t R = 1;
    uint64_t W = 1;
    uint64_t W1 = 1;
    uint64_t W3 = 1;
    double log_v = 0.0;
    double log_R = 0.0;
    bool theta_constraint_relaxed = false;
};

inline constexpr double kThetaSumBound = 1.0 / 18.0;

// Enforces theta1 + theta2 < 1/18 unless `relaxed`, which is then reported.
SieveParams make_sieve_params(uint64_t N, double theta1, double theta2, uint64_t D0 = 10,
                              bool relaxed = false);

// Product of odd primes <= D0, split by residue mod 4.
struct WSplit {
    uint64_t W, W1, W3;
};
WSplit w_modulus(uint64_t D0);

struct AdmissibilityReport {
    bool admissible = true;
    struct Witness {
        uint64_t prime;
        int64_t uncovered_residue;
    };
    std::vector<Witness> witnesses;
    std::optional<uint64_t> covering_prime;
};

AdmissibilityReport check_admissible(const std::vector<int64_t>& h);

// Distinct shifts, each divisible by 4, admissible. Elements keep caller order.
class AdmissibleTuple {
public:
    explicit AdmissibleTuple(std::vector<int64_t> h);
    const std::vector<int64_t>& h() const { return h_; }
    std::size_t size() const { return h_.size(); }
    int64_t operator[](std::size_t i) const { return h_[i]; }
    int64_t min() const;
    int64_t max() const;

private:
    std::vector<int64_t> h_;
};

uint64_t find_v0(uint64_t W, const std::vector<int64_t>& h);

// Ascending squarefree n <= R, coprime to W, every prime = 3 mod 4 (includes 1).
std::vector<uint64_t> enumerate_support(uint64_t R, uint64_t W);

// (2A/pi) (phi(W3)/W3) sqrt(log R)
ConstantEstimate b_constant(const SieveParams& p);
double b_constant(uint64_t W3, double log_R);

}  // namespace twosq
