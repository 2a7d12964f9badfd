#pragma once

#include <cstdint>
#include <vector>

#include "twosq/report.hpp"

namespace twosq {

struct AuxParams {
    uint64_t v = 2;
    uint64_t W = 1;
    uint64_t W1 = 1;
};

AuxParams make_aux_params(uint64_t v, uint64_t W);

// Squarefree a <= v, all primes = 1 mod 4 and coprime to W, in DFS order over ascending primes.
struct AuxTerm {
    uint64_t a;
    int mu;
    std::vector<uint32_t> primes;
};

struct AuxGuard {
    uint64_t max_v = 200'000'000;
    double max_pairs = 2e9;
};

std::vector<AuxTerm> aux_support(const AuxParams& p, const AuxGuard& guard = {});

double x_direct(const AuxParams& p, const AuxGuard& guard = {});
double y_direct(const AuxParams& p, const AuxGuard& guard = {});
double z1_direct(const AuxParams& p, const AuxGuard& guard = {});
double z2_direct(const AuxParams& p, const AuxGuard& guard = {});

double x_predicted(const AuxParams& p);
double y_predicted(const AuxParams& p);
double z1_predicted(const AuxParams& p);
double z2_predicted(const AuxParams& p);

enum class AuxSum { x, y, z1, z2 };
const char* to_string(AuxSum s);

CorrelationReport aux_report(const AuxParams& p, AuxSum s, const AuxGuard& guard = {});

}  // namespace twosq
