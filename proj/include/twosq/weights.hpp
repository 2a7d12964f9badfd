#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "twosq/rational.hpp"
#include "twosq/sieve_params.hpp"

namespace twosq {

struct Bin {
    std::size_t size;
    double beta;
};

// Product-form test function: coordinate j in bin i contributes g(k_i x_j),
// g(t) = 1/(1 + t/beta_i) for t <= beta_i and 0 beyond.
class TestFunctionSpec {
public:
    explicit TestFunctionSpec(std::vector<Bin> bins);
    static TestFunctionSpec single(std::size_t k, double beta);

    std::size_t k() const { return bin_of_.size(); }
    const std::vector<Bin>& bins() const { return bins_; }
    std::size_t bin_of(std::size_t coord) const { return bin_of_.at(coord); }
    // Upper end beta_i / k_i of the support in coordinate j.
    double coordinate_cap(std::size_t coord) const;
    double coordinate_factor(std::size_t coord, double x) const;
    double F(std::span<const double> x) const;

private:
    std::vector<Bin> bins_;
    std::vector<std::size_t> bin_of_;
};

struct WeightGuard {
    std::size_t max_tuples = 5'000'000;
    double max_work = 2e8;
};

// lambda on k-tuples of support integers with squarefree product <= R, together with
// the y-values F(log r_i / log R) it was built from.
template <class Scalar>
class WeightTable {
public:
    static WeightTable from_F(const SieveParams& params, const TestFunctionSpec& spec,
                              const WeightGuard& guard = {});

    std::size_t k() const { return k_; }
    uint64_t R() const { return R_; }
    uint64_t W() const { return W_; }
    std::size_t size() const { return lambda_.size(); }
    std::span<const uint64_t> tuple(std::size_t i) const { return {flat_.data() + i * k_, k_}; }
    const Scalar& lambda(std::size_t i) const { return lambda_[i]; }
    const Scalar& y(std::size_t i) const { return y_[i]; }
    const std::vector<uint64_t>& support() const { return support_; }
    double coordinate_cap(std::size_t coord) const { return caps_[coord]; }
    double log_R() const { return log_R_; }

    // Index of an explicit tuple, or -1 when lambda vanishes there.
    long find(std::span<const uint64_t> d) const;
    // Same, with coordinates given as indices into support().
    long find_by_index(std::span<const std::size_t> idx) const;
    long support_index(uint64_t d) const;

    // y recomputed from lambda by Moebius inversion.
    std::vector<Scalar> y_from_lambda() const;

    // "d1,...,dk,num,den" rows.
    std::vector<std::string> export_rows() const;

    // Replace lambda (used for scaling/linearity checks and external tables).
    void scale(const Scalar& c);

private:
    std::size_t k_ = 0;
    uint64_t R_ = 1, W_ = 1;
    double log_R_ = 0.0;
    std::vector<double> caps_;
    std::vector<uint64_t> support_;
    std::vector<uint64_t> flat_;
    std::vector<Scalar> lambda_, y_;
    std::unordered_map<uint64_t, std::size_t> index_;

    uint64_t code(std::span<const std::size_t> idx) const;
};

extern template class WeightTable<double>;
extern template class WeightTable<Rational>;

}  // namespace twosq
