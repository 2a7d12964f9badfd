#include "twosq/weights.hpp"

#include <algorithm>
#include <cmath>

#include "twosq/arith.hpp"
#include "twosq/errors.hpp"
#include "twosq/primes.hpp"

namespace twosq {

TestFunctionSpec::TestFunctionSpec(std::vector<Bin> bins) : bins_(std::move(bins)) {
    require(!bins_.empty(), "test function needs at least one bin");
    double total = 0.0;
    for (std::size_t i = 0; i < bins_.size(); ++i) {
        require(bins_[i].size >= 1, "bin sizes must be >= 1");
        require(bins_[i].beta > 0, "bin betas must be positive");
        total += bins_[i].beta;
        for (std::size_t j = 0; j < bins_[i].size; ++j) bin_of_.push_back(i);
    }
    require(total <= 1.0 + 1e-12, "sum of bin betas must be <= 1");
}

TestFunctionSpec TestFunctionSpec::single(std::size_t k, double beta) {
    return TestFunctionSpec({Bin{k, beta}});
}

double TestFunctionSpec::coordinate_cap(std::size_t coord) const {
    const Bin& b = bins_[bin_of(coord)];
    return b.beta / double(b.size);
}

double TestFunctionSpec::coordinate_factor(std::size_t coord, double x) const {
    const Bin& b = bins_[bin_of(coord)];
    const double t = double(b.size) * x;
    if (t > b.beta || x < 0) return 0.0;
    return 1.0 / (1.0 + t / b.beta);
}

double TestFunctionSpec::F(std::span<const double> x) const {
    require(x.size() == k(), "F: wrong number of coordinates");
    double v = 1.0;
    for (std::size_t j = 0; j < x.size() && v != 0.0; ++j) v *= coordinate_factor(j, x[j]);
    return v;
}

namespace {

template <class Scalar>
Scalar from_double(double x) {
    return Scalar(x);
}

Rational as_rational(double x) { return Rational(x); }
Rational as_rational(const Rational& x) { return x; }

struct SupportInfo {
    uint64_t value;
    int mu;
    uint64_t phi;
    double x;                          // log d / log R
    std::vector<std::size_t> divisors; // indices into support
};

}  // namespace

template <class Scalar>
uint64_t WeightTable<Scalar>::code(std::span<const std::size_t> idx) const {
    uint64_t c = 0;
    for (std::size_t j = idx.size(); j-- > 0;) c = c * support_.size() + idx[j];
    return c;
}

template <class Scalar>
long WeightTable<Scalar>::support_index(uint64_t d) const {
    auto it = std::lower_bound(support_.begin(), support_.end(), d);
    if (it == support_.end() || *it != d) return -1;
    return long(it - support_.begin());
}

template <class Scalar>
long WeightTable<Scalar>::find_by_index(std::span<const std::size_t> idx) const {
    auto it = index_.find(code(idx));
    return it == index_.end() ? -1 : long(it->second);
}

template <class Scalar>
long WeightTable<Scalar>::find(std::span<const uint64_t> d) const {
    require(d.size() == k_, "tuple has wrong length");
    std::vector<std::size_t> idx(k_);
    for (std::size_t j = 0; j < k_; ++j) {
        long s = support_index(d[j]);
        if (s < 0) return -1;
        idx[j] = std::size_t(s);
    }
    return find_by_index(idx);
}

template <class Scalar>
WeightTable<Scalar> WeightTable<Scalar>::from_F(const SieveParams& params, const TestFunctionSpec& spec,
                                                const WeightGuard& guard) {
    WeightTable t;
    t.k_ = spec.k();
    t.R_ = params.R;
    t.W_ = params.W;
    t.log_R_ = params.log_R;
    for (std::size_t j = 0; j < t.k_; ++j) t.caps_.push_back(spec.coordinate_cap(j));
    t.support_ = enumerate_support(params.R, params.W);
    const std::size_t S = t.support_.size();
    if (std::pow(double(S), double(t.k_)) >= 9.2e18)
        throw ResourceGuardError("weight table index space exceeds 64 bits", std::pow(double(S), double(t.k_)));

    std::vector<SupportInfo> info(S);
    for (std::size_t s = 0; s < S; ++s) {
        const uint64_t d = t.support_[s];
        Factorization f = trial_factorize(d);
        info[s].value = d;
        info[s].mu = mobius(f);
        info[s].phi = euler_phi(f);
        info[s].x = (d == 1 || params.R == 1) ? 0.0 : std::log(double(d)) / params.log_R;
        for (std::size_t e = 0; e <= s; ++e)
            if (d % t.support_[e] == 0) info[s].divisors.push_back(e);
    }

    // tuples with squarefree product <= R and F > 0
    std::vector<std::size_t> idx(t.k_);
    std::vector<double> xs(t.k_);
    double work = 0.0;
    auto rec = [&](auto&& self, std::size_t slot, uint64_t bound, uint64_t used) -> void {
        if (slot == t.k_) {
            const double F = spec.F(xs);
            if (F <= 0.0) return;
            if (t.lambda_.size() >= guard.max_tuples)
                throw ResourceGuardError("weight table tuple count exceeds guard", double(t.lambda_.size()));
            double w = 1.0;
            for (std::size_t j = 0; j < t.k_; ++j) w *= double(info[idx[j]].divisors.size());
            work += w;
            if (work > guard.max_work) throw ResourceGuardError("weight table divisor work exceeds guard", work);
            t.index_.emplace(t.code(idx), t.lambda_.size());
            for (std::size_t j = 0; j < t.k_; ++j) t.flat_.push_back(info[idx[j]].value);
            t.y_.push_back(from_double<Scalar>(F));
            t.lambda_.push_back(Scalar(0));
            return;
        }
        for (std::size_t s = 0; s < S && t.support_[s] <= bound; ++s) {
            if (gcd_u64(t.support_[s], used) != 1) continue;
            if (spec.coordinate_factor(slot, info[s].x) <= 0.0) continue;
            idx[slot] = s;
            xs[slot] = info[s].x;
            self(self, slot + 1, bound / t.support_[s], used * t.support_[s]);
        }
    };
    rec(rec, 0, params.R, 1);

    // lambda_d = prod mu(d_i) d_i * sum_{d | r} y_r / prod phi(r_i)
    std::vector<Scalar> acc(t.lambda_.size(), Scalar(0));
    std::vector<std::size_t> ridx(t.k_), didx(t.k_), pos(t.k_);
    for (std::size_t i = 0; i < t.lambda_.size(); ++i) {
        auto r = t.tuple(i);
        uint64_t phi = 1;
        for (std::size_t j = 0; j < t.k_; ++j) {
            ridx[j] = std::size_t(t.support_index(r[j]));
            phi *= info[ridx[j]].phi;
        }
        Scalar w;
        if constexpr (std::is_same_v<Scalar, Rational>)
            w = t.y_[i] / make_rational_u(phi);
        else
            w = t.y_[i] / double(phi);
        std::fill(pos.begin(), pos.end(), 0);
        while (true) {
            for (std::size_t j = 0; j < t.k_; ++j) didx[j] = info[ridx[j]].divisors[pos[j]];
            long at = t.find_by_index(didx);
            ensure(at >= 0, "divisor tuple missing from weight table");
            acc[std::size_t(at)] += w;
            std::size_t j = 0;
            while (j < t.k_ && ++pos[j] == info[ridx[j]].divisors.size()) pos[j++] = 0;
            if (j == t.k_) break;
        }
    }
    for (std::size_t i = 0; i < t.lambda_.size(); ++i) {
        auto d = t.tuple(i);
        int64_t c = 1;
        for (std::size_t j = 0; j < t.k_; ++j) c *= info[std::size_t(t.support_index(d[j]))].mu * int64_t(d[j]);
        if constexpr (std::is_same_v<Scalar, Rational>)
            t.lambda_[i] = acc[i] * make_rational(c);
        else
            t.lambda_[i] = acc[i] * double(c);
    }
    return t;
}

template <class Scalar>
std::vector<Scalar> WeightTable<Scalar>::y_from_lambda() const {
    // y_r = prod mu(r_i) phi(r_i) * sum_{r | d} lambda_d / prod d_i
    std::vector<Scalar> acc(lambda_.size(), Scalar(0));
    std::vector<std::vector<std::size_t>> divs(support_.size());
    for (std::size_t s = 0; s < support_.size(); ++s)
        for (std::size_t e = 0; e <= s; ++e)
            if (support_[s] % support_[e] == 0) divs[s].push_back(e);
    std::vector<std::size_t> didx(k_), ridx(k_), pos(k_);
    for (std::size_t i = 0; i < lambda_.size(); ++i) {
        auto d = tuple(i);
        uint64_t prod = 1;
        for (std::size_t j = 0; j < k_; ++j) {
            didx[j] = std::size_t(support_index(d[j]));
            prod *= d[j];
        }
        Scalar w;
        if constexpr (std::is_same_v<Scalar, Rational>)
            w = lambda_[i] / make_rational_u(prod);
        else
            w = lambda_[i] / double(prod);
        std::fill(pos.begin(), pos.end(), 0);
        while (true) {
            for (std::size_t j = 0; j < k_; ++j) ridx[j] = divs[didx[j]][pos[j]];
            long at = find_by_index(ridx);
            ensure(at >= 0, "divisor tuple missing from weight table");
            acc[std::size_t(at)] += w;
            std::size_t j = 0;
            while (j < k_ && ++pos[j] == divs[didx[j]].size()) pos[j++] = 0;
            if (j == k_) break;
        }
    }
    for (std::size_t i = 0; i < lambda_.size(); ++i) {
        auto r = tuple(i);
        int64_t c = 1;
        for (std::size_t j = 0; j < k_; ++j) {
            Factorization f = trial_factorize(r[j]);
            c *= mobius(f) * int64_t(euler_phi(f));
        }
        if constexpr (std::is_same_v<Scalar, Rational>)
            acc[i] *= make_rational(c);
        else
            acc[i] *= double(c);
    }
    return acc;
}

template <class Scalar>
std::vector<std::string> WeightTable<Scalar>::export_rows() const {
    std::vector<std::string> rows;
    rows.reserve(lambda_.size());
    for (std::size_t i = 0; i < lambda_.size(); ++i) {
        std::string row;
        for (uint64_t d : tuple(i)) row += std::to_string(d) + ",";
        Rational q = as_rational(lambda_[i]);
        row += q.get_num().get_str() + "," + q.get_den().get_str();
        rows.push_back(std::move(row));
    }
    return rows;
}

template <class Scalar>
void WeightTable<Scalar>::scale(const Scalar& c) {
    for (auto& l : lambda_) l *= c;
    for (auto& y : y_) y *= c;
}

template class WeightTable<double>;
template class WeightTable<Rational>;

}  // namespace twosq
