#include "twosq/bins.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "twosq/errors.hpp"
#include "twosq/hooley.hpp"
#include "twosq/primes.hpp"
#include "twosq/sieve_sums.hpp"

namespace twosq {

namespace {
constexpr double kPi = std::numbers::pi;
}

BinPartition BinPartition::from_sizes(std::vector<std::size_t> sizes, std::vector<double> betas) {
    require(!sizes.empty(), "partition needs at least one bin");
    BinPartition p;
    p.sizes = std::move(sizes);
    if (betas.empty())
        for (std::size_t i = 0; i < p.sizes.size(); ++i) betas.push_back(std::ldexp(1.0, -int(i + 1)));
    require(betas.size() == p.sizes.size(), "one beta per bin required");
    p.betas = std::move(betas);
    p.mu.assign(p.sizes.size(), 1.0);
    p.t.assign(p.sizes.size(), 1.0);
    return p;
}

std::size_t BinPartition::k() const {
    std::size_t s = 0;
    for (auto z : sizes) s += z;
    return s;
}

std::size_t BinPartition::start(std::size_t bin) const {
    std::size_t s = 0;
    for (std::size_t i = 0; i < bin; ++i) s += sizes[i];
    return s;
}

BinPartition BinPartition::truncated(std::size_t M) const {
    require(M >= 1 && M <= sizes.size(), "truncation depth out of range");
    BinPartition p;
    p.sizes.assign(sizes.begin(), sizes.begin() + M);
    p.betas.assign(betas.begin(), betas.begin() + M);
    p.mu.assign(mu.begin(), mu.begin() + M);
    p.t.assign(t.begin(), t.begin() + M);
    return p;
}

TestFunctionSpec BinPartition::spec() const {
    std::vector<Bin> bins;
    for (std::size_t i = 0; i < sizes.size(); ++i) bins.push_back({sizes[i], betas[i]});
    return TestFunctionSpec(bins);
}

TheoremConstants theorem_constants(double theta1, double theta2) {
    require(theta1 > 0 && theta2 > 0 && theta1 + theta2 < kThetaSumBound,
            "theorem constants need 0 < theta1 + theta2 < 1/18");
    TheoremConstants tc;
    tc.Delta = std::numbers::sqrt2 * (kPi + 2) / (32 * kPi) * (1 + theta1) / std::sqrt(theta1 * theta2);
    tc.c = 16 * std::sqrt(theta2 / (2 * theta1)) / kPi * (kPi * kPi / (kPi + 2));
    tc.k1_min = uint64_t(std::floor(2 * tc.Delta * tc.Delta * tc.Delta)) + 1;
    return tc;
}

std::vector<std::string> default_mu_t(BinPartition& partition, double theta1, double theta2) {
    const double c = theorem_constants(theta1, theta2).c;
    std::vector<std::string> warnings;
    for (std::size_t i = 0; i < partition.bins(); ++i) {
        const double ratio = double(partition.sizes[i]) / std::ldexp(1.0, int(i + 1));
        double mu = c * std::sqrt(ratio), t = c * std::cbrt(ratio);
        if (mu < 1) {
            warnings.push_back("mu_" + std::to_string(i + 1) + " = " + std::to_string(mu) + " raised to 1");
            mu = 1;
        }
        if (t < 1) {
            warnings.push_back("t_" + std::to_string(i + 1) + " = " + std::to_string(t) + " raised to 1");
            t = 1;
        }
        partition.mu[i] = mu;
        partition.t[i] = t;
    }
    return warnings;
}

Feasibility feasibility(const std::vector<double>& bin_sizes, double Delta) {
    require(!bin_sizes.empty(), "need at least one bin");
    double s = 0.0;
    for (std::size_t i = 0; i < bin_sizes.size(); ++i)
        s += std::pow(std::ldexp(1.0, int(i + 1)) / bin_sizes[i], 1.0 / 6.0);
    Feasibility f;
    f.lhs = Delta * s;
    f.rhs = std::cbrt(bin_sizes[0] / 2);
    f.holds = f.lhs < f.rhs;
    return f;
}

std::vector<double> theorem_bin_sizes(std::size_t M, uint64_t k1_min) {
    std::vector<double> sizes;
    for (std::size_t i = 1; i <= M; ++i) {
        const double pow2 = std::ldexp(1.0, int(7 * i));
        sizes.push_back(i == 1 ? std::max(double(k1_min), pow2 + 1) : pow2 + 1);
    }
    return sizes;
}

SecondMoment second_moment_lhs(const SieveParams& params, const AdmissibleTuple& tuple,
                               const BinPartition& partition, const WeightTable<double>& table,
                               const FactorTable& factors) {
    require(partition.k() == tuple.size(), "partition does not cover the tuple");
    const std::size_t M = partition.bins();
    for (std::size_t i = 0; i < M; ++i)
        require(partition.mu[i] >= 1 && partition.t[i] >= 1, "mu_i, t_i must be >= 1");
    double min_ratio = INFINITY;
    for (std::size_t i = 0; i < M; ++i)
        min_ratio = std::min(min_ratio, partition.mu[i] * partition.mu[i] / (partition.t[i] * partition.t[i]));

    SecondMoment out;
    // evaluator A: the bracket summed over n
    const RhoParams rp = rho_params_from_v(params.v);
    double a = 0.0;
    for_each_sieve_n<double>(params, tuple, table, factors, [&](uint64_t n, const double& s) {
        const double w = s * s;
        if (w == 0.0) return;
        double bracket = min_ratio;
        for (std::size_t i = 0; i < M; ++i) {
            double sum = 0.0;
            for (std::size_t j = partition.start(i); j < partition.start(i) + partition.sizes[i]; ++j) {
                const double r = rho(rp, factors.factorize(uint64_t(int64_t(n) + tuple[j])));
                if (r < 0) ++out.negative_rho;
                sum += r;
            }
            const double z = (sum - partition.mu[i]) / partition.t[i];
            bracket -= z * z;
        }
        a += bracket * w;
    });
    out.evaluator_a = a;

    // evaluator B: assembled from the direct S-sums
    const double s1 = s_direct(SieveSum::S1, params, tuple, table, factors).value;
    double b = min_ratio * s1;
    for (std::size_t i = 0; i < M; ++i) {
        const std::size_t lo = partition.start(i), hi = lo + partition.sizes[i];
        double s3 = 0.0, s4 = 0.0, s2 = 0.0;
        for (std::size_t m = lo; m < hi; ++m) {
            for (std::size_t l = lo; l < hi; ++l)
                if (l != m) s3 += s_direct(SieveSum::S3, params, tuple, table, factors, m, l).value;
            s4 += s_direct(SieveSum::S4, params, tuple, table, factors, m).value;
            s2 += s_direct(SieveSum::S2, params, tuple, table, factors, m).value;
        }
        const double mu = partition.mu[i], t = partition.t[i];
        b -= (s3 + s4 - 2 * mu * s2 + mu * mu * s1) / (t * t);
    }
    out.evaluator_b = b;
    out.s1 = s1;
    const double scale = std::max(std::abs(a), std::abs(b));
    out.rel_diff = scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
    return out;
}

std::optional<std::pair<uint64_t, uint64_t>> two_square_certificate(uint64_t m) {
    for (uint64_t x = isqrt_u64(m);; --x) {
        const uint64_t rest = m - x * x;
        if (rest > x * x) break;
        if (is_perfect_square(rest)) return std::make_pair(x, isqrt_u64(rest));
        if (x == 0) break;
    }
    return std::nullopt;
}

std::vector<WitnessRecord> witness_search(const WitnessQuery& q, const std::vector<int64_t>& h,
                                          const BinPartition& partition, const FactorTable& factors) {
    require(partition.k() <= h.size(), "partition exceeds the tuple");
    require(q.W >= 1 && q.W % 2 == 1, "W must be odd");
    const uint64_t limit = q.n_limit == 0 ? 2 * q.N : q.n_limit;
    std::vector<WitnessRecord> out;
    if (limit <= q.N) return out;
    const int64_t hmin = *std::min_element(h.begin(), h.end());
    const int64_t hmax = *std::max_element(h.begin(), h.end());
    require(int64_t(q.N) + hmin >= 0, "N + min(h) must be nonnegative");
    require(uint64_t(int64_t(limit - 1) + std::max<int64_t>(hmax, 0)) <= factors.limit(),
            "window exceeds factor table limit");
    const uint64_t v0 = find_v0(q.W, h);
    const uint64_t step = 4 * q.W;
    const uint64_t r = crt_pair(v0, q.W, 1, 4);
    for (uint64_t n = q.N + (r + step - q.N % step) % step; n < limit; n += step) {
        WitnessRecord rec;
        rec.n = n;
        bool ok = true;
        for (std::size_t i = 0; i < partition.bins() && ok; ++i) {
            std::vector<int64_t> acc;
            for (std::size_t j = partition.start(i); j < partition.start(i) + partition.sizes[i]; ++j)
                if (is_sum_of_two_squares(factors, uint64_t(int64_t(n) + h[j]))) acc.push_back(h[j]);
            if (acc.empty()) ok = false;
            std::sort(acc.begin(), acc.end());
            rec.accepted.push_back(acc);
        }
        if (!ok) continue;
        for (const auto& acc : rec.accepted) {
            rec.chosen.push_back(acc.front());
            auto cert = two_square_certificate(uint64_t(int64_t(n) + acc.front()));
            ensure(cert.has_value(), "sum-of-two-squares criterion and certificate search disagree");
            rec.certificates.push_back(*cert);
        }
        out.push_back(std::move(rec));
        if (q.max_records && out.size() >= q.max_records) break;
    }
    return out;
}

bool verify_witness(const WitnessRecord& record, const std::vector<int64_t>& h, const BinPartition& partition) {
    if (record.accepted.size() != partition.bins() || record.chosen.size() != partition.bins()) return false;
    for (std::size_t i = 0; i < partition.bins(); ++i) {
        if (record.accepted[i].empty()) return false;
        const auto first = h.begin() + long(partition.start(i));
        const auto last = first + long(partition.sizes[i]);
        for (int64_t x : record.accepted[i]) {
            if (std::find(first, last, x) == last) return false;
            const int64_t m = int64_t(record.n) + x;
            if (m < 0) return false;
            if (m > 0 && !is_sum_of_two_squares(trial_factorize(uint64_t(m)))) return false;
        }
        const auto [x, y] = record.certificates[i];
        if (x * x + y * y != uint64_t(int64_t(record.n) + record.chosen[i])) return false;
    }
    return true;
}

std::vector<std::string> witness_csv(const std::vector<WitnessRecord>& records) {
    std::vector<std::string> rows;
    for (const auto& r : records)
        for (std::size_t i = 0; i < r.chosen.size(); ++i)
            rows.push_back(std::to_string(r.n) + "," + std::to_string(i + 1) + "," + std::to_string(r.chosen[i]) +
                           "," + std::to_string(r.certificates[i].first) + "," +
                           std::to_string(r.certificates[i].second));
    return rows;
}

PigeonholeResult pigeonhole_extract(const std::vector<PigeonholeRow>& rows) {
    PigeonholeResult res;
    std::vector<std::size_t> alive(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) alive[i] = i;
    for (std::size_t col = 0;; ++col) {
        std::map<int64_t, std::size_t> freq;
        for (std::size_t i : alive)
            if (rows[i].h.size() > col) ++freq[rows[i].h[col]];
        if (freq.empty()) break;
        // most frequent; std::map order gives the smallest element among ties
        auto best = freq.begin();
        for (auto it = freq.begin(); it != freq.end(); ++it)
            if (it->second > best->second) best = it;
        std::vector<std::size_t> next;
        for (std::size_t i : alive)
            if (rows[i].h.size() > col && rows[i].h[col] == best->first) next.push_back(i);
        alive = std::move(next);
        res.a.push_back(best->first);
        res.n.push_back(rows[alive.front()].n);
        res.surviving.push_back(alive);
        ++res.depth;
    }
    return res;
}

AdmissibleTuple jakobson_tuple(int i_max) {
    require(i_max >= 1, "i_max must be >= 1");
    require(i_max <= 13, "i_max > 13 overflows 64-bit shifts");
    std::vector<int64_t> h;
    int64_t p5 = 1;
    for (int i = 1; i <= i_max; ++i) {
        p5 *= 5;
        h.push_back(-(2 * p5) * (2 * p5));
    }
    return AdmissibleTuple(h);
}

}  // namespace twosq
