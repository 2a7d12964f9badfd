#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <gmpxx.h>

namespace twosq {

using Rational = mpq_class;

inline Rational make_rational(int64_t num, int64_t den = 1) {
    Rational r(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    r.canonicalize();
    return r;
}

inline Rational make_rational_u(uint64_t num, uint64_t den = 1) {
    mpz_class n, d;
    mpz_import(n.get_mpz_t(), 1, 1, sizeof(uint64_t), 0, 0, &num);
    mpz_import(d.get_mpz_t(), 1, 1, sizeof(uint64_t), 0, 0, &den);
    Rational r(n, d);
    r.canonicalize();
    return r;
}

inline double to_double(const Rational& r) { return r.get_d(); }

inline std::string to_string(const Rational& r) { return r.get_str(); }

// Formal sum  sum_p c_p * log p  with exact coefficients.
class LogSum {
public:
    void add(uint64_t prime, const Rational& coeff) {
        if (coeff == 0) return;
        auto [it, inserted] = terms_.try_emplace(prime, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }
    LogSum& operator+=(const LogSum& other) {
        for (const auto& [p, c] : other.terms_) add(p, c);
        return *this;
    }
    LogSum& operator-=(const LogSum& other) {
        for (const auto& [p, c] : other.terms_) add(p, -c);
        return *this;
    }
    const std::map<uint64_t, Rational>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    double value() const;
    std::string to_string() const;

private:
    std::map<uint64_t, Rational> terms_;
};

}  // namespace twosq
