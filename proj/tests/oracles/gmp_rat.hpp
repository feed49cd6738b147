#pragma once

// Reference arithmetic on plain gmpxx rationals. Oracle values are computed
// by separate algorithms (brute enumeration, direct products) and compared
// through their decimal strings.

#include "finadd/rational.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace oracle {

inline mpq_class to_mpq(const finadd::Rat& r) {
    mpq_class q(finadd::to_string(r));
    q.canonicalize();
    return q;
}

inline std::string str(const mpq_class& q) {
    mpq_class c = q;
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline bool same(const finadd::Rat& r, const mpq_class& q) { return finadd::to_string(r) == str(q); }

inline mpq_class power(const mpq_class& base, std::uint64_t e) {
    mpq_class r = 1;
    for (std::uint64_t i = 0; i < e; ++i) r *= base;
    return r;
}

// p^s (1-p)^(len-s)
inline mpq_class bernoulli_product(const mpq_class& p, std::uint64_t ones, std::uint64_t len) {
    return power(p, ones) * power(1 - p, len - ones);
}

// N (N-1) ... (N-n+1) / N^n
inline mpq_class falling_factorial_ratio(std::uint64_t big_n, std::uint64_t n) {
    mpz_class num = 1, den = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
        if (i >= big_n) return 0;
        num *= big_n - i;
        den *= big_n;
    }
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

} // namespace oracle
