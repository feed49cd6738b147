#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace finadd {

// Exact rational scalar. Always kept in lowest terms with a positive
// denominator by the backend.
using Rat = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

// Accepts "num/den", "int", and plain decimals such as "-0.125" or "3.5e-2";
// decimals are converted exactly (0.1 is 1/10, not the nearest double).
Rat parse_rat(std::string_view text);

// Canonical "num/den" rendering, also for integers ("1/1", "0/1").
std::string to_string(const Rat& r);

double to_double(const Rat& r);

Rat pow(const Rat& base, std::uint64_t exponent);

inline Rat abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

} // namespace finadd
