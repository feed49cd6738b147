#include "finadd/rational.hpp"

#include "finadd/errors.hpp"

#include <cctype>
#include <string>

namespace finadd {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

// Boost reads a leading 0 as an octal prefix.
BigInt decimal_digits(std::string_view s) {
    auto nz = s.find_first_not_of('0');
    return nz == std::string_view::npos ? BigInt(0) : BigInt{std::string(s.substr(nz))};
}

BigInt parse_integer(std::string_view s) {
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) throw DomainError("malformed integer '" + std::string(s) + "'");
    BigInt v = decimal_digits(s);
    return negative ? BigInt(-v) : v;
}

BigInt pow10(std::int64_t k) {
    BigInt r = 1;
    for (std::int64_t i = 0; i < k; ++i) r *= 10;
    return r;
}

Rat parse_decimal(std::string_view s) {
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    std::int64_t exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        auto exp_text = s.substr(e + 1);
        BigInt ev = parse_integer(exp_text);
        if (abs(ev) > 4096) throw DomainError("decimal exponent out of range");
        exponent = ev.convert_to<std::int64_t>();
        s = s.substr(0, e);
    }
    std::string digits;
    auto dot = s.find('.');
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw DomainError("empty number");
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)))
        throw DomainError("malformed decimal '" + std::string(s) + "'");
    digits.append(whole);
    digits.append(frac);
    exponent -= static_cast<std::int64_t>(frac.size());
    Rat value{decimal_digits(digits)};
    if (exponent >= 0)
        value *= pow10(exponent);
    else
        value /= pow10(-exponent);
    return negative ? Rat(-value) : value;
}

} // namespace

Rat parse_rat(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw DomainError("empty rational");
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_integer(text.substr(0, slash));
        BigInt den = parse_integer(text.substr(slash + 1));
        if (den == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
        return Rat(num, den);
    }
    return parse_decimal(text);
}

std::string to_string(const Rat& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

double to_double(const Rat& r) { return r.convert_to<double>(); }

Rat pow(const Rat& base, std::uint64_t exponent) {
    Rat result = 1;
    Rat b = base;
    while (exponent > 0) {
        if (exponent & 1u) result *= b;
        exponent >>= 1;
        if (exponent) b *= b;
    }
    return result;
}

} // namespace finadd
