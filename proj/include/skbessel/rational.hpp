#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace skbessel {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    if (base == 0) {
        if (e < 0) throw std::domain_error("rat_pow: 0^negative");
        return Rat(0);
    }
    Rat b = e > 0 ? base : Rat(1) / base;
    unsigned long n = e > 0 ? e : -e;
    Rat acc(1);
    while (n) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

inline std::string rat_str(const Rat& r) { return r.str(); }

// Parses "a" or "a/b" with optional sign.
inline Rat rat_parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("rat_parse: empty");
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash)), den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rat_parse: zero denominator");
    return Rat(num, den);
}

// p-adic valuation of a nonzero rational; also returns the unit part num/den with p removed.
inline long rat_valuation(const Rat& r, const Int& p, Int* unit_num = nullptr, Int* unit_den = nullptr) {
    if (r == 0) throw std::domain_error("rat_valuation: zero");
    Int num = numerator(r), den = denominator(r);
    long v = 0;
    while (num % p == 0) { num /= p; ++v; }
    while (den % p == 0) { den /= p; --v; }
    if (unit_num) *unit_num = num;
    if (unit_den) *unit_den = den;
    return v;
}

}  // namespace skbessel
