#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "klab/residue.hpp"

namespace klab {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

// Height of a rational in lowest terms: max(|numerator|, denominator).
inline Int height(const Rat& q) {
    Int n = rat_num(q);
    if (n < 0) n = -n;
    Int d = rat_den(q);
    return n > d ? n : d;
}

inline int valuation(Int a, std::int64_t p) {
    if (a == 0) throw std::domain_error("valuation: v_p(0) is infinite");
    int v = 0;
    while (a % p == 0) { a /= p; ++v; }
    return v;
}

// v_p of a nonzero rational.
inline int valuation(const Rat& q, std::int64_t p) {
    if (q == 0) throw std::domain_error("valuation: v_p(0) is infinite");
    return valuation(rat_num(q), p) - valuation(rat_den(q), p);
}

// The unit u with q = p^v u, reduced mod p^k.
inline std::int64_t unit_part_mod(const Rat& q, std::int64_t p, int k) {
    if (q == 0) throw std::domain_error("unit_part_mod: zero argument");
    Int num = rat_num(q), den = rat_den(q);
    while (num % p == 0) num /= p;
    while (den % p == 0) den /= p;
    Int pk = 1;
    for (int i = 0; i < k; ++i) pk *= p;
    Int n = num % pk; if (n < 0) n += pk;
    Int d = den % pk; if (d < 0) d += pk;
    std::int64_t ni = static_cast<std::int64_t>(n), di = static_cast<std::int64_t>(d);
    std::int64_t m = static_cast<std::int64_t>(pk);
    return mul_mod(ni, inv_mod(di, m), m);
}

inline bool is_p_integral(const Rat& q, std::int64_t p) {
    return rat_den(q) % p != 0;
}

inline bool is_integral(const Rat& q) { return rat_den(q) == 1; }

inline double to_double(const Rat& q) { return static_cast<double>(q); }

} // namespace klab
