#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>

#include "steinhaus/error.hpp"

namespace steinhaus {

// expression templates off so the values play well with std::min/std::max
using BigInt = boost::multiprecision::number<boost::multiprecision::backends::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::backends::rational_adaptor<
                                      boost::multiprecision::backends::cpp_int_backend<>>,
                                  boost::multiprecision::et_off>;

inline Rational rat(long long num, long long den = 1) {
    if (den == 0) fail(ErrorCode::InvalidArgument, "zero denominator");
    return Rational(num, den);
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// Exact conversion: every finite double is a dyadic rational.
Rational rational_from_double(double x);

/// Parses "p/q" or a plain integer/decimal string.
std::optional<Rational> parse_rational(const std::string& s);

std::string rational_to_string(const Rational& q);

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

/// floor(x) for rational x.
inline BigInt rational_floor(const Rational& q) {
    return floor_div(numerator(q), denominator(q));
}

inline BigInt rational_ceil(const Rational& q) { return -rational_floor(-q); }

/// Smallest integer n with 2^n >= q (q > 0). Exact.
int ceil_log2(const Rational& q);

/// q^k for integer k >= 0.
Rational rational_pow(const Rational& q, unsigned k);

/// True iff sqrt(a) <= c for rationals a >= 0, c (exact).
bool sqrt_leq(const Rational& a, const Rational& c);

/// A rational upper bound on sqrt(a), within 2^-bits relative slack.
Rational sqrt_upper_bound(const Rational& a, int bits = 30);

} // namespace steinhaus
