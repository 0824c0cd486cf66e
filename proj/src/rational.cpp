#include "steinhaus/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

namespace steinhaus {

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) fail(ErrorCode::InvalidArgument, "non-finite value");
    if (x == 0.0) return Rational(0);
    int exp = 0;
    double m = std::frexp(x, &exp); // x = m * 2^exp, |m| in [0.5, 1)
    // 53 doublings make the mantissa integral
    BigInt num = BigInt(static_cast<long long>(std::ldexp(m, 53)));
    exp -= 53;
    Rational r(num);
    if (exp > 0) {
        r *= Rational(BigInt(1) << exp);
    } else if (exp < 0) {
        r /= Rational(BigInt(1) << (-exp));
    }
    return r;
}

std::optional<Rational> parse_rational(const std::string& s) {
    if (s.empty()) return std::nullopt;
    auto slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            BigInt num(s.substr(0, slash));
            BigInt den(s.substr(slash + 1));
            if (den == 0) return std::nullopt;
            return Rational(num, den);
        }
        if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
            s.find('E') != std::string::npos) {
            char* end = nullptr;
            double v = std::strtod(s.c_str(), &end);
            if (end == nullptr || *end != '\0') return std::nullopt;
            return rational_from_double(v);
        }
        return Rational(BigInt(s));
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::string rational_to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

int ceil_log2(const Rational& q) {
    if (q <= 0) fail(ErrorCode::InvalidArgument, "ceil_log2 of non-positive value");
    int n = 0;
    Rational p(1);
    if (q > 1) {
        while (p < q) {
            p *= 2;
            ++n;
        }
        return n;
    }
    while (p >= q) {
        // smallest n (possibly negative) with 2^n >= q
        if (p / 2 < q) break;
        p /= 2;
        --n;
    }
    return n;
}

Rational rational_pow(const Rational& q, unsigned k) {
    Rational acc(1), base = q;
    while (k > 0) {
        if (k & 1u) acc *= base;
        base *= base;
        k >>= 1u;
    }
    return acc;
}

bool sqrt_leq(const Rational& a, const Rational& c) {
    if (a < 0) fail(ErrorCode::InvalidArgument, "sqrt of negative value");
    if (c < 0) return false;
    return a <= c * c;
}

Rational sqrt_upper_bound(const Rational& a, int bits) {
    if (a < 0) fail(ErrorCode::InvalidArgument, "sqrt of negative value");
    if (a == 0) return Rational(0);
    // start from the double estimate, then certify by squaring
    double est = std::sqrt(to_double(a));
    Rational u = rational_from_double(est * (1.0 + 1e-9) + 1e-300);
    while (u * u < a) u *= Rational(1048577, 1048576);
    // tighten: bisect between a lower bound and u
    Rational lo = u / 2;
    if (lo * lo > a) lo = Rational(0);
    for (int i = 0; i < bits; ++i) {
        Rational mid = (lo + u) / 2;
        if (mid * mid >= a)
            u = mid;
        else
            lo = mid;
    }
    return u;
}

} // namespace steinhaus
