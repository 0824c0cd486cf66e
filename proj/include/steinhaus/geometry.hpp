#pragma once

#include <array>
#include <compare>
#include <vector>

#include "steinhaus/rational.hpp"

namespace steinhaus {

/// Exact point in R^d, d <= 3; unused coordinates stay zero.
struct RatPoint {
    std::array<Rational, 3> x{Rational(0), Rational(0), Rational(0)};
    int dim = 1;

    static RatPoint of(int dim, Rational a, Rational b = Rational(0), Rational c = Rational(0)) {
        RatPoint p;
        p.dim = dim;
        p.x = {std::move(a), std::move(b), std::move(c)};
        return p;
    }

    const Rational& operator[](int i) const { return x[static_cast<std::size_t>(i)]; }
    Rational& operator[](int i) { return x[static_cast<std::size_t>(i)]; }

    bool operator==(const RatPoint& o) const { return dim == o.dim && x == o.x; }

    friend RatPoint operator+(const RatPoint& a, const RatPoint& b) {
        RatPoint r = a;
        for (int i = 0; i < a.dim; ++i) r.x[i] += b.x[i];
        return r;
    }
    friend RatPoint operator-(const RatPoint& a, const RatPoint& b) {
        RatPoint r = a;
        for (int i = 0; i < a.dim; ++i) r.x[i] -= b.x[i];
        return r;
    }
    friend RatPoint operator*(const Rational& s, const RatPoint& a) {
        RatPoint r = a;
        for (int i = 0; i < a.dim; ++i) r.x[i] *= s;
        return r;
    }
};

bool lex_less(const RatPoint& a, const RatPoint& b);

Rational dot(const RatPoint& a, const RatPoint& b);
Rational dist_sq(const RatPoint& a, const RatPoint& b);
Rational norm_sq(const RatPoint& a);

/// 2D cross product (b-a) x (c-a); positive = left turn.
Rational orient2d(const RatPoint& a, const RatPoint& b, const RatPoint& c);

/// Signed volume of the parallelepiped (b-a, c-a, d-a); positive = d above plane abc (right-handed).
Rational orient3d(const RatPoint& a, const RatPoint& b, const RatPoint& c, const RatPoint& d);

RatPoint cross3(const RatPoint& a, const RatPoint& b);

/// Squared distance from p to the closed segment [a, b] (exact).
Rational dist_sq_point_segment(const RatPoint& p, const RatPoint& a, const RatPoint& b);

/// Squared distance from p to the closed triangle (a, b, c) in R^3 (exact).
Rational dist_sq_point_triangle(const RatPoint& p, const RatPoint& a, const RatPoint& b,
                                const RatPoint& c);

/// Affine rank of a set of points (0 = single point, d = full dimensional).
int affine_rank(const std::vector<RatPoint>& pts);

} // namespace steinhaus
