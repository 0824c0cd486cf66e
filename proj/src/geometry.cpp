#include "steinhaus/geometry.hpp"

namespace steinhaus {

bool lex_less(const RatPoint& a, const RatPoint& b) {
    for (int i = 0; i < a.dim; ++i) {
        if (a.x[i] != b.x[i]) return a.x[i] < b.x[i];
    }
    return false;
}

Rational dot(const RatPoint& a, const RatPoint& b) {
    Rational s(0);
    for (int i = 0; i < a.dim; ++i) s += a.x[i] * b.x[i];
    return s;
}

Rational dist_sq(const RatPoint& a, const RatPoint& b) {
    Rational s(0);
    for (int i = 0; i < a.dim; ++i) {
        Rational d = a.x[i] - b.x[i];
        s += d * d;
    }
    return s;
}

Rational norm_sq(const RatPoint& a) { return dot(a, a); }

Rational orient2d(const RatPoint& a, const RatPoint& b, const RatPoint& c) {
    return (b.x[0] - a.x[0]) * (c.x[1] - a.x[1]) - (b.x[1] - a.x[1]) * (c.x[0] - a.x[0]);
}

Rational orient3d(const RatPoint& a, const RatPoint& b, const RatPoint& c, const RatPoint& d) {
    Rational bx = b.x[0] - a.x[0], by = b.x[1] - a.x[1], bz = b.x[2] - a.x[2];
    Rational cx = c.x[0] - a.x[0], cy = c.x[1] - a.x[1], cz = c.x[2] - a.x[2];
    Rational dx = d.x[0] - a.x[0], dy = d.x[1] - a.x[1], dz = d.x[2] - a.x[2];
    return bx * (cy * dz - cz * dy) - by * (cx * dz - cz * dx) + bz * (cx * dy - cy * dx);
}

RatPoint cross3(const RatPoint& a, const RatPoint& b) {
    RatPoint r;
    r.dim = 3;
    r.x[0] = a.x[1] * b.x[2] - a.x[2] * b.x[1];
    r.x[1] = a.x[2] * b.x[0] - a.x[0] * b.x[2];
    r.x[2] = a.x[0] * b.x[1] - a.x[1] * b.x[0];
    return r;
}

Rational dist_sq_point_segment(const RatPoint& p, const RatPoint& a, const RatPoint& b) {
    RatPoint ab = b - a;
    Rational den = norm_sq(ab);
    if (den == 0) return dist_sq(p, a);
    Rational t = dot(p - a, ab) / den;
    if (t < 0) t = 0;
    if (t > 1) t = 1;
    RatPoint q = a + t * ab;
    return dist_sq(p, q);
}

Rational dist_sq_point_triangle(const RatPoint& p, const RatPoint& a, const RatPoint& b,
                                const RatPoint& c) {
    // project p onto the triangle plane, test barycentric signs, else fall back to edges
    RatPoint n = cross3(b - a, c - a);
    Rational nn = norm_sq(n);
    if (nn == 0) {
        // degenerate triangle: longest edge carries it
        Rational d1 = dist_sq_point_segment(p, a, b);
        Rational d2 = dist_sq_point_segment(p, b, c);
        Rational d3 = dist_sq_point_segment(p, a, c);
        return std::min(std::min(d1, d2), d3);
    }
    Rational t = dot(p - a, n) / nn;
    RatPoint q = p - t * n; // foot of perpendicular
    // inside test via same-side orientations against n
    Rational s1 = dot(cross3(b - a, q - a), n);
    Rational s2 = dot(cross3(c - b, q - b), n);
    Rational s3 = dot(cross3(a - c, q - c), n);
    if (s1 >= 0 && s2 >= 0 && s3 >= 0) return dist_sq(p, q);
    Rational d1 = dist_sq_point_segment(p, a, b);
    Rational d2 = dist_sq_point_segment(p, b, c);
    Rational d3 = dist_sq_point_segment(p, a, c);
    return std::min(std::min(d1, d2), d3);
}

int affine_rank(const std::vector<RatPoint>& pts) {
    if (pts.empty()) return -1;
    const RatPoint& o = pts.front();
    std::vector<RatPoint> basis;
    for (std::size_t i = 1; i < pts.size() && basis.size() < 3; ++i) {
        RatPoint v = pts[i] - o;
        // Gram-Schmidt-free rank test with exact predicates
        if (basis.empty()) {
            if (norm_sq(v) != 0) basis.push_back(v);
        } else if (basis.size() == 1) {
            if (o.dim == 1) continue;
            RatPoint c = o.dim == 2
                             ? RatPoint::of(2, basis[0].x[0] * v.x[1] - basis[0].x[1] * v.x[0])
                             : cross3(basis[0], v);
            if (norm_sq(c) != 0) basis.push_back(v);
        } else {
            if (o.dim < 3) continue;
            if (dot(cross3(basis[0], basis[1]), v) != 0) basis.push_back(v);
        }
    }
    return static_cast<int>(basis.size());
}

} // namespace steinhaus
