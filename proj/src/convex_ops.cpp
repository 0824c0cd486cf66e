#include "steinhaus/convex_ops.hpp"

#include <algorithm>
#include <cmath>

#include "steinhaus/detail/bitgrid.hpp"
#include "steinhaus/error.hpp"

namespace steinhaus {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kPi = 3.14159265358979323846;

} // namespace

std::vector<std::array<double, 3>> sample_directions(int dim, int count) {
    std::vector<std::array<double, 3>> out;
    if (dim == 1) {
        out.push_back({1.0, 0, 0});
        out.push_back({-1.0, 0, 0});
        return out;
    }
    if (dim == 2) {
        out.reserve(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i) {
            double a = 2.0 * kPi * i / count;
            out.push_back({std::cos(a), std::sin(a), 0});
        }
        return out;
    }
    // Fibonacci sphere
    const double ga = kPi * (3.0 - std::sqrt(5.0));
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        double z = 1.0 - 2.0 * (i + 0.5) / count;
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        double a = ga * i;
        out.push_back({r * std::cos(a), r * std::sin(a), z});
    }
    return out;
}

namespace {

// exact 1D profile of a symmetric interval union
void profile_1d(const IntervalUnion& u, double& r, double& dmax) {
    // component containing 0 gives r/2; max endpoint gives D/2
    r = 0;
    for (const auto& iv : u.parts()) {
        if (iv.lo <= 0 && 0 <= iv.hi) {
            r = 2.0 * to_double(std::min(-iv.lo, iv.hi));
            break;
        }
    }
    dmax = 2.0 * to_double(std::max(-u.min(), u.max()));
}

// ray exit parameter for a symmetric convex polygon/polytope with 0 inside
double polytope_exit(const ConvexPolytope& poly, const std::array<double, 3>& th) {
    double best = 1e300;
    if (poly.dim() == 2) {
        const auto& v = poly.vertices();
        const std::size_t n = v.size();
        for (std::size_t i = 0; i < n; ++i) {
            const auto& a = v[i];
            const auto& b = v[(i + 1) % n];
            // edge normal pointing outward for a CCW polygon
            double ex = to_double(b.x[0] - a.x[0]), ey = to_double(b.x[1] - a.x[1]);
            double nx = ey, ny = -ex;
            double den = nx * th[0] + ny * th[1];
            double off = nx * to_double(a.x[0]) + ny * to_double(a.x[1]);
            if (den > 1e-300) best = std::min(best, std::max(0.0, off / den));
        }
        return best == 1e300 ? 0.0 : best;
    }
    const auto& v = poly.vertices();
    for (const auto& f : poly.facets()) {
        const auto& a = v[static_cast<std::size_t>(f[0])];
        const auto& b = v[static_cast<std::size_t>(f[1])];
        const auto& c = v[static_cast<std::size_t>(f[2])];
        RatPoint nr = cross3(b - a, c - a);
        double nx = to_double(nr.x[0]), ny = to_double(nr.x[1]), nz = to_double(nr.x[2]);
        double off = nx * to_double(a.x[0]) + ny * to_double(a.x[1]) + nz * to_double(a.x[2]);
        double den = nx * th[0] + ny * th[1] + nz * th[2];
        if (off < 0) {
            off = -off;
            den = -den;
        }
        if (den > 1e-300) best = std::min(best, std::max(0.0, off / den));
    }
    return best == 1e300 ? 0.0 : best;
}

// grid ray scan: first gap and last hit along t*theta, in absolute units
void grid_ray(const GridSet& g, const detail::BitGrid& b, const std::array<double, 3>& th,
              double& first_gap, double& last_hit) {
    const double h = to_double(g.cell_size());
    CellIndex lo = g.bbox_lo(), hi = g.bbox_hi();
    double reach = 0;
    for (int i = 0; i < g.dim(); ++i) {
        reach = std::max(reach, std::abs(lo[i]) * h + h);
        reach = std::max(reach, std::abs(hi[i] + 1) * h + h);
    }
    reach *= 1.8;
    const double step = h / 4;
    first_gap = -1;
    last_hit = 0;
    for (double t = 0; t <= reach; t += step) {
        std::int64_t cx = static_cast<std::int64_t>(std::floor(t * th[0] / h));
        std::int64_t cy = g.dim() >= 2 ? static_cast<std::int64_t>(std::floor(t * th[1] / h)) : 0;
        std::int64_t cz = g.dim() >= 3 ? static_cast<std::int64_t>(std::floor(t * th[2] / h)) : 0;
        bool in = b.test(cx, cy, cz);
        if (in) {
            last_hit = t;
        } else if (first_gap < 0) {
            first_gap = t;
        }
    }
    if (first_gap < 0) first_gap = reach;
}

} // namespace

QuasiSupportProfile quasi_support(const CompactSetHandle& k, const DirectionPlan& plan) {
    if (!set_is_symmetric(k))
        fail(ErrorCode::NotSymmetric, "quasi-support needs K = -K with 0 in K");
    QuasiSupportProfile prof;
    prof.dim = set_dim(k);
    prof.directions = sample_directions(prof.dim, plan.count);
    prof.r_theta.resize(prof.directions.size());
    prof.d_theta.resize(prof.directions.size());

    std::visit(
        overloaded{
            [&](const IntervalUnion& u) {
                double r, d;
                profile_1d(u, r, d);
                for (std::size_t i = 0; i < prof.directions.size(); ++i) {
                    prof.r_theta[i] = r;
                    prof.d_theta[i] = d;
                }
            },
            [&](const ConvexPolytope& c) {
                for (std::size_t i = 0; i < prof.directions.size(); ++i) {
                    double t = polytope_exit(c, prof.directions[i]);
                    prof.r_theta[i] = 2 * t;
                    prof.d_theta[i] = 2 * t;
                }
            },
            [&](const PointSet& p) {
                // profiles of a finite set: r = 0; D from near-exact ray hits
                for (std::size_t i = 0; i < prof.directions.size(); ++i) {
                    const auto& th = prof.directions[i];
                    double dmax = 0;
                    for (const auto& q : p.points()) {
                        double px = to_double(q.x[0]), py = to_double(q.x[1]),
                               pz = to_double(q.x[2]);
                        double t = px * th[0] + py * th[1] + pz * th[2];
                        if (t <= 0) continue;
                        double dx = px - t * th[0], dy = py - t * th[1], dz = pz - t * th[2];
                        if (dx * dx + dy * dy + dz * dz < 1e-18) dmax = std::max(dmax, t);
                    }
                    prof.r_theta[i] = 0;
                    prof.d_theta[i] = 2 * dmax;
                }
            },
            [&](const GridSet& g) {
                detail::BitGrid b;
                CellIndex lo = g.bbox_lo(), hi = g.bbox_hi();
                std::array<std::int64_t, 3> blo{lo[0], lo[1], lo[2]};
                std::array<int, 3> n{hi[0] - lo[0] + 1, hi[1] - lo[1] + 1, hi[2] - lo[2] + 1};
                for (int i = g.dim(); i < 3; ++i) {
                    blo[i] = 0;
                    n[i] = 1;
                }
                b.init(g.dim(), blo, n);
                for (const auto& c : g.cells()) b.set(c[0], c[1], c[2]);
                prof.error = to_double(g.cell_size()) * std::sqrt(static_cast<double>(g.dim()));
                for (std::size_t i = 0; i < prof.directions.size(); ++i) {
                    double gap, hit;
                    grid_ray(g, b, prof.directions[i], gap, hit);
                    prof.r_theta[i] = 2 * gap;
                    prof.d_theta[i] = 2 * hit;
                }
            },
            [&](const GridSandwich& s) {
                // inner layer for r (sound), outer for D
                auto pi = quasi_support(CompactSetHandle(s.inner), plan);
                auto po = quasi_support(CompactSetHandle(s.outer), plan);
                prof.r_theta = pi.r_theta;
                prof.d_theta = po.d_theta;
                prof.error = std::max(pi.error, po.error);
            },
        },
        k);

    prof.r_min = *std::min_element(prof.r_theta.begin(), prof.r_theta.end());
    prof.d_max = *std::max_element(prof.d_theta.begin(), prof.d_theta.end());
    return prof;
}

namespace {

// Exact inner-star test for a grid cell: the segment from the cell center to
// the origin must stay inside the cell union. Walks the lattice crossings in
// exact rational arithmetic.
bool center_segment_inside(const GridSet& g, const detail::BitGrid& b, const CellIndex& c) {
    const int d = g.dim();
    // start point in lattice units: z + 1/2 per axis; target: origin
    std::array<Rational, 3> p{Rational(2 * c[0] + 1, 2), Rational(2 * c[1] + 1, 2),
                              Rational(2 * c[2] + 1, 2)};
    for (int i = d; i < 3; ++i) p[i] = 0;
    // current cell; advance along t in [0,1]: x(t) = p*(1-t)
    std::array<std::int64_t, 3> cur{c[0], c[1], c[2]};
    Rational t(0);
    while (true) {
        if (!b.test(cur[0], cur[1], cur[2])) return false;
        // next crossing per axis
        Rational tbest(2);
        for (int i = 0; i < d; ++i) {
            if (p[i] == 0) continue;
            // moving toward 0: next lattice plane from cur in that direction
            Rational target = p[i] > 0 ? Rational(cur[i]) : Rational(cur[i] + 1);
            // x_i(t) = p_i (1 - t) = target  =>  t = 1 - target / p_i
            if (target == 0 && p[i] > 0 && cur[i] == 0) continue; // already at the origin wall
            Rational ti = 1 - target / p[i];
            if (ti > t && ti < tbest) tbest = ti;
        }
        if (tbest >= 1) return true; // reached the origin cell
        // advance across all planes crossed at tbest
        for (int i = 0; i < d; ++i) {
            if (p[i] == 0) continue;
            Rational target = p[i] > 0 ? Rational(cur[i]) : Rational(cur[i] + 1);
            if (p[i] != 0 && 1 - target / p[i] == tbest) cur[i] += p[i] > 0 ? -1 : 1;
        }
        t = tbest;
    }
}

} // namespace

CompactSetHandle star_subset(const CompactSetHandle& k, const DirectionPlan& plan) {
    if (!set_is_symmetric(k)) fail(ErrorCode::NotSymmetric, "star subset needs a symmetric set");
    return std::visit(
        overloaded{
            [&](const IntervalUnion& u) -> CompactSetHandle {
                double r, d;
                profile_1d(u, r, d);
                (void)d;
                Rational half(0);
                for (const auto& iv : u.parts()) {
                    if (iv.lo <= 0 && 0 <= iv.hi) {
                        half = std::min(-iv.lo, iv.hi);
                        break;
                    }
                }
                return IntervalUnion::single(-half, half);
            },
            [&](const ConvexPolytope& c) -> CompactSetHandle {
                return c; // symmetric convex: star is the body itself
            },
            [&](const PointSet& p) -> CompactSetHandle {
                RatPoint zero;
                zero.dim = p.dim();
                return PointSet::from_points(p.dim(), {zero});
            },
            [&](const GridSet& g) -> CompactSetHandle {
                detail::BitGrid b;
                CellIndex lo = g.bbox_lo(), hi = g.bbox_hi();
                std::array<std::int64_t, 3> blo{lo[0], lo[1], lo[2]};
                std::array<int, 3> n{hi[0] - lo[0] + 1, hi[1] - lo[1] + 1, hi[2] - lo[2] + 1};
                for (int i = g.dim(); i < 3; ++i) {
                    blo[i] = 0;
                    n[i] = 1;
                }
                b.init(g.dim(), blo, n);
                for (const auto& c : g.cells()) b.set(c[0], c[1], c[2]);
                std::vector<CellIndex> kept;
                for (const auto& c : g.cells()) {
                    if (center_segment_inside(g, b, c)) kept.push_back(c);
                }
                if (kept.empty()) {
                    // degenerate star: keep the origin cells that exist
                    for (int m = 0; m < (1 << g.dim()); ++m) {
                        CellIndex c{0, 0, 0};
                        for (int i = 0; i < g.dim(); ++i) c[i] = ((m >> i) & 1) ? -1 : 0;
                        if (g.contains_cell(c)) kept.push_back(c);
                    }
                }
                return GridSet::from_cells(g.dim(), g.cell_size(), std::move(kept));
            },
            [&](const GridSandwich& s) -> CompactSetHandle {
                return star_subset(CompactSetHandle(s.inner), plan);
            },
        },
        k);
}

CaratheodoryDecomposition caratheodory_decompose(const RatPoint& y, const PointSet& k1) {
    const int d = k1.dim();
    ConvexPolytope hull = ConvexPolytope::hull_of(k1);
    if (!hull.contains(y)) fail(ErrorCode::PointOutsideHull, "query point is outside Conv(K1)");

    CaratheodoryDecomposition dec;
    const auto& v = hull.vertices();

    auto finish = [&](std::vector<RatPoint> base, std::vector<Rational> w) {
        // drop zero weights, order by weight descending (t_0 first)
        std::vector<std::size_t> idx(base.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return w[a] > w[b]; });
        for (std::size_t i : idx) {
            if (w[i] == 0) continue;
            dec.base.push_back(base[i]);
            dec.weights.push_back(w[i]);
        }
        if (dec.base.empty()) {
            dec.base.push_back(base.front());
            dec.weights.push_back(Rational(1));
        }
    };

    if (hull.affine_dim() == 0) {
        finish({v.front()}, {Rational(1)});
        return dec;
    }
    if (hull.affine_dim() == 1) {
        const RatPoint& a = v.front();
        const RatPoint& b = v.back();
        RatPoint ab = b - a;
        Rational t = dot(y - a, ab) / norm_sq(ab);
        finish({a, b}, {1 - t, t});
        return dec;
    }
    if (d == 2) {
        // fan triangulation from v[0]
        const std::size_t n = v.size();
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const RatPoint &a = v[0], &b = v[i], &c = v[i + 1];
            Rational den = orient2d(a, b, c);
            if (den == 0) continue;
            Rational wb = orient2d(a, y, c) / den;
            Rational wc = orient2d(a, b, y) / den;
            Rational wa = 1 - wb - wc;
            if (wa >= 0 && wb >= 0 && wc >= 0) {
                finish({a, b, c}, {wa, wb, wc});
                return dec;
            }
        }
        fail(ErrorCode::PointOutsideHull, "no containing triangle found");
    }
    // d == 3
    if (hull.affine_dim() == 2) {
        // planar polygon: fan over any vertex triples containing y
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = i + 1; j < v.size(); ++j)
                for (std::size_t l = j + 1; l < v.size(); ++l) {
                    const RatPoint &a = v[i], &b = v[j], &c = v[l];
                    RatPoint nr = cross3(b - a, c - a);
                    Rational nn = norm_sq(nr);
                    if (nn == 0) continue;
                    if (dist_sq_point_triangle(y, a, b, c) != 0) continue;
                    // barycentric via projected areas
                    Rational wb = dot(cross3(y - a, c - a), nr) / nn;
                    Rational wc = dot(cross3(b - a, y - a), nr) / nn;
                    Rational wa = 1 - wb - wc;
                    finish({a, b, c}, {wa, wb, wc});
                    return dec;
                }
        fail(ErrorCode::PointOutsideHull, "no containing triangle found");
    }
    // full-dimensional: tetrahedral fan from v[0] over hull facets
    const RatPoint& apex = v.front();
    for (const auto& f : hull.facets()) {
        const RatPoint& a = v[static_cast<std::size_t>(f[0])];
        const RatPoint& b = v[static_cast<std::size_t>(f[1])];
        const RatPoint& c = v[static_cast<std::size_t>(f[2])];
        Rational den = orient3d(apex, a, b, c);
        if (den == 0) continue;
        Rational wa = orient3d(apex, y, b, c) / den;
        Rational wb = orient3d(apex, a, y, c) / den;
        Rational wc = orient3d(apex, a, b, y) / den;
        Rational w0 = 1 - wa - wb - wc;
        if (w0 >= 0 && wa >= 0 && wb >= 0 && wc >= 0) {
            finish({apex, a, b, c}, {w0, wa, wb, wc});
            return dec;
        }
    }
    fail(ErrorCode::PointOutsideHull, "no containing simplex found");
}

DyadicRoundResult dyadic_round(const CaratheodoryDecomposition& dec, unsigned n, const RatPoint& y,
                               const Rational& diameter_sq_of_k0) {
    const int d = y.dim;
    // threshold n >= ceil(log2(d(d+1)))
    int need = ceil_log2(Rational(d * (d + 1)));
    if (static_cast<int>(n) < need)
        fail(ErrorCode::QThresholdNotMet, "n below ceil(log2(d(d+1)))");
    const BigInt mesh = BigInt(1) << (n - 1);
    DyadicRoundResult out;
    out.q.resize(dec.weights.size());
    Rational sum_rest(0);
    for (std::size_t i = 1; i < dec.weights.size(); ++i) {
        // nearest mesh point: |q - t| <= 1/2^n
        Rational scaled = dec.weights[i] * Rational(mesh);
        BigInt a = rational_floor(scaled + Rational(1, 2));
        out.q[i] = Rational(a, mesh);
        sum_rest += out.q[i];
    }
    out.q[0] = 1 - sum_rest;
    if (out.q[0] < 0)
        fail(ErrorCode::QThresholdNotMet, "rounded weights left a negative remainder");
    RatPoint x;
    x.dim = d;
    for (std::size_t i = 0; i < dec.base.size(); ++i) x = x + out.q[i] * dec.base[i];
    out.point = x;
    out.dist_sq = dist_sq(x, y);
    out.bound_sq = diameter_sq_of_k0 * Rational(d * d) / Rational(BigInt(1) << (2 * n));
    // certificate: dyadic nonnegative weights with denominator 2^(n-1) summing to 1
    BigInt asum(0);
    bool ok = true;
    for (const auto& qi : out.q) {
        if (qi < 0) ok = false;
        Rational scaled = qi * Rational(mesh);
        if (denominator(scaled) != 1) ok = false;
        asum += numerator(scaled);
    }
    out.certified = ok && asum == mesh;
    return out;
}

namespace {

void enumerate_compositions(unsigned total, std::size_t idx, std::vector<unsigned>& alpha,
                            const std::vector<RatPoint>& pts, const BigInt& mesh,
                            std::vector<RatPoint>& out) {
    if (idx + 1 == alpha.size()) {
        alpha[idx] = total;
        RatPoint p;
        p.dim = pts.front().dim;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (alpha[i] == 0) continue;
            p = p + Rational(BigInt(alpha[i]), mesh) * pts[i];
        }
        out.push_back(p);
        return;
    }
    for (unsigned a = 0; a <= total; ++a) {
        alpha[idx] = a;
        enumerate_compositions(total - a, idx + 1, alpha, pts, mesh, out);
    }
}

} // namespace

PointSet weighted_combination_set(const PointSet& k1, unsigned n, std::size_t cap) {
    if (n < 1) fail(ErrorCode::InvalidArgument, "weighted combinations need n >= 1");
    const unsigned total = 1u << (n - 1);
    const std::size_t npts = k1.size();
    // composition count C(total + npts - 1, npts - 1)
    double logc = 0;
    for (std::size_t i = 1; i < npts; ++i)
        logc += std::log2(static_cast<double>(total + i)) - std::log2(static_cast<double>(i));
    if (logc > std::log2(static_cast<double>(cap)))
        fail(ErrorCode::BudgetExceeded, "weighted combination enumeration too large");
    std::vector<unsigned> alpha(npts, 0);
    std::vector<RatPoint> out;
    enumerate_compositions(total, 0, alpha, k1.points(), BigInt(total), out);
    return PointSet::from_points(k1.dim(), std::move(out));
}

OriginBall origin_ball_radius(const CompactSetHandle& k) {
    if (!set_is_symmetric(k)) fail(ErrorCode::NotSymmetric, "origin ball needs a symmetric set");
    return std::visit(
        overloaded{
            [&](const IntervalUnion& u) -> OriginBall {
                Rational half(0);
                for (const auto& iv : u.parts()) {
                    if (iv.lo <= 0 && 0 <= iv.hi) {
                        half = std::min(-iv.lo, iv.hi);
                        break;
                    }
                }
                return OriginBall{half * half, half * half};
            },
            [&](const PointSet&) -> OriginBall { return OriginBall{Rational(0), Rational(0)}; },
            [&](const ConvexPolytope& c) -> OriginBall {
                RatPoint zero;
                zero.dim = c.dim();
                if (!c.contains(zero) || c.degenerate()) return OriginBall{Rational(0), Rational(0)};
                Rational best(-1);
                if (c.dim() == 1) {
                    Rational lo = -c.vertices().front().x[0];
                    Rational hi = c.vertices().back().x[0];
                    Rational r = std::min(lo, hi);
                    if (r < 0) r = 0;
                    return OriginBall{r * r, r * r};
                }
                if (c.dim() == 2) {
                    const auto& v = c.vertices();
                    const std::size_t m = v.size();
                    for (std::size_t i = 0; i < m; ++i) {
                        const RatPoint& a = v[i];
                        const RatPoint& b = v[(i + 1) % m];
                        Rational num = orient2d(a, b, zero);
                        if (num < 0) return OriginBall{Rational(0), Rational(0)};
                        Rational den = dist_sq(a, b);
                        Rational d2 = num * num / den;
                        if (best < 0 || d2 < best) best = d2;
                    }
                } else {
                    const auto& v = c.vertices();
                    for (const auto& f : c.facets()) {
                        const RatPoint& a = v[static_cast<std::size_t>(f[0])];
                        const RatPoint& b = v[static_cast<std::size_t>(f[1])];
                        const RatPoint& cc = v[static_cast<std::size_t>(f[2])];
                        RatPoint nr = cross3(b - a, cc - a);
                        Rational num = dot(a, nr);
                        Rational d2 = num * num / norm_sq(nr);
                        if (best < 0 || d2 < best) best = d2;
                    }
                }
                if (best < 0) best = 0;
                return OriginBall{best, best};
            },
            [&](const GridSet& g) -> OriginBall {
                Rational r2 = origin_ball_radius_sq(g);
                return OriginBall{r2, r2};
            },
            [&](const GridSandwich& s) -> OriginBall {
                return OriginBall{origin_ball_radius_sq(s.inner), origin_ball_radius_sq(s.outer)};
            },
        },
        k);
}

} // namespace steinhaus
