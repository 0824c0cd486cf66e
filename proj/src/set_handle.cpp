#include "steinhaus/set_handle.hpp"

#include <algorithm>

#include "steinhaus/error.hpp"

namespace steinhaus {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

int set_dim(const CompactSetHandle& k) {
    return std::visit(overloaded{
                          [](const IntervalUnion&) { return 1; },
                          [](const GridSet& g) { return g.dim(); },
                          [](const GridSandwich& s) { return s.inner.dim(); },
                          [](const PointSet& p) { return p.dim(); },
                          [](const ConvexPolytope& c) { return c.dim(); },
                      },
                      k);
}

VolumeResult set_volume(const CompactSetHandle& k) {
    return std::visit(
        overloaded{
            [](const IntervalUnion& u) { return VolumeResult{u.volume(), u.volume()}; },
            [](const GridSet& g) { return VolumeResult{g.volume(), g.volume()}; },
            [](const GridSandwich& s) { return VolumeResult{s.inner.volume(), s.outer.volume()}; },
            [](const PointSet&) { return VolumeResult{Rational(0), Rational(0)}; },
            [](const ConvexPolytope& c) { return VolumeResult{c.volume(), c.volume()}; },
        },
        k);
}

Rational set_diameter_sq(const CompactSetHandle& k) {
    return std::visit(overloaded{
                          [](const IntervalUnion& u) {
                              Rational d = u.diameter();
                              return d * d;
                          },
                          [](const GridSet& g) { return g.diameter_sq(); },
                          [](const GridSandwich& s) { return s.outer.diameter_sq(); },
                          [](const PointSet& p) { return p.diameter_sq(); },
                          [](const ConvexPolytope& c) { return c.diameter_sq(); },
                      },
                      k);
}

Rational set_distance_sq(const RatPoint& p, const CompactSetHandle& k) {
    if (p.dim != set_dim(k)) fail(ErrorCode::DimensionMismatch, "point dimension mismatch");
    return std::visit(overloaded{
                          [&](const IntervalUnion& u) {
                              Rational d = u.distance_to(p.x[0]);
                              return d * d;
                          },
                          [&](const GridSet& g) { return g.distance_sq_to(p); },
                          [&](const GridSandwich& s) { return s.outer.distance_sq_to(p); },
                          [&](const PointSet& ps) { return ps.distance_sq_to(p); },
                          [&](const ConvexPolytope& c) { return c.distance_sq_to(p); },
                      },
                      k);
}

namespace {

// All local maxima of min-distance-to-sites over a convex polygon are at
// polygon vertices, bisector-edge crossings, or circumcenters of site triples.
Rational sup_dist_sq_over_polytope(const ConvexPolytope& poly, const PointSet& pts) {
    const int d = poly.dim();
    if (d == 1 || poly.affine_dim() <= 1) {
        // segment: candidates are endpoints and bisector points between sites
        const RatPoint a = poly.vertices().front();
        const RatPoint b = poly.vertices().back();
        Rational best = std::max(pts.distance_sq_to(a), pts.distance_sq_to(b));
        RatPoint ab = b - a;
        Rational den = norm_sq(ab);
        if (den == 0) return best;
        const auto& sites = pts.points();
        for (std::size_t i = 0; i < sites.size(); ++i)
            for (std::size_t j = i + 1; j < sites.size(); ++j) {
                // |y - si| = |y - sj| with y = a + t(b-a): linear in t
                RatPoint mid = Rational(1, 2) * (sites[i] + sites[j]);
                RatPoint dir = sites[j] - sites[i];
                Rational num = dot(mid - a, dir);
                Rational dd = dot(ab, dir);
                if (dd == 0) continue;
                Rational t = num / dd;
                if (t < 0 || t > 1) continue;
                RatPoint y = a + t * ab;
                best = std::max(best, pts.distance_sq_to(y));
            }
        return best;
    }
    if (d != 2) fail(ErrorCode::InvalidArgument, "exact point-polytope hausdorff needs d <= 2");
    const auto& sites = pts.points();
    Rational best(0);
    auto consider = [&](const RatPoint& y) { best = std::max(best, pts.distance_sq_to(y)); };
    const auto& v = poly.vertices();
    const std::size_t n = v.size();
    for (const auto& p : v) consider(p);
    // bisector crossings on each edge
    for (std::size_t e = 0; e < n; ++e) {
        const RatPoint& a = v[e];
        const RatPoint& b = v[(e + 1) % n];
        RatPoint ab = b - a;
        for (std::size_t i = 0; i < sites.size(); ++i)
            for (std::size_t j = i + 1; j < sites.size(); ++j) {
                RatPoint mid = Rational(1, 2) * (sites[i] + sites[j]);
                RatPoint dir = sites[j] - sites[i];
                Rational dd = dot(ab, dir);
                if (dd == 0) continue;
                Rational t = dot(mid - a, dir) / dd;
                if (t < 0 || t > 1) continue;
                consider(a + t * ab);
            }
    }
    // circumcenters of site triples that land inside the polygon
    for (std::size_t i = 0; i < sites.size(); ++i)
        for (std::size_t j = i + 1; j < sites.size(); ++j)
            for (std::size_t k = j + 1; k < sites.size(); ++k) {
                const RatPoint &p = sites[i], &q = sites[j], &r = sites[k];
                Rational den = 2 * ((q.x[0] - p.x[0]) * (r.x[1] - p.x[1]) -
                                    (q.x[1] - p.x[1]) * (r.x[0] - p.x[0]));
                if (den == 0) continue;
                Rational pq = norm_sq(q) - norm_sq(p);
                Rational pr = norm_sq(r) - norm_sq(p);
                RatPoint c = RatPoint::of(
                    2, ((r.x[1] - p.x[1]) * pq - (q.x[1] - p.x[1]) * pr) / den,
                    ((q.x[0] - p.x[0]) * pr - (r.x[0] - p.x[0]) * pq) / den);
                if (poly.contains(c)) consider(c);
            }
    return best;
}

} // namespace

Rational hausdorff_sq_points_polytope(const PointSet& pts, const ConvexPolytope& poly) {
    Rational h1(0);
    for (const auto& p : pts.points()) h1 = std::max(h1, poly.distance_sq_to(p));
    Rational h2 = sup_dist_sq_over_polytope(poly, pts);
    return std::max(h1, h2);
}

HausdorffResult hausdorff_distance(const CompactSetHandle& a, const CompactSetHandle& b) {
    if (set_dim(a) != set_dim(b)) fail(ErrorCode::DimensionMismatch, "hausdorff on mixed dimensions");
    HausdorffResult out;
    if (const auto* ia = std::get_if<IntervalUnion>(&a)) {
        if (const auto* ib = std::get_if<IntervalUnion>(&b)) {
            Rational d = IntervalUnion::hausdorff(*ia, *ib);
            out.exact = true;
            out.value_sq = d * d;
            out.value = to_double(d);
            return out;
        }
    }
    if (const auto* pa = std::get_if<PointSet>(&a)) {
        if (const auto* pb = std::get_if<PointSet>(&b)) {
            out.value_sq = PointSet::hausdorff_sq(*pa, *pb);
            out.exact = true;
            out.value = std::sqrt(to_double(out.value_sq));
            return out;
        }
        if (const auto* cb = std::get_if<ConvexPolytope>(&b)) {
            out.value_sq = hausdorff_sq_points_polytope(*pa, *cb);
            out.exact = true;
            out.value = std::sqrt(to_double(out.value_sq));
            return out;
        }
    }
    if (const auto* ca = std::get_if<ConvexPolytope>(&a)) {
        if (const auto* pb = std::get_if<PointSet>(&b)) {
            out.value_sq = hausdorff_sq_points_polytope(*pb, *ca);
            out.exact = true;
            out.value = std::sqrt(to_double(out.value_sq));
            return out;
        }
        if (const auto* cb = std::get_if<ConvexPolytope>(&b)) {
            // both convex: Hausdorff over vertex sets against the other body
            Rational h1(0), h2(0);
            for (const auto& v : ca->vertices()) h1 = std::max(h1, cb->distance_sq_to(v));
            for (const auto& v : cb->vertices()) h2 = std::max(h2, ca->distance_sq_to(v));
            out.value_sq = std::max(h1, h2);
            out.exact = true;
            out.value = std::sqrt(to_double(out.value_sq));
            return out;
        }
    }
    if (const auto* ga = std::get_if<GridSet>(&a)) {
        if (const auto* gb = std::get_if<GridSet>(&b)) {
            GridHausdorff gh = grid_hausdorff(*ga, *gb);
            out.value = gh.value;
            out.error = gh.error;
            return out;
        }
    }
    fail(ErrorCode::InvalidArgument, "hausdorff distance not supported for this pair of representations");
}

GridSet rasterize_handle(const CompactSetHandle& k, const Rational& h, RasterMode mode) {
    return std::visit(
        overloaded{
            [&](const IntervalUnion& u) { return rasterize(u, h, mode); },
            [&](const GridSet& g) -> GridSet {
                if (g.cell_size() == h) return g;
                fail(ErrorCode::InvalidArgument, "re-rasterizing a grid set is not supported");
            },
            [&](const GridSandwich& s) -> GridSet {
                return mode == RasterMode::Inner ? s.inner : s.outer;
            },
            [&](const PointSet& p) { return rasterize(p, h, mode); },
            [&](const ConvexPolytope& c) { return rasterize(c, h, mode); },
        },
        k);
}

bool set_is_symmetric(const CompactSetHandle& k) {
    return std::visit(overloaded{
                          [](const IntervalUnion& u) {
                              return u.is_symmetric() && u.contains(Rational(0));
                          },
                          [](const GridSet& g) { return g.is_symmetric_with_origin(); },
                          [](const GridSandwich& s) {
                              return s.inner.is_symmetric_with_origin() &&
                                     s.outer.is_symmetric_with_origin();
                          },
                          [](const PointSet& p) { return p.is_symmetric_with_origin(); },
                          [](const ConvexPolytope& c) { return c.is_symmetric_with_origin(); },
                      },
                      k);
}

} // namespace steinhaus
