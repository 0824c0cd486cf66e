#include "steinhaus/grid.hpp"

#include <algorithm>
#include <cmath>

#include "steinhaus/detail/bitgrid.hpp"
#include "steinhaus/error.hpp"

namespace steinhaus {

using detail::BitGrid;

namespace {

BitGrid build_bitgrid(const GridSet& u, int margin = 0) {
    CellIndex lo = u.bbox_lo(), hi = u.bbox_hi();
    BitGrid b;
    std::array<std::int64_t, 3> blo{lo[0] - margin, lo[1] - margin, lo[2] - margin};
    std::array<int, 3> n{hi[0] - lo[0] + 1 + 2 * margin, hi[1] - lo[1] + 1 + 2 * margin,
                         hi[2] - lo[2] + 1 + 2 * margin};
    if (u.dim() < 3) {
        blo[2] = 0;
        n[2] = 1;
    }
    if (u.dim() < 2) {
        blo[1] = 0;
        n[1] = 1;
    }
    b.init(u.dim(), blo, n);
    for (const auto& c : u.cells()) b.set(c[0], c[1], c[2]);
    return b;
}

Rational pow_h(const Rational& h, int d) {
    Rational r(1);
    for (int i = 0; i < d; ++i) r *= h;
    return r;
}

} // namespace

GridSet GridSet::from_cells(int dim, Rational h, std::vector<CellIndex> cells) {
    if (dim < 1 || dim > 3) fail(ErrorCode::InvalidArgument, "dimension must be 1..3");
    if (!(h > 0)) fail(ErrorCode::InvalidArgument, "cell size must be positive");
    if (cells.empty()) fail(ErrorCode::EmptySet, "grid set must be nonempty");
    for (auto& c : cells) {
        for (int i = dim; i < 3; ++i) c[i] = 0;
    }
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    GridSet g;
    g.dim_ = dim;
    g.h_ = std::move(h);
    g.cells_ = std::move(cells);
    return g;
}

Rational GridSet::volume() const {
    return Rational(static_cast<long long>(cells_.size())) * pow_h(h_, dim_);
}

CellIndex GridSet::bbox_lo() const {
    CellIndex lo = cells_.front();
    for (const auto& c : cells_) {
        for (int i = 0; i < 3; ++i) lo[i] = std::min(lo[i], c[i]);
    }
    return lo;
}

CellIndex GridSet::bbox_hi() const {
    CellIndex hi = cells_.front();
    for (const auto& c : cells_) {
        for (int i = 0; i < 3; ++i) hi[i] = std::max(hi[i], c[i]);
    }
    return hi;
}

bool GridSet::contains_cell(const CellIndex& z) const {
    return std::binary_search(cells_.begin(), cells_.end(), z);
}

bool GridSet::subset_of(const GridSet& other) const {
    if (dim_ != other.dim_ || h_ != other.h_) return false;
    for (const auto& c : cells_) {
        if (!other.contains_cell(c)) return false;
    }
    return true;
}

Rational GridSet::diameter_sq() const {
    // diameter is attained at corners of boundary cells
    GridSet bd = boundary_cells(*this);
    std::vector<std::array<std::int64_t, 3>> corners;
    corners.reserve(bd.cell_count() * 8);
    const int d = dim_;
    for (const auto& c : bd.cells()) {
        for (int m = 0; m < (1 << d); ++m) {
            std::array<std::int64_t, 3> p{c[0], c[1], c[2]};
            for (int i = 0; i < d; ++i) p[i] += (m >> i) & 1;
            corners.push_back(p);
        }
    }
    std::sort(corners.begin(), corners.end());
    corners.erase(std::unique(corners.begin(), corners.end()), corners.end());

    // prune to the convex hull in 2D when large (int arithmetic is exact here)
    if (d == 2 && corners.size() > 512) {
        auto cross = [](const std::array<std::int64_t, 3>& o, const std::array<std::int64_t, 3>& a,
                        const std::array<std::int64_t, 3>& b) {
            return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
        };
        std::vector<std::array<std::int64_t, 3>> h(2 * corners.size());
        std::size_t k = 0;
        for (const auto& p : corners) {
            while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
            h[k++] = p;
        }
        for (std::size_t i = corners.size() - 1, t = k + 1; i-- > 0;) {
            while (k >= t && cross(h[k - 2], h[k - 1], corners[i]) <= 0) --k;
            h[k++] = corners[i];
        }
        h.resize(k - 1);
        corners = std::move(h);
    }
    std::int64_t best = 0;
    for (std::size_t i = 0; i < corners.size(); ++i) {
        for (std::size_t j = i + 1; j < corners.size(); ++j) {
            std::int64_t s = 0;
            for (int t = 0; t < d; ++t) {
                std::int64_t dd = corners[i][t] - corners[j][t];
                s += dd * dd;
            }
            best = std::max(best, s);
        }
    }
    return Rational(best) * h_ * h_;
}

Rational GridSet::distance_sq_to(const RatPoint& p) const {
    Rational best(-1);
    for (const auto& c : cells_) {
        Rational s(0);
        for (int i = 0; i < dim_; ++i) {
            Rational lo = Rational(c[i]) * h_;
            Rational hi = Rational(c[i] + 1) * h_;
            if (p.x[i] < lo) {
                Rational g = lo - p.x[i];
                s += g * g;
            } else if (p.x[i] > hi) {
                Rational g = p.x[i] - hi;
                s += g * g;
            }
        }
        if (best < 0 || s < best) best = s;
        if (best == 0) break;
    }
    return best;
}

bool GridSet::is_symmetric_with_origin() const {
    for (const auto& c : cells_) {
        CellIndex m{0, 0, 0};
        for (int i = 0; i < dim_; ++i) m[i] = -c[i] - 1;
        if (!contains_cell(m)) return false;
    }
    // the origin itself must be covered
    for (int m = 0; m < (1 << dim_); ++m) {
        CellIndex c{0, 0, 0};
        for (int i = 0; i < dim_; ++i) c[i] = ((m >> i) & 1) ? -1 : 0;
        if (contains_cell(c)) return true;
    }
    return false;
}

GridSet GridSet::translate_cells(const CellIndex& dz) const {
    std::vector<CellIndex> out = cells_;
    for (auto& c : out) {
        for (int i = 0; i < dim_; ++i) c[i] += dz[i];
    }
    return from_cells(dim_, h_, std::move(out));
}

GridSandwich GridSandwich::make(GridSet inner, GridSet outer) {
    if (inner.dim() != outer.dim() || inner.cell_size() != outer.cell_size())
        fail(ErrorCode::InvalidArgument, "sandwich layers must share dimension and resolution");
    if (!inner.subset_of(outer)) fail(ErrorCode::InvalidArgument, "sandwich inner must be within outer");
    return GridSandwich{std::move(inner), std::move(outer)};
}

GridSet rasterize(const IntervalUnion& k, const Rational& h, RasterMode mode) {
    if (!(h > 0)) fail(ErrorCode::InvalidArgument, "cell size must be positive");
    std::vector<CellIndex> cells;
    for (const auto& iv : k.parts()) {
        if (mode == RasterMode::Outer) {
            if (iv.lo == iv.hi) {
                BigInt z = rational_floor(iv.lo / h);
                cells.push_back({static_cast<std::int32_t>(z.convert_to<long long>()), 0, 0});
                continue;
            }
            // cells with positive-measure overlap
            BigInt zlo = rational_floor(iv.lo / h);
            if (Rational(zlo + 1) * h <= iv.lo) ++zlo; // zero overlap at the left edge
            BigInt zhi = rational_ceil(iv.hi / h) - 1;
            if (Rational(zhi) * h >= iv.hi) --zhi;
            for (BigInt z = zlo; z <= zhi; ++z)
                cells.push_back({static_cast<std::int32_t>(z.convert_to<long long>()), 0, 0});
        } else {
            BigInt zlo = rational_ceil(iv.lo / h);
            BigInt zhi = rational_floor(iv.hi / h) - 1;
            for (BigInt z = zlo; z <= zhi; ++z)
                cells.push_back({static_cast<std::int32_t>(z.convert_to<long long>()), 0, 0});
        }
    }
    if (cells.empty()) {
        if (mode == RasterMode::Inner)
            fail(ErrorCode::EmptyInner, "no cell fits inside; refine the resolution");
        fail(ErrorCode::EmptySet, "rasterization produced no cells");
    }
    return GridSet::from_cells(1, h, std::move(cells));
}

namespace {

// Exact x-extent [L, R] of the convex polygon at height y (assumes the line
// meets the polygon). Returns false if the line misses it.
bool polygon_slice(const std::vector<RatPoint>& ccw, const Rational& y, Rational& L, Rational& R) {
    bool any = false;
    const std::size_t n = ccw.size();
    for (std::size_t i = 0; i < n; ++i) {
        const RatPoint& a = ccw[i];
        const RatPoint& b = ccw[(i + 1) % n];
        Rational ay = a.x[1], by = b.x[1];
        if ((ay <= y && by >= y) || (by <= y && ay >= y)) {
            Rational x;
            if (ay == by) {
                // horizontal edge on the line: both endpoints contribute
                for (const Rational& xx : {a.x[0], b.x[0]}) {
                    if (!any) {
                        L = R = xx;
                        any = true;
                    } else {
                        L = std::min(L, xx);
                        R = std::max(R, xx);
                    }
                }
                continue;
            }
            x = a.x[0] + (b.x[0] - a.x[0]) * (y - ay) / (by - ay);
            if (!any) {
                L = R = x;
                any = true;
            } else {
                L = std::min(L, x);
                R = std::max(R, x);
            }
        }
    }
    return any;
}

GridSet rasterize_polygon2d(const ConvexPolytope& k, const Rational& h, RasterMode mode) {
    const auto& v = k.vertices();
    Rational ymin = v.front().x[1], ymax = ymin, xmin = v.front().x[0], xmax = xmin;
    for (const auto& p : v) {
        ymin = std::min(ymin, p.x[1]);
        ymax = std::max(ymax, p.x[1]);
        xmin = std::min(xmin, p.x[0]);
        xmax = std::max(xmax, p.x[0]);
    }
    std::vector<CellIndex> cells;
    BigInt rlo = rational_floor(ymin / h), rhi = rational_ceil(ymax / h);
    for (BigInt zy = rlo - 1; zy <= rhi; ++zy) {
        Rational y0 = Rational(zy) * h, y1 = Rational(zy + 1) * h;
        if (mode == RasterMode::Inner) {
            Rational l0, r0, l1, r1;
            if (!polygon_slice(v, y0, l0, r0) || !polygon_slice(v, y1, l1, r1)) continue;
            Rational L = std::max(l0, l1), R = std::min(r0, r1);
            if (L > R) continue;
            BigInt zlo = rational_ceil(L / h);
            BigInt zhi = rational_floor(R / h) - 1;
            for (BigInt zx = zlo; zx <= zhi; ++zx)
                cells.push_back({static_cast<std::int32_t>(zx.convert_to<long long>()),
                                 static_cast<std::int32_t>(zy.convert_to<long long>()), 0});
        } else {
            // x-extent of polygon ∩ slab: slice lines plus vertices inside the slab
            bool any = false;
            Rational L, R;
            Rational l, r;
            if (y0 >= ymin && y0 <= ymax && polygon_slice(v, y0, l, r)) {
                L = l;
                R = r;
                any = true;
            }
            if (y1 >= ymin && y1 <= ymax && polygon_slice(v, y1, l, r)) {
                if (!any) {
                    L = l;
                    R = r;
                    any = true;
                } else {
                    L = std::min(L, l);
                    R = std::max(R, r);
                }
            }
            for (const auto& p : v) {
                if (p.x[1] > y0 && p.x[1] < y1) {
                    if (!any) {
                        L = R = p.x[0];
                        any = true;
                    } else {
                        L = std::min(L, p.x[0]);
                        R = std::max(R, p.x[0]);
                    }
                }
            }
            if (!any) continue;
            if (L == R) {
                // degenerate slab touch: keep the containing cell (closed cells)
                BigInt zx = rational_floor(L / h);
                cells.push_back({static_cast<std::int32_t>(zx.convert_to<long long>()),
                                 static_cast<std::int32_t>(zy.convert_to<long long>()), 0});
                continue;
            }
            BigInt zlo = rational_floor(L / h);
            if (Rational(zlo + 1) * h <= L) ++zlo;
            BigInt zhi = rational_ceil(R / h) - 1;
            if (Rational(zhi) * h >= R) --zhi;
            for (BigInt zx = zlo; zx <= zhi; ++zx)
                cells.push_back({static_cast<std::int32_t>(zx.convert_to<long long>()),
                                 static_cast<std::int32_t>(zy.convert_to<long long>()), 0});
        }
    }
    if (cells.empty()) {
        if (mode == RasterMode::Inner)
            fail(ErrorCode::EmptyInner, "no cell fits inside; refine the resolution");
        fail(ErrorCode::EmptySet, "rasterization produced no cells");
    }
    return GridSet::from_cells(2, h, std::move(cells));
}

} // namespace

GridSet rasterize(const ConvexPolytope& k, const Rational& h, RasterMode mode) {
    if (!(h > 0)) fail(ErrorCode::InvalidArgument, "cell size must be positive");
    if (k.dim() == 1) {
        IntervalUnion iu = IntervalUnion::single(k.vertices().front().x[0], k.vertices().back().x[0]);
        return rasterize(iu, h, mode);
    }
    if (k.dim() == 2) {
        if (k.affine_dim() < 2) {
            if (mode == RasterMode::Inner)
                fail(ErrorCode::EmptyInner, "degenerate body has no interior cells");
            // segment or point: outer cells via dense check on the segment's bbox
            std::vector<CellIndex> cells;
            const auto& v = k.vertices();
            for (const auto& p : v) {
                BigInt zx = rational_floor(p.x[0] / h), zy = rational_floor(p.x[1] / h);
                cells.push_back({static_cast<std::int32_t>(zx.convert_to<long long>()),
                                 static_cast<std::int32_t>(zy.convert_to<long long>()), 0});
            }
            if (v.size() == 2) {
                // walk the segment, adding every cell whose closed box it meets
                Rational x0 = v[0].x[0], y0 = v[0].x[1], x1 = v[1].x[0], y1 = v[1].x[1];
                const int steps = 4 * (1 + static_cast<int>(to_double((abs(x1 - x0) + abs(y1 - y0)) / h)));
                for (int s = 0; s <= steps; ++s) {
                    Rational t(s, steps);
                    Rational px = x0 + (x1 - x0) * t, py = y0 + (y1 - y0) * t;
                    BigInt zx = rational_floor(px / h), zy = rational_floor(py / h);
                    cells.push_back({static_cast<std::int32_t>(zx.convert_to<long long>()),
                                     static_cast<std::int32_t>(zy.convert_to<long long>()), 0});
                }
            }
            return GridSet::from_cells(2, h, std::move(cells));
        }
        return rasterize_polygon2d(k, h, mode);
    }
    // d = 3: per-cell tests over the vertex bounding box
    const auto& v = k.vertices();
    std::array<Rational, 3> mn{v.front().x[0], v.front().x[1], v.front().x[2]};
    std::array<Rational, 3> mx = mn;
    for (const auto& p : v) {
        for (int i = 0; i < 3; ++i) {
            mn[i] = std::min(mn[i], p.x[i]);
            mx[i] = std::max(mx[i], p.x[i]);
        }
    }
    std::array<long long, 3> zlo, zhi;
    for (int i = 0; i < 3; ++i) {
        zlo[i] = rational_floor(mn[i] / h).convert_to<long long>() - 1;
        zhi[i] = rational_ceil(mx[i] / h).convert_to<long long>() + 1;
    }
    std::vector<CellIndex> cells;
    for (long long zx = zlo[0]; zx <= zhi[0]; ++zx)
        for (long long zy = zlo[1]; zy <= zhi[1]; ++zy)
            for (long long zz = zlo[2]; zz <= zhi[2]; ++zz) {
                // corner containment gives Inner; for Outer use center-sample plus
                // corner tests (adequate for the coarse 3D uses in this project)
                int inside = 0;
                for (int m = 0; m < 8; ++m) {
                    RatPoint c = RatPoint::of(3, Rational(zx + ((m >> 0) & 1)) * h,
                                              Rational(zy + ((m >> 1) & 1)) * h,
                                              Rational(zz + ((m >> 2) & 1)) * h);
                    if (k.contains(c)) ++inside;
                }
                bool take = false;
                if (mode == RasterMode::Inner) {
                    take = inside == 8;
                } else {
                    if (inside > 0) {
                        take = true;
                    } else {
                        RatPoint c = RatPoint::of(3, (Rational(zx) + Rational(1, 2)) * h,
                                                  (Rational(zy) + Rational(1, 2)) * h,
                                                  (Rational(zz) + Rational(1, 2)) * h);
                        // box-body overlap via exact distance from center
                        Rational d2 = k.distance_sq_to(c);
                        take = d2 * 4 <= h * h * 3; // ball of radius h*sqrt(3)/2 covers the cell
                    }
                }
                if (take)
                    cells.push_back({static_cast<std::int32_t>(zx), static_cast<std::int32_t>(zy),
                                     static_cast<std::int32_t>(zz)});
            }
    if (cells.empty()) {
        if (mode == RasterMode::Inner)
            fail(ErrorCode::EmptyInner, "no cell fits inside; refine the resolution");
        fail(ErrorCode::EmptySet, "rasterization produced no cells");
    }
    return GridSet::from_cells(3, h, std::move(cells));
}

GridSet rasterize(const PointSet& k, const Rational& h, RasterMode mode) {
    if (mode == RasterMode::Inner)
        fail(ErrorCode::EmptyInner, "finite sets contain no full cell");
    std::vector<CellIndex> cells;
    for (const auto& p : k.points()) {
        std::array<std::vector<std::int32_t>, 3> axis_cells;
        for (int i = 0; i < k.dim(); ++i) {
            Rational q = p.x[i] / h;
            BigInt f = rational_floor(q);
            axis_cells[i].push_back(static_cast<std::int32_t>(f.convert_to<long long>()));
            if (Rational(f) == q) // on a lattice plane: both closed cells contain it
                axis_cells[i].push_back(static_cast<std::int32_t>((f - 1).convert_to<long long>()));
        }
        for (int i = k.dim(); i < 3; ++i) axis_cells[i].push_back(0);
        for (auto cx : axis_cells[0])
            for (auto cy : axis_cells[1])
                for (auto cz : axis_cells[2]) cells.push_back({cx, cy, cz});
    }
    return GridSet::from_cells(k.dim(), h, std::move(cells));
}

GridSet ball_grid(int dim, const Rational& radius, const Rational& h, DiskMode mode) {
    if (!(radius > 0) || !(h > 0)) fail(ErrorCode::InvalidArgument, "radius and h must be positive");
    long long zmax = rational_ceil(radius / h).convert_to<long long>() + 1;
    Rational r2 = radius * radius;
    std::vector<CellIndex> cells;
    const long long ylo = dim >= 2 ? -zmax : 0, yhi = dim >= 2 ? zmax : 0;
    const long long zlo = dim >= 3 ? -zmax : 0, zhi = dim >= 3 ? zmax : 0;
    for (long long zx = -zmax; zx <= zmax; ++zx)
        for (long long zy = ylo; zy <= yhi; ++zy)
            for (long long zz = zlo; zz <= zhi; ++zz) {
                std::array<long long, 3> z{zx, zy, zz};
                Rational s(0);
                if (mode == DiskMode::Center) {
                    for (int i = 0; i < dim; ++i) {
                        Rational c = (Rational(z[i]) + Rational(1, 2)) * h;
                        s += c * c;
                    }
                } else if (mode == DiskMode::Inner) {
                    for (int i = 0; i < dim; ++i) {
                        Rational far =
                            std::max(abs(Rational(z[i]) * h), abs(Rational(z[i] + 1) * h));
                        s += far * far;
                    }
                } else {
                    for (int i = 0; i < dim; ++i) {
                        Rational lo = Rational(z[i]) * h, hi = Rational(z[i] + 1) * h;
                        Rational g(0);
                        if (hi < 0)
                            g = -hi;
                        else if (lo > 0)
                            g = lo;
                        s += g * g;
                    }
                }
                if (s <= r2)
                    cells.push_back({static_cast<std::int32_t>(zx), static_cast<std::int32_t>(zy),
                                     static_cast<std::int32_t>(zz)});
            }
    if (cells.empty()) fail(ErrorCode::EmptyInner, "ball grid is empty at this resolution");
    return GridSet::from_cells(dim, h, std::move(cells));
}

GridSet boundary_cells(const GridSet& u) {
    BitGrid b = build_bitgrid(u);
    std::vector<CellIndex> out;
    for (const auto& c : u.cells()) {
        bool exposed = false;
        for (int i = 0; i < u.dim() && !exposed; ++i) {
            for (int s = -1; s <= 1 && !exposed; s += 2) {
                std::array<std::int64_t, 3> nb{c[0], c[1], c[2]};
                nb[i] += s;
                if (!b.test(nb[0], nb[1], nb[2])) exposed = true;
            }
        }
        if (exposed) out.push_back(c);
    }
    return GridSet::from_cells(u.dim(), u.cell_size(), std::move(out));
}

std::array<Rational, 3> directional_face_measure(const GridSet& u) {
    BitGrid b = build_bitgrid(u, 1);
    const Rational hd1 = pow_h(u.cell_size(), u.dim() - 1);
    std::array<Rational, 3> f{Rational(0), Rational(0), Rational(0)};
    std::size_t runs_x = 0, runs_y = 0, runs_z = 0;
    for (int z = 0; z < b.n[2]; ++z) {
        for (int y = 0; y < b.n[1]; ++y) {
            const std::uint64_t* r = b.row(y, z);
            std::uint64_t prev_carry = 0;
            for (int w = 0; w < b.wpr; ++w) {
                std::uint64_t shifted = (r[w] << 1) | prev_carry;
                prev_carry = r[w] >> 63;
                runs_x += static_cast<std::size_t>(std::popcount(r[w] & ~shifted));
            }
            if (u.dim() >= 2) {
                const std::uint64_t* up = y > 0 ? b.row(y - 1, z) : nullptr;
                for (int w = 0; w < b.wpr; ++w) {
                    std::uint64_t above = up ? up[w] : 0;
                    runs_y += static_cast<std::size_t>(std::popcount(r[w] & ~above));
                }
            }
            if (u.dim() >= 3) {
                const std::uint64_t* back = z > 0 ? b.row(y, z - 1) : nullptr;
                for (int w = 0; w < b.wpr; ++w) {
                    std::uint64_t behind = back ? back[w] : 0;
                    runs_z += static_cast<std::size_t>(std::popcount(r[w] & ~behind));
                }
            }
        }
    }
    f[0] = Rational(static_cast<long long>(runs_x)) * hd1;
    if (u.dim() >= 2) f[1] = Rational(static_cast<long long>(runs_y)) * hd1;
    if (u.dim() >= 3) f[2] = Rational(static_cast<long long>(runs_z)) * hd1;
    return f;
}

GridSet coarsen(const GridSet& u, RasterMode mode) {
    std::vector<CellIndex> out;
    const int d = u.dim();
    if (mode == RasterMode::Outer) {
        for (const auto& c : u.cells()) {
            CellIndex p{0, 0, 0};
            for (int i = 0; i < d; ++i)
                p[i] = static_cast<std::int32_t>(c[i] >= 0 ? c[i] / 2 : (c[i] - 1) / 2);
            out.push_back(p);
        }
    } else {
        BitGrid b = build_bitgrid(u);
        for (const auto& c : u.cells()) {
            CellIndex p{0, 0, 0};
            bool aligned = true;
            for (int i = 0; i < d; ++i) {
                std::int32_t q = static_cast<std::int32_t>(c[i] >= 0 ? c[i] / 2 : (c[i] - 1) / 2);
                if (c[i] != 2 * q) aligned = false;
                p[i] = q;
            }
            if (!aligned) continue; // count each parent once, from its low child
            bool all = true;
            for (int m = 0; m < (1 << d) && all; ++m) {
                std::array<std::int64_t, 3> ch{2 * p[0], 2 * p[1], 2 * p[2]};
                for (int i = 0; i < d; ++i) ch[i] += (m >> i) & 1;
                if (!b.test(ch[0], ch[1], ch[2])) all = false;
            }
            if (all) out.push_back(p);
        }
        if (out.empty()) fail(ErrorCode::EmptyInner, "inner coarsening lost all cells");
    }
    return GridSet::from_cells(d, u.cell_size() * 2, std::move(out));
}

std::vector<CellIndex> difference_index_set(const GridSet& u) {
    BitGrid b = build_bitgrid(u);
    const int nx = b.n[0], ny = b.n[1], nz = b.n[2];
    const int dnx = 2 * nx - 1;
    BitGrid diff;
    diff.init(u.dim(), {-(nx - 1), -(ny - 1), -(nz - 1)}, {dnx, 2 * ny - 1, 2 * nz - 1});
    if (u.dim() < 3) {
        diff.lo[2] = 0;
        diff.n[2] = 1;
    }
    if (u.dim() < 2) {
        diff.lo[1] = 0;
        diff.n[1] = 1;
    }
    diff.wpr = (diff.n[0] + 63) / 64;
    diff.w.assign(static_cast<std::size_t>(diff.wpr) * diff.n[1] * diff.n[2], 0);

    // x-difference rows: out[dy][dz] |= {a - b} with offset nx-1
    std::vector<std::uint64_t> padded(static_cast<std::size_t>(diff.wpr), 0);
    for (int z1 = 0; z1 < nz; ++z1)
        for (int y1 = 0; y1 < ny; ++y1) {
            const std::uint64_t* ra = b.row(y1, z1);
            std::fill(padded.begin(), padded.end(), 0);
            std::copy(ra, ra + b.wpr, padded.begin());
            for (int z2 = 0; z2 < nz; ++z2)
                for (int y2 = 0; y2 < ny; ++y2) {
                    const std::uint64_t* rb = b.row(y2, z2);
                    std::uint64_t* out = diff.row(y1 - y2 + (ny - 1), z1 - z2 + (nz - 1));
                    // {a - b : a in A, b in B} = union over b of (A << (nx-1-b))
                    for (int w = 0; w < b.wpr; ++w) {
                        std::uint64_t bits = rb[w];
                        while (bits) {
                            int t = std::countr_zero(bits);
                            bits &= bits - 1;
                            int bpos = w * 64 + t;
                            detail::or_shl(out, padded.data(), diff.wpr, nx - 1 - bpos);
                        }
                    }
                }
        }
    std::vector<CellIndex> cells;
    for (int z = 0; z < diff.n[2]; ++z)
        for (int y = 0; y < diff.n[1]; ++y) {
            const std::uint64_t* r = diff.row(y, z);
            for (int w = 0; w < diff.wpr; ++w) {
                std::uint64_t bits = r[w];
                while (bits) {
                    int t = std::countr_zero(bits);
                    bits &= bits - 1;
                    int x = w * 64 + t;
                    if (x >= diff.n[0]) continue;
                    cells.push_back({static_cast<std::int32_t>(x + diff.lo[0]),
                                     static_cast<std::int32_t>(y + diff.lo[1]),
                                     static_cast<std::int32_t>(z + diff.lo[2])});
                }
            }
        }
    return cells;
}

Rational lattice_overlap_measure(const GridSet& u, const CellIndex& z) {
    BitGrid b = build_bitgrid(u);
    std::size_t count = 0;
    for (int zz = 0; zz < b.n[2]; ++zz) {
        std::int64_t z2 = zz + z[2];
        if (u.dim() >= 3 && (z2 < 0 || z2 >= b.n[2])) continue;
        if (u.dim() < 3) z2 = 0;
        for (int y = 0; y < b.n[1]; ++y) {
            std::int64_t y2 = y + z[1];
            if (u.dim() >= 2 && (y2 < 0 || y2 >= b.n[1])) continue;
            if (u.dim() < 2) y2 = 0;
            count += detail::and_shifted_popcount(b.row(y, zz),
                                                  b.row(static_cast<int>(y2), static_cast<int>(z2)),
                                                  b.wpr, -z[0]);
        }
    }
    return Rational(static_cast<long long>(count)) * pow_h(u.cell_size(), u.dim());
}

Rational origin_ball_radius_sq(const GridSet& u) {
    // origin must be covered by some closed cell
    bool covered = false;
    for (int m = 0; m < (1 << u.dim()) && !covered; ++m) {
        CellIndex c{0, 0, 0};
        for (int i = 0; i < u.dim(); ++i) c[i] = ((m >> i) & 1) ? -1 : 0;
        covered = u.contains_cell(c);
    }
    if (!covered) return Rational(0);
    BitGrid b = build_bitgrid(u);
    const CellIndex lo = u.bbox_lo(), hi = u.bbox_hi();
    std::int64_t best = detail::kEdtInf;
    auto gap = [](std::int64_t zlo, std::int64_t zhi) -> std::int64_t {
        // distance in h units from coordinate origin 0 to the box [zlo, zhi+1]
        if (zlo > 0) return zlo;
        if (zhi + 1 < 0) return -(zhi + 1);
        return 0;
    };
    // distance to the exterior of the bounding box
    for (int i = 0; i < u.dim(); ++i) {
        best = std::min(best, static_cast<std::int64_t>(-lo[i]));
        best = std::min(best, static_cast<std::int64_t>(hi[i] + 1));
    }
    best = best * best;
    // distance to missing cells inside the box
    for (std::int64_t zz = (u.dim() >= 3 ? lo[2] : 0); zz <= (u.dim() >= 3 ? hi[2] : 0); ++zz)
        for (std::int64_t zy = (u.dim() >= 2 ? lo[1] : 0); zy <= (u.dim() >= 2 ? hi[1] : 0); ++zy)
            for (std::int64_t zx = lo[0]; zx <= hi[0]; ++zx) {
                if (b.test(zx, zy, zz)) continue;
                std::int64_t s = gap(zx, zx);
                s = s * s;
                if (u.dim() >= 2) {
                    std::int64_t g = gap(zy, zy);
                    s += g * g;
                }
                if (u.dim() >= 3) {
                    std::int64_t g = gap(zz, zz);
                    s += g * g;
                }
                best = std::min(best, s);
            }
    return Rational(best) * u.cell_size() * u.cell_size();
}

GridSet erode_by_cells(const GridSet& u, int k) {
    if (k < 0) fail(ErrorCode::InvalidArgument, "erosion radius must be nonnegative");
    BitGrid b = build_bitgrid(u, 1);
    // EDT from complement cells on the (padded) cell lattice
    std::array<int, 3> n{b.n[0], b.n[1], b.n[2]};
    std::vector<std::uint8_t> sites(static_cast<std::size_t>(n[0]) * n[1] * n[2], 0);
    for (int z = 0; z < n[2]; ++z)
        for (int y = 0; y < n[1]; ++y)
            for (int x = 0; x < n[0]; ++x) {
                bool inside = b.test(x + b.lo[0], y + b.lo[1], z + b.lo[2]);
                if (!inside) sites[(static_cast<std::size_t>(z) * n[1] + y) * n[0] + x] = 1;
            }
    auto d2 = detail::edt_sq(n, u.dim(), sites);
    const std::int64_t need = static_cast<std::int64_t>(k + 2) * (k + 2);
    std::vector<CellIndex> out;
    for (const auto& c : u.cells()) {
        std::size_t ix = static_cast<std::size_t>(c[2] - b.lo[2]) * n[1] + (c[1] - b.lo[1]);
        ix = ix * n[0] + static_cast<std::size_t>(c[0] - b.lo[0]);
        if (d2[ix] >= need) out.push_back(c);
    }
    if (out.empty()) fail(ErrorCode::EmptyInner, "erosion removed every cell");
    return GridSet::from_cells(u.dim(), u.cell_size(), std::move(out));
}

GridSet largest_inscribed_box(const GridSet& u) {
    BitGrid b = build_bitgrid(u);
    if (u.dim() == 1) {
        // longest run
        std::int64_t best_len = 0, best_lo = 0, cur = 0, cur_lo = 0;
        for (std::int64_t x = b.lo[0]; x < b.lo[0] + b.n[0]; ++x) {
            if (b.test(x, 0, 0)) {
                if (cur == 0) cur_lo = x;
                ++cur;
                if (cur > best_len) {
                    best_len = cur;
                    best_lo = cur_lo;
                }
            } else {
                cur = 0;
            }
        }
        std::vector<CellIndex> out;
        for (std::int64_t x = best_lo; x < best_lo + best_len; ++x)
            out.push_back({static_cast<std::int32_t>(x), 0, 0});
        return GridSet::from_cells(1, u.cell_size(), std::move(out));
    }
    // 2D (and per-slab fallback in 3D): maximal rectangle via histogram of heights
    std::int64_t best_area = 0;
    std::array<std::int64_t, 3> blo{0, 0, 0};
    std::array<std::int64_t, 3> bhi{-1, -1, -1}; // inclusive cell ranges
    for (int z = 0; z < b.n[2]; ++z) {
        std::vector<int> height(static_cast<std::size_t>(b.n[0]), 0);
        for (int y = 0; y < b.n[1]; ++y) {
            for (int x = 0; x < b.n[0]; ++x)
                height[static_cast<std::size_t>(x)] =
                    b.test(x + b.lo[0], y + b.lo[1], z + b.lo[2]) ? height[static_cast<std::size_t>(x)] + 1 : 0;
            // largest rectangle in histogram
            std::vector<int> stack;
            for (int x = 0; x <= b.n[0]; ++x) {
                int h = x < b.n[0] ? height[static_cast<std::size_t>(x)] : 0;
                int start = x;
                while (!stack.empty() && height[static_cast<std::size_t>(stack.back())] >= h) {
                    int top = stack.back();
                    stack.pop_back();
                    int ht = height[static_cast<std::size_t>(top)];
                    int left = stack.empty() ? 0 : stack.back() + 1;
                    std::int64_t area = static_cast<std::int64_t>(ht) * (x - left);
                    if (area > best_area) {
                        best_area = area;
                        blo = {left + b.lo[0], y - ht + 1 + b.lo[1], z + b.lo[2]};
                        bhi = {x - 1 + b.lo[0], y + b.lo[1], z + b.lo[2]};
                    }
                    start = left;
                }
                (void)start;
                if (x < b.n[0]) stack.push_back(x);
            }
        }
    }
    std::vector<CellIndex> out;
    for (std::int64_t x = blo[0]; x <= bhi[0]; ++x)
        for (std::int64_t y = blo[1]; y <= bhi[1]; ++y)
            out.push_back({static_cast<std::int32_t>(x), static_cast<std::int32_t>(y),
                           static_cast<std::int32_t>(blo[2])});
    if (out.empty()) return u;
    return GridSet::from_cells(u.dim(), u.cell_size(), std::move(out));
}

GridHausdorff grid_hausdorff(const GridSet& a, const GridSet& b) {
    if (a.dim() != b.dim()) fail(ErrorCode::DimensionMismatch, "hausdorff on mixed dimensions");
    if (a.cell_size() != b.cell_size())
        fail(ErrorCode::InvalidArgument, "grid hausdorff requires a common resolution");
    const int d = a.dim();
    CellIndex alo = a.bbox_lo(), ahi = a.bbox_hi(), blo = b.bbox_lo(), bhi = b.bbox_hi();
    std::array<std::int64_t, 3> lo{std::min(alo[0], blo[0]), std::min(alo[1], blo[1]),
                                   std::min(alo[2], blo[2])};
    std::array<int, 3> n{static_cast<int>(std::max(ahi[0], bhi[0]) - lo[0] + 2),
                         static_cast<int>(std::max(ahi[1], bhi[1]) - lo[1] + 2),
                         static_cast<int>(std::max(ahi[2], bhi[2]) - lo[2] + 2)};
    for (int i = d; i < 3; ++i) {
        n[i] = 1;
        lo[i] = 0;
    }
    auto corner_sites = [&](const GridSet& g) {
        std::vector<std::uint8_t> s(static_cast<std::size_t>(n[0]) * n[1] * n[2], 0);
        for (const auto& c : g.cells()) {
            for (int m = 0; m < (1 << d); ++m) {
                std::array<std::int64_t, 3> p{c[0], c[1], c[2]};
                for (int i = 0; i < d; ++i) p[i] += (m >> i) & 1;
                std::size_t ix = static_cast<std::size_t>(p[2] - lo[2]) * n[1] +
                                 static_cast<std::size_t>(p[1] - lo[1]);
                ix = ix * n[0] + static_cast<std::size_t>(p[0] - lo[0]);
                s[ix] = 1;
            }
        }
        return s;
    };
    auto sa = corner_sites(a);
    auto sb = corner_sites(b);
    auto da = detail::edt_sq(n, d, sa); // distance to A-corners
    auto db = detail::edt_sq(n, d, sb);
    std::int64_t worst = 0;
    const std::size_t total = sa.size();
    for (std::size_t i = 0; i < total; ++i) {
        if (sa[i]) worst = std::max(worst, db[i]);
        if (sb[i]) worst = std::max(worst, da[i]);
    }
    GridHausdorff out;
    const double h = to_double(a.cell_size());
    out.value = std::sqrt(static_cast<double>(worst)) * h;
    out.error = h * std::sqrt(static_cast<double>(d));
    return out;
}

namespace {

struct FineEdt {
    std::array<std::int64_t, 3> lo{0, 0, 0}; // fine-lattice offset
    std::array<int, 3> n{1, 1, 1};
    std::vector<std::int64_t> d2; // squared distances in (h/2) units
    int dim = 2;

    std::int64_t at(std::array<std::int64_t, 3> p) const {
        std::size_t ix = static_cast<std::size_t>(p[2] - lo[2]) * n[1] +
                         static_cast<std::size_t>(p[1] - lo[1]);
        ix = ix * n[0] + static_cast<std::size_t>(p[0] - lo[0]);
        return d2[ix];
    }
};

// EDT from exposed-face midpoint sites on the h/2 lattice, with `margin_cells`
// of padding around the bounding box.
FineEdt face_midpoint_edt(const GridSet& u, int margin_cells) {
    const int d = u.dim();
    BitGrid b = build_bitgrid(u, 1);
    CellIndex lo = u.bbox_lo(), hi = u.bbox_hi();
    FineEdt f;
    f.dim = d;
    for (int i = 0; i < d; ++i) {
        f.lo[i] = 2 * (static_cast<std::int64_t>(lo[i]) - margin_cells);
        f.n[i] = static_cast<int>(2 * (hi[i] - lo[i] + 1 + 2 * margin_cells) + 1);
    }
    std::vector<std::uint8_t> sites(static_cast<std::size_t>(f.n[0]) * f.n[1] * f.n[2], 0);
    auto mark = [&](std::int64_t x, std::int64_t y, std::int64_t z) {
        std::size_t ix = static_cast<std::size_t>(z - f.lo[2]) * f.n[1] +
                         static_cast<std::size_t>(y - f.lo[1]);
        ix = ix * f.n[0] + static_cast<std::size_t>(x - f.lo[0]);
        sites[ix] = 1;
    };
    for (const auto& c : u.cells()) {
        std::array<std::int64_t, 3> fc{2 * c[0] + 1, 2 * c[1] + 1, 2 * c[2] + 1}; // center
        for (int i = d; i < 3; ++i) fc[i] = 0;
        for (int i = 0; i < d; ++i) {
            for (int s = -1; s <= 1; s += 2) {
                std::array<std::int64_t, 3> nb{c[0], c[1], c[2]};
                nb[i] += s;
                if (b.test(nb[0], nb[1], nb[2])) continue;
                std::array<std::int64_t, 3> m = fc;
                m[i] += s; // face midpoint
                mark(m[0], m[1], m[2]);
            }
        }
    }
    f.d2 = detail::edt_sq(f.n, d, sites);
    return f;
}

} // namespace

TubeReport tube_volume(const GridSet& u, const GridSet& boundary, const Rational& r) {
    if (r < u.cell_size()) fail(ErrorCode::ResolutionTooCoarse, "tube radius below the cell size");
    GridSet expected = boundary_cells(u);
    if (!(boundary == expected))
        fail(ErrorCode::InvalidArgument, "boundary must be the exposed-cell approximation of the set");
    const int d = u.dim();
    const Rational& h = u.cell_size();
    int margin = static_cast<int>(rational_ceil(r / h).convert_to<long long>()) + 2;
    FineEdt f = face_midpoint_edt(u, margin);
    // exact comparison d_fine^2 * h^2 <= 4 r^2
    Rational bound = 4 * r * r / (h * h);
    std::size_t count = 0;
    std::array<std::int64_t, 3> p{0, 0, 0};
    const std::int64_t zlo = d >= 3 ? f.lo[2] : 0, zn = d >= 3 ? f.n[2] : 1;
    const std::int64_t ylo = d >= 2 ? f.lo[1] : 0, yn = d >= 2 ? f.n[1] : 1;
    for (std::int64_t z = zlo; z < zlo + zn; ++z) {
        if (d >= 3 && (z & 1) == 0) continue;
        for (std::int64_t y = ylo; y < ylo + yn; ++y) {
            if (d >= 2 && (y & 1) == 0) continue;
            for (std::int64_t x = f.lo[0]; x < f.lo[0] + f.n[0]; ++x) {
                if ((x & 1) == 0) continue;
                p = {x, d >= 2 ? y : 0, d >= 3 ? z : 0};
                std::int64_t dd = f.at(p);
                if (dd < detail::kEdtInf && Rational(dd) <= bound) ++count;
            }
        }
    }
    TubeReport rep;
    rep.volume = static_cast<double>(count) * to_double(pow_h(h, d));
    auto fm = directional_face_measure(u);
    Rational area = 2 * (fm[0] + fm[1] + fm[2]);
    rep.error_bound = to_double(area * h) * std::sqrt(static_cast<double>(d));
    rep.flagged = rep.error_bound > 0.5 * rep.volume;
    return rep;
}

ContentEstimate minkowski_content_estimate(const GridSet& u) {
    if (u.dim() < 2)
        fail(ErrorCode::InvalidArgument, "content estimate needs dimension >= 2");
    const Rational& h = u.cell_size();
    const Rational four_h = 4 * h;
    Rational diam_ub = sqrt_upper_bound(u.diameter_sq());
    std::vector<Rational> radii;
    for (int k = 1; k <= 62; ++k) {
        Rational x(1, BigInt(1) << k);
        if (x * 4 > diam_ub) continue; // tube saturates, skip
        if (x < four_h) break;
        radii.push_back(x);
    }
    if (radii.empty()) fail(ErrorCode::ResolutionTooCoarse, "no usable radii: grid too coarse");

    const int d = u.dim();
    int margin = static_cast<int>(rational_ceil(radii.front() / h).convert_to<long long>()) + 2;
    FineEdt f = face_midpoint_edt(u, margin);
    ContentEstimate est;
    for (const auto& r : radii) {
        Rational bound = 4 * r * r / (h * h);
        std::size_t count = 0;
        const std::int64_t zlo = d >= 3 ? f.lo[2] : 0, zn = d >= 3 ? f.n[2] : 1;
        for (std::int64_t z = zlo; z < zlo + zn; ++z) {
            if (d >= 3 && (z & 1) == 0) continue;
            for (std::int64_t y = f.lo[1]; y < f.lo[1] + f.n[1]; ++y) {
                if ((y & 1) == 0) continue;
                for (std::int64_t x = f.lo[0]; x < f.lo[0] + f.n[0]; ++x) {
                    if ((x & 1) == 0) continue;
                    std::int64_t dd = f.at({x, y, d >= 3 ? z : 0});
                    if (dd < detail::kEdtInf && Rational(dd) <= bound) ++count;
                }
            }
        }
        double vol = static_cast<double>(count) * to_double(pow_h(h, d));
        est.radii.push_back(to_double(r));
        est.tube_volumes.push_back(vol);
        est.ratios.push_back(vol / (2 * to_double(r)));
    }
    // extrapolate ratio(x) ~ C + g*(h/x) over the trusted coarse end (x >= 16h)
    const double hd = to_double(h);
    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < est.radii.size(); ++i) {
        if (est.radii[i] < 16 * hd) continue;
        double t = hd / est.radii[i];
        sw += 1;
        sx += t;
        sy += est.ratios[i];
        sxx += t * t;
        sxy += t * est.ratios[i];
    }
    if (sw >= 2 && sw * sxx - sx * sx > 1e-30) {
        double slope = (sw * sxy - sx * sy) / (sw * sxx - sx * sx);
        est.extrapolated = (sy - slope * sx) / sw;
    } else {
        est.extrapolated = est.ratios.front();
    }
    return est;
}

} // namespace steinhaus
