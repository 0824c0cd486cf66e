#include "steinhaus/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "steinhaus/error.hpp"

namespace steinhaus {

namespace {

std::vector<RatPoint> hull2d_ccw(std::vector<RatPoint> pts) {
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n = pts.size();
    if (n <= 2) return pts;
    std::vector<RatPoint> h(2 * n);
    std::size_t k = 0;
    // strict turns drop collinear middle points, keeping the vertex list minimal
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && orient2d(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
        while (k >= t && orient2d(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h; // counterclockwise
}

struct Face {
    int a, b, c;
    bool alive = true;
};

// Incremental 3D hull, exact predicates. Returns triangulated outward faces.
std::vector<std::array<int, 3>> hull3d_faces(const std::vector<RatPoint>& pts) {
    const int n = static_cast<int>(pts.size());
    // initial non-degenerate tetrahedron
    int i1 = -1, i2 = -1, i3 = -1;
    for (int i = 1; i < n && i1 < 0; ++i)
        if (dist_sq(pts[0], pts[i]) != 0) i1 = i;
    for (int i = 1; i < n && i2 < 0; ++i)
        if (i != i1 && norm_sq(cross3(pts[i1] - pts[0], pts[i] - pts[0])) != 0) i2 = i;
    for (int i = 1; i < n && i3 < 0; ++i)
        if (i != i1 && i != i2 && orient3d(pts[0], pts[i1], pts[i2], pts[i]) != 0) i3 = i;
    if (i3 < 0) fail(ErrorCode::InvalidArgument, "hull3d needs full-dimensional input");

    std::vector<Face> faces;
    auto add_face = [&](int a, int b, int c, const RatPoint& inside) {
        if (orient3d(pts[a], pts[b], pts[c], inside) > 0) std::swap(b, c);
        faces.push_back({a, b, c, true});
    };
    RatPoint centroid = Rational(1, 4) * (pts[0] + pts[i1] + pts[i2] + pts[i3]);
    add_face(0, i1, i2, centroid);
    add_face(0, i1, i3, centroid);
    add_face(0, i2, i3, centroid);
    add_face(i1, i2, i3, centroid);

    for (int p = 1; p < n; ++p) {
        if (p == i1 || p == i2 || p == i3) continue;
        // faces strictly visible from pts[p]
        std::vector<int> visible;
        for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
            if (!faces[f].alive) continue;
            if (orient3d(pts[faces[f].a], pts[faces[f].b], pts[faces[f].c], pts[p]) > 0)
                visible.push_back(f);
        }
        if (visible.empty()) continue;
        // horizon = edges of visible faces shared with a hidden face
        std::map<std::pair<int, int>, int> edge_count;
        for (int f : visible) {
            faces[f].alive = false;
            const std::array<int, 3> v{faces[f].a, faces[f].b, faces[f].c};
            for (int e = 0; e < 3; ++e) {
                int u = v[e], w = v[(e + 1) % 3];
                auto key = std::minmax(u, w);
                edge_count[{key.first, key.second}] ^= 1;
                // keep orientation of the last writer; recorded separately below
            }
        }
        // re-collect horizon edges with orientation from the visible side
        std::vector<std::pair<int, int>> horizon;
        for (int f : visible) {
            const std::array<int, 3> v{faces[f].a, faces[f].b, faces[f].c};
            for (int e = 0; e < 3; ++e) {
                int u = v[e], w = v[(e + 1) % 3];
                auto key = std::minmax(u, w);
                if (edge_count[{key.first, key.second}]) horizon.push_back({u, w});
            }
        }
        for (auto [u, w] : horizon) {
            // visible face was (…, u, w, …) with outward normal; new face keeps winding
            faces.push_back({u, w, p, true});
        }
    }
    std::vector<std::array<int, 3>> out;
    for (const auto& f : faces)
        if (f.alive) out.push_back({f.a, f.b, f.c});
    return out;
}

} // namespace

ConvexPolytope ConvexPolytope::hull_of(const PointSet& pts) {
    return hull_of(pts.dim(), pts.points());
}

ConvexPolytope ConvexPolytope::hull_of(int dim, std::vector<RatPoint> pts) {
    if (pts.empty()) fail(ErrorCode::EmptySet, "hull of empty set");
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    ConvexPolytope poly;
    poly.dim_ = dim;
    int rank = affine_rank(pts);
    poly.affine_dim_ = rank;

    if (rank == 0) {
        poly.verts_ = {pts.front()};
        return poly;
    }
    if (rank == 1) {
        // extremes along the carrier line
        const RatPoint& o = pts.front();
        RatPoint dir;
        for (const auto& p : pts) {
            if (!(p == o)) {
                dir = p - o;
                break;
            }
        }
        const RatPoint* lo = &pts.front();
        const RatPoint* hi = &pts.front();
        Rational tlo(0), thi(0);
        for (const auto& p : pts) {
            Rational t = dot(p - o, dir);
            if (t < tlo) {
                tlo = t;
                lo = &p;
            }
            if (t > thi) {
                thi = t;
                hi = &p;
            }
        }
        poly.verts_ = {*lo, *hi};
        std::sort(poly.verts_.begin(), poly.verts_.end(), lex_less);
        return poly;
    }
    if (rank == 2 && dim == 2) {
        poly.verts_ = hull2d_ccw(std::move(pts));
        return poly;
    }
    if (rank == 2 && dim == 3) {
        // planar set in 3D: hull in projected coordinates, lift back
        const RatPoint o = pts.front();
        RatPoint u, v;
        bool have_u = false;
        for (const auto& p : pts) {
            RatPoint w = p - o;
            if (!have_u) {
                if (norm_sq(w) != 0) {
                    u = w;
                    have_u = true;
                }
            } else if (norm_sq(cross3(u, w)) != 0) {
                v = w;
                break;
            }
        }
        RatPoint nrm = cross3(u, v);
        // project to (dot(u', p), dot(v', p)) with v' = nrm x u to get an oriented frame
        RatPoint v2 = cross3(nrm, u);
        std::map<std::pair<std::string, std::string>, RatPoint> lift;
        std::vector<RatPoint> flat;
        flat.reserve(pts.size());
        for (const auto& p : pts) {
            RatPoint w = p - o;
            RatPoint f = RatPoint::of(2, dot(w, u), dot(w, v2));
            lift[{rational_to_string(f.x[0]), rational_to_string(f.x[1])}] = p;
            flat.push_back(f);
        }
        auto h = hull2d_ccw(std::move(flat));
        for (const auto& f : h)
            poly.verts_.push_back(lift.at({rational_to_string(f.x[0]), rational_to_string(f.x[1])}));
        return poly;
    }
    // full-dimensional 3D
    auto faces = hull3d_faces(pts);
    std::set<int> used;
    for (const auto& f : faces) used.insert(f.begin(), f.end());

    // drop non-extreme vertices that ended up on the hull surface
    // (possible with exactly collinear / coplanar inputs)
    std::vector<int> keep(used.begin(), used.end());
    auto is_extreme = [&](int vi) {
        std::vector<RatPoint> others;
        for (int k : keep)
            if (k != vi) others.push_back(pts[static_cast<std::size_t>(k)]);
        if (affine_rank(others) < 3) return true;
        auto ofaces = hull3d_faces(others);
        const RatPoint& q = pts[static_cast<std::size_t>(vi)];
        for (const auto& f : ofaces) {
            if (orient3d(others[static_cast<std::size_t>(f[0])], others[static_cast<std::size_t>(f[1])],
                         others[static_cast<std::size_t>(f[2])], q) > 0)
                return true; // outside the reduced hull
        }
        return false;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < keep.size(); ++i) {
            if (!is_extreme(keep[i])) {
                keep.erase(keep.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
    std::vector<RatPoint> verts;
    verts.reserve(keep.size());
    for (int k : keep) verts.push_back(pts[static_cast<std::size_t>(k)]);
    std::sort(verts.begin(), verts.end(), lex_less); // canonical order
    poly.verts_ = std::move(verts);
    poly.facets_ = hull3d_faces(poly.verts_);
    return poly;
}

Rational ConvexPolytope::volume() const {
    if (degenerate()) return Rational(0);
    if (dim_ == 1) return verts_.back().x[0] - verts_.front().x[0];
    if (dim_ == 2) {
        Rational a(0);
        const std::size_t n = verts_.size();
        for (std::size_t i = 0; i < n; ++i) {
            const auto& p = verts_[i];
            const auto& q = verts_[(i + 1) % n];
            a += p.x[0] * q.x[1] - q.x[0] * p.x[1];
        }
        if (a < 0) a = -a;
        return a / 2;
    }
    Rational v(0);
    const RatPoint& o = verts_.front();
    for (const auto& f : facets_) {
        v += orient3d(o, verts_[static_cast<std::size_t>(f[0])], verts_[static_cast<std::size_t>(f[1])],
                      verts_[static_cast<std::size_t>(f[2])]);
    }
    if (v < 0) v = -v;
    return v / 6;
}

Rational ConvexPolytope::diameter_sq() const {
    Rational best(0);
    for (std::size_t i = 0; i < verts_.size(); ++i) {
        for (std::size_t j = i + 1; j < verts_.size(); ++j) {
            Rational d = dist_sq(verts_[i], verts_[j]);
            if (d > best) best = d;
        }
    }
    return best;
}

bool ConvexPolytope::contains(const RatPoint& p) const {
    if (affine_dim_ == 0) return p == verts_.front();
    if (affine_dim_ == 1) {
        return dist_sq_point_segment(p, verts_.front(), verts_.back()) == 0;
    }
    if (dim_ == 2) {
        const std::size_t n = verts_.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (orient2d(verts_[i], verts_[(i + 1) % n], p) < 0) return false;
        }
        return true;
    }
    if (affine_dim_ == 2) {
        // planar polygon in 3D: distance zero test over a fan
        for (std::size_t i = 1; i + 1 < verts_.size(); ++i) {
            if (dist_sq_point_triangle(p, verts_[0], verts_[i], verts_[i + 1]) == 0) return true;
        }
        // vertices are in canonical (not polygon) order; fall back to any triangle triple
        for (std::size_t i = 0; i < verts_.size(); ++i)
            for (std::size_t j = i + 1; j < verts_.size(); ++j)
                for (std::size_t k = j + 1; k < verts_.size(); ++k)
                    if (dist_sq_point_triangle(p, verts_[i], verts_[j], verts_[k]) == 0) return true;
        return false;
    }
    for (const auto& f : facets_) {
        if (orient3d(verts_[static_cast<std::size_t>(f[0])], verts_[static_cast<std::size_t>(f[1])],
                     verts_[static_cast<std::size_t>(f[2])], p) > 0)
            return false;
    }
    return true;
}

Rational ConvexPolytope::distance_sq_to(const RatPoint& p) const {
    if (contains(p)) return Rational(0);
    if (affine_dim_ == 0) return dist_sq(p, verts_.front());
    if (affine_dim_ == 1) return dist_sq_point_segment(p, verts_.front(), verts_.back());
    if (dim_ == 2) {
        Rational best(-1);
        const std::size_t n = verts_.size();
        for (std::size_t i = 0; i < n; ++i) {
            Rational d = dist_sq_point_segment(p, verts_[i], verts_[(i + 1) % n]);
            if (best < 0 || d < best) best = d;
        }
        return best;
    }
    Rational best(-1);
    if (!facets_.empty()) {
        for (const auto& f : facets_) {
            Rational d = dist_sq_point_triangle(p, verts_[static_cast<std::size_t>(f[0])],
                                                verts_[static_cast<std::size_t>(f[1])],
                                                verts_[static_cast<std::size_t>(f[2])]);
            if (best < 0 || d < best) best = d;
        }
        return best;
    }
    // planar polygon in ambient 3D
    for (std::size_t i = 0; i < verts_.size(); ++i)
        for (std::size_t j = i + 1; j < verts_.size(); ++j)
            for (std::size_t k = j + 1; k < verts_.size(); ++k) {
                Rational d = dist_sq_point_triangle(p, verts_[i], verts_[j], verts_[k]);
                if (best < 0 || d < best) best = d;
            }
    if (best < 0) best = dist_sq_point_segment(p, verts_.front(), verts_.back());
    return best;
}

bool ConvexPolytope::same_hull(const ConvexPolytope& other) const {
    if (dim_ != other.dim_) return false;
    auto a = verts_;
    auto b = other.verts_;
    std::sort(a.begin(), a.end(), lex_less);
    std::sort(b.begin(), b.end(), lex_less);
    return a == b;
}

bool ConvexPolytope::is_symmetric_with_origin() const {
    RatPoint zero;
    zero.dim = dim_;
    if (!contains(zero)) return false;
    for (const auto& v : verts_) {
        bool found = false;
        RatPoint m = Rational(-1) * v;
        for (const auto& w : verts_) {
            if (w == m) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

ConvexPolytope ConvexPolytope::scale(const Rational& s) const {
    std::vector<RatPoint> v;
    v.reserve(verts_.size());
    for (const auto& p : verts_) v.push_back(s * p);
    return hull_of(dim_, std::move(v));
}

ConvexPolytope ConvexPolytope::translate(const RatPoint& t) const {
    std::vector<RatPoint> v;
    v.reserve(verts_.size());
    for (const auto& p : verts_) v.push_back(p + t);
    return hull_of(dim_, std::move(v));
}

Rational ConvexPolytope::support(const RatPoint& direction) const {
    Rational best = dot(verts_.front(), direction);
    for (std::size_t i = 1; i < verts_.size(); ++i) {
        Rational d = dot(verts_[i], direction);
        if (d > best) best = d;
    }
    return best;
}

} // namespace steinhaus
