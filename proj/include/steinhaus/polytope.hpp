#pragma once

#include <array>
#include <vector>

#include "steinhaus/geometry.hpp"
#include "steinhaus/point_set.hpp"

namespace steinhaus {

/// Convex body given by its extreme points, d <= 3. Degenerate inputs are kept
/// with affine_dim() < dim() and zero volume. For affine_dim 2 in ambient 2
/// the vertices are in counterclockwise order; for full 3D a triangulated,
/// outward-oriented facet list is stored.
class ConvexPolytope {
public:
    /// Exact convex hull of a point set.
    static ConvexPolytope hull_of(const PointSet& pts);
    static ConvexPolytope hull_of(int dim, std::vector<RatPoint> pts);

    int dim() const { return dim_; }
    int affine_dim() const { return affine_dim_; }
    bool degenerate() const { return affine_dim_ < dim_; }

    const std::vector<RatPoint>& vertices() const { return verts_; }
    const std::vector<std::array<int, 3>>& facets() const { return facets_; }

    Rational volume() const;
    Rational diameter_sq() const;

    bool contains(const RatPoint& p) const;
    Rational distance_sq_to(const RatPoint& p) const;

    /// Exact vertex-set equality (canonical order).
    bool same_hull(const ConvexPolytope& other) const;

    bool is_symmetric_with_origin() const;

    ConvexPolytope scale(const Rational& s) const;
    ConvexPolytope translate(const RatPoint& t) const;

    /// max over the body of <v, direction> (exact for rational directions).
    Rational support(const RatPoint& direction) const;

    PointSet vertex_point_set() const { return PointSet::from_points(dim_, verts_); }

private:
    ConvexPolytope() = default;
    int dim_ = 1;
    int affine_dim_ = 0;
    std::vector<RatPoint> verts_;
    std::vector<std::array<int, 3>> facets_; // 3D full-dimensional only
};

} // namespace steinhaus
