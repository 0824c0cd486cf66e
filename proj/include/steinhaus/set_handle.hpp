#pragma once

#include <variant>

#include "steinhaus/grid.hpp"
#include "steinhaus/interval_union.hpp"
#include "steinhaus/point_set.hpp"
#include "steinhaus/polytope.hpp"
#include "steinhaus/scalar.hpp"

namespace steinhaus {

/// Any of the supported compact-set representations.
using CompactSetHandle = std::variant<IntervalUnion, GridSet, GridSandwich, PointSet, ConvexPolytope>;

int set_dim(const CompactSetHandle& k);

struct VolumeResult {
    Rational inner;
    Rational outer; // == inner except for sandwiches
    bool exact() const { return inner == outer; }
};

VolumeResult set_volume(const CompactSetHandle& k);

/// Exact squared diameter (outer layer for sandwiches).
Rational set_diameter_sq(const CompactSetHandle& k);

/// Exact squared distance from an exact point to the set (outer layer for sandwiches).
Rational set_distance_sq(const RatPoint& p, const CompactSetHandle& k);

struct HausdorffResult {
    double value = 0;
    double error = 0;      // certified additive slack (0 when exact)
    bool exact = false;    // value == sqrt(value_sq) with value_sq exact
    Rational value_sq = 0; // meaningful when exact
};

/// Hausdorff distance. Exact for interval-interval, point-point and
/// point-polytope (d <= 2); grid-grid goes through the corner-lattice EDT with
/// additive error h*sqrt(d).
HausdorffResult hausdorff_distance(const CompactSetHandle& a, const CompactSetHandle& b);

/// Exact squared Hausdorff distance between a point set and a polytope, d <= 2.
Rational hausdorff_sq_points_polytope(const PointSet& pts, const ConvexPolytope& poly);

GridSet rasterize_handle(const CompactSetHandle& k, const Rational& h, RasterMode mode);

bool set_is_symmetric(const CompactSetHandle& k);

} // namespace steinhaus
