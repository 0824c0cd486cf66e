#pragma once

#include <cstddef>
#include <vector>

#include "steinhaus/geometry.hpp"

namespace steinhaus {

/// Finite exact-rational point set (deduplicated, lexicographically sorted).
class PointSet {
public:
    static PointSet from_points(int dim, std::vector<RatPoint> pts);
    static PointSet from_1d(const std::vector<Rational>& xs);

    int dim() const { return dim_; }
    const std::vector<RatPoint>& points() const { return pts_; }
    std::size_t size() const { return pts_.size(); }

    Rational diameter_sq() const;
    Rational distance_sq_to(const RatPoint& p) const;

    bool contains(const RatPoint& p) const;
    bool subset_of(const PointSet& other) const;
    bool operator==(const PointSet&) const = default;

    /// K = -K and 0 in K.
    bool is_symmetric_with_origin() const;

    PointSet negate() const;
    PointSet scale(const Rational& s) const;

    /// Exact squared Hausdorff distance between two point sets.
    static Rational hausdorff_sq(const PointSet& a, const PointSet& b);

    /// All pairwise (p - q) scaled by 1/2, deduplicated: the Steinhaus map image.
    /// cap = maximum number of raw pairs allowed before deduplication.
    PointSet pairwise_half_difference(std::size_t cap) const;

    /// Minkowski sum with another point set (capped).
    static PointSet minkowski_sum(const PointSet& a, const PointSet& b, std::size_t cap);

private:
    PointSet() = default;
    int dim_ = 1;
    std::vector<RatPoint> pts_;
};

} // namespace steinhaus
