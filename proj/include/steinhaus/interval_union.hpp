#pragma once

#include <utility>
#include <vector>

#include "steinhaus/rational.hpp"

namespace steinhaus {

struct Interval {
    Rational lo;
    Rational hi;

    bool operator==(const Interval&) const = default;
};

/// Nonempty compact subset of R^1 stored as sorted, strictly separated closed
/// intervals (touching intervals are merged on construction). Degenerate
/// single points are allowed as lo == hi. This is the exact engine for the
/// one-dimensional statements.
class IntervalUnion {
public:
    /// Sorts and merges; throws EmptySet on empty input.
    static IntervalUnion canonicalize(std::vector<Interval> raw);

    static IntervalUnion single(const Rational& lo, const Rational& hi);
    static IntervalUnion point(const Rational& x) { return single(x, x); }

    const std::vector<Interval>& parts() const { return parts_; }
    std::size_t component_count() const { return parts_.size(); }

    Rational volume() const;
    Rational diameter() const { return parts_.back().hi - parts_.front().lo; }
    Rational min() const { return parts_.front().lo; }
    Rational max() const { return parts_.back().hi; }

    bool contains(const Rational& x) const;
    bool contains_interval(const Rational& lo, const Rational& hi) const;
    bool subset_of(const IntervalUnion& other) const;

    Rational distance_to(const Rational& x) const;

    /// Exact Hausdorff distance between two interval unions.
    static Rational hausdorff(const IntervalUnion& a, const IntervalUnion& b);

    IntervalUnion translate(const Rational& t) const;
    IntervalUnion scale(const Rational& s) const;
    IntervalUnion negate() const { return scale(Rational(-1)); }

    static IntervalUnion unite(const IntervalUnion& a, const IntervalUnion& b);
    static IntervalUnion intersect_or_empty_check(const IntervalUnion& a, const IntervalUnion& b,
                                                  bool* empty);

    /// Minkowski sum of the two unions (pairwise interval sums, canonicalized).
    static IntervalUnion minkowski_sum(const IntervalUnion& a, const IntervalUnion& b);

    /// |A ∩ (A - t)| (exact overlap measure).
    Rational overlap_measure(const Rational& shift) const;

    /// |A Δ (A - t)| = 2(|A| - overlap).
    Rational symmdiff_measure(const Rational& shift) const {
        return 2 * (volume() - overlap_measure(shift));
    }

    bool operator==(const IntervalUnion&) const = default;

    /// K = -K (exact).
    bool is_symmetric() const;

private:
    explicit IntervalUnion(std::vector<Interval> parts) : parts_(std::move(parts)) {}
    std::vector<Interval> parts_;
};

} // namespace steinhaus
