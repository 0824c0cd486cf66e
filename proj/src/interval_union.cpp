#include "steinhaus/interval_union.hpp"

#include <algorithm>

namespace steinhaus {

IntervalUnion IntervalUnion::canonicalize(std::vector<Interval> raw) {
    if (raw.empty()) fail(ErrorCode::EmptySet, "interval union must be nonempty");
    for (const auto& iv : raw) {
        if (iv.lo > iv.hi) fail(ErrorCode::InvalidArgument, "interval with lo > hi");
    }
    std::sort(raw.begin(), raw.end(),
              [](const Interval& a, const Interval& b) {
                  return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
              });
    std::vector<Interval> merged;
    merged.reserve(raw.size());
    for (const auto& iv : raw) {
        // closed intervals: touching endpoints coalesce
        if (!merged.empty() && iv.lo <= merged.back().hi) {
            if (iv.hi > merged.back().hi) merged.back().hi = iv.hi;
        } else {
            merged.push_back(iv);
        }
    }
    return IntervalUnion(std::move(merged));
}

IntervalUnion IntervalUnion::single(const Rational& lo, const Rational& hi) {
    return canonicalize({Interval{lo, hi}});
}

Rational IntervalUnion::volume() const {
    Rational v(0);
    for (const auto& iv : parts_) v += iv.hi - iv.lo;
    return v;
}

bool IntervalUnion::contains(const Rational& x) const {
    for (const auto& iv : parts_) {
        if (x < iv.lo) return false;
        if (x <= iv.hi) return true;
    }
    return false;
}

bool IntervalUnion::contains_interval(const Rational& lo, const Rational& hi) const {
    for (const auto& iv : parts_) {
        if (iv.lo <= lo && hi <= iv.hi) return true;
    }
    return false;
}

bool IntervalUnion::subset_of(const IntervalUnion& other) const {
    for (const auto& iv : parts_) {
        if (!other.contains_interval(iv.lo, iv.hi)) return false;
    }
    return true;
}

Rational IntervalUnion::distance_to(const Rational& x) const {
    Rational best(-1);
    for (const auto& iv : parts_) {
        Rational d(0);
        if (x < iv.lo)
            d = iv.lo - x;
        else if (x > iv.hi)
            d = x - iv.hi;
        if (best < 0 || d < best) best = d;
        if (best == 0) break;
    }
    return best;
}

namespace {

// sup over points of `from` of distance to `to`; candidates are the endpoints
// of `from` and the midpoints of `to`'s gaps that land inside `from`.
Rational directed_hausdorff(const IntervalUnion& from, const IntervalUnion& to) {
    Rational best(0);
    auto consider = [&](const Rational& x) {
        Rational d = to.distance_to(x);
        if (d > best) best = d;
    };
    for (const auto& iv : from.parts()) {
        consider(iv.lo);
        consider(iv.hi);
    }
    const auto& tp = to.parts();
    for (std::size_t i = 0; i + 1 < tp.size(); ++i) {
        Rational mid = (tp[i].hi + tp[i + 1].lo) / 2;
        if (from.contains(mid)) consider(mid);
    }
    return best;
}

} // namespace

Rational IntervalUnion::hausdorff(const IntervalUnion& a, const IntervalUnion& b) {
    Rational h1 = directed_hausdorff(a, b);
    Rational h2 = directed_hausdorff(b, a);
    return h1 > h2 ? h1 : h2;
}

IntervalUnion IntervalUnion::translate(const Rational& t) const {
    std::vector<Interval> out = parts_;
    for (auto& iv : out) {
        iv.lo += t;
        iv.hi += t;
    }
    return IntervalUnion(std::move(out));
}

IntervalUnion IntervalUnion::scale(const Rational& s) const {
    std::vector<Interval> out;
    out.reserve(parts_.size());
    for (const auto& iv : parts_) {
        Rational a = iv.lo * s, b = iv.hi * s;
        if (a > b) std::swap(a, b);
        out.push_back({a, b});
    }
    return canonicalize(std::move(out));
}

IntervalUnion IntervalUnion::unite(const IntervalUnion& a, const IntervalUnion& b) {
    std::vector<Interval> all = a.parts_;
    all.insert(all.end(), b.parts_.begin(), b.parts_.end());
    return canonicalize(std::move(all));
}

IntervalUnion IntervalUnion::intersect_or_empty_check(const IntervalUnion& a,
                                                      const IntervalUnion& b, bool* empty) {
    std::vector<Interval> out;
    for (const auto& x : a.parts_) {
        for (const auto& y : b.parts_) {
            Rational lo = std::max(x.lo, y.lo);
            Rational hi = std::min(x.hi, y.hi);
            if (lo <= hi) out.push_back({lo, hi});
        }
    }
    if (out.empty()) {
        if (empty) *empty = true;
        return IntervalUnion::point(Rational(0)); // unused sentinel
    }
    if (empty) *empty = false;
    return canonicalize(std::move(out));
}

IntervalUnion IntervalUnion::minkowski_sum(const IntervalUnion& a, const IntervalUnion& b) {
    std::vector<Interval> out;
    out.reserve(a.parts_.size() * b.parts_.size());
    for (const auto& x : a.parts_) {
        for (const auto& y : b.parts_) {
            out.push_back({x.lo + y.lo, x.hi + y.hi});
        }
    }
    return canonicalize(std::move(out));
}

Rational IntervalUnion::overlap_measure(const Rational& shift) const {
    // |A ∩ (A - shift)|: (A - shift) has parts [lo - shift, hi - shift]
    Rational total(0);
    for (const auto& x : parts_) {
        for (const auto& y : parts_) {
            Rational lo = std::max(x.lo, y.lo - shift);
            Rational hi = std::min(x.hi, y.hi - shift);
            if (lo < hi) total += hi - lo;
        }
    }
    return total;
}

bool IntervalUnion::is_symmetric() const {
    std::size_t n = parts_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = parts_[i];
        const auto& b = parts_[n - 1 - i];
        if (a.lo != -b.hi || a.hi != -b.lo) return false;
    }
    return true;
}

} // namespace steinhaus
