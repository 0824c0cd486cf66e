#include "steinhaus/point_set.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>

#include "steinhaus/error.hpp"

namespace steinhaus {

namespace {

void sort_dedup(std::vector<RatPoint>& pts) {
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

// Integer-lattice view of a point set: coords[i] = round exact p[i] * scale
// with a common denominator `scale`. Used to accelerate pairwise operations;
// exactness is preserved because the mapping is a bijection.
struct LatticeView {
    BigInt scale;
    std::vector<std::array<std::int64_t, 3>> coords;
};

constexpr std::int64_t kLatticeLimit = (std::int64_t{1} << 60);

std::optional<LatticeView> to_lattice(const std::vector<RatPoint>& pts, int dim) {
    BigInt lcm(1);
    for (const auto& p : pts) {
        for (int i = 0; i < dim; ++i) {
            const BigInt den = denominator(p.x[i]);
            lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
            if (lcm > kLatticeLimit) return std::nullopt;
        }
    }
    LatticeView v;
    v.scale = lcm;
    v.coords.reserve(pts.size());
    for (const auto& p : pts) {
        std::array<std::int64_t, 3> c{0, 0, 0};
        for (int i = 0; i < dim; ++i) {
            BigInt z = numerator(p.x[i]) * (lcm / denominator(p.x[i]));
            if (z > kLatticeLimit || z < -kLatticeLimit) return std::nullopt;
            c[static_cast<std::size_t>(i)] = z.convert_to<std::int64_t>();
        }
        v.coords.push_back(c);
    }
    return v;
}

std::vector<RatPoint> from_lattice(const std::vector<std::array<std::int64_t, 3>>& coords,
                                   const BigInt& scale, int dim) {
    std::vector<RatPoint> out;
    out.reserve(coords.size());
    for (const auto& c : coords) {
        RatPoint p;
        p.dim = dim;
        for (int i = 0; i < dim; ++i) p.x[i] = Rational(BigInt(c[static_cast<std::size_t>(i)]), scale);
        out.push_back(std::move(p));
    }
    return out;
}

void sort_dedup_lattice(std::vector<std::array<std::int64_t, 3>>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

} // namespace

PointSet PointSet::from_points(int dim, std::vector<RatPoint> pts) {
    if (pts.empty()) fail(ErrorCode::EmptySet, "point set must be nonempty");
    if (dim < 1 || dim > 3) fail(ErrorCode::InvalidArgument, "dimension must be 1..3");
    for (auto& p : pts) {
        if (p.dim != dim) fail(ErrorCode::DimensionMismatch, "point dimension mismatch");
    }
    sort_dedup(pts);
    PointSet s;
    s.dim_ = dim;
    s.pts_ = std::move(pts);
    return s;
}

PointSet PointSet::from_1d(const std::vector<Rational>& xs) {
    std::vector<RatPoint> pts;
    pts.reserve(xs.size());
    for (const auto& x : xs) pts.push_back(RatPoint::of(1, x));
    return from_points(1, std::move(pts));
}

Rational PointSet::diameter_sq() const {
    Rational best(0);
    for (std::size_t i = 0; i < pts_.size(); ++i) {
        for (std::size_t j = i + 1; j < pts_.size(); ++j) {
            Rational d = dist_sq(pts_[i], pts_[j]);
            if (d > best) best = d;
        }
    }
    return best;
}

Rational PointSet::distance_sq_to(const RatPoint& p) const {
    Rational best = dist_sq(p, pts_.front());
    for (std::size_t i = 1; i < pts_.size(); ++i) {
        Rational d = dist_sq(p, pts_[i]);
        if (d < best) best = d;
    }
    return best;
}

bool PointSet::contains(const RatPoint& p) const {
    return std::binary_search(pts_.begin(), pts_.end(), p,
                              [](const RatPoint& a, const RatPoint& b) { return lex_less(a, b); });
}

bool PointSet::subset_of(const PointSet& other) const {
    for (const auto& p : pts_) {
        if (!other.contains(p)) return false;
    }
    return true;
}

bool PointSet::is_symmetric_with_origin() const {
    RatPoint zero;
    zero.dim = dim_;
    if (!contains(zero)) return false;
    for (const auto& p : pts_) {
        RatPoint m = Rational(-1) * p;
        if (!contains(m)) return false;
    }
    return true;
}

PointSet PointSet::negate() const { return scale(Rational(-1)); }

PointSet PointSet::scale(const Rational& s) const {
    std::vector<RatPoint> out;
    out.reserve(pts_.size());
    for (const auto& p : pts_) out.push_back(s * p);
    return from_points(dim_, std::move(out));
}

Rational PointSet::hausdorff_sq(const PointSet& a, const PointSet& b) {
    if (a.dim_ != b.dim_) fail(ErrorCode::DimensionMismatch, "hausdorff on mixed dimensions");
    Rational best(0);
    for (const auto& p : a.pts_) {
        Rational d = b.distance_sq_to(p);
        if (d > best) best = d;
    }
    for (const auto& p : b.pts_) {
        Rational d = a.distance_sq_to(p);
        if (d > best) best = d;
    }
    return best;
}

PointSet PointSet::pairwise_half_difference(std::size_t cap) const {
    const std::size_t n = pts_.size();
    if (n * n > cap) fail(ErrorCode::BudgetExceeded, "point-set pair count exceeds cap");
    if (auto lat = to_lattice(pts_, dim_)) {
        std::vector<std::array<std::int64_t, 3>> out;
        out.reserve(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const auto& a = lat->coords[i];
                const auto& b = lat->coords[j];
                out.push_back({a[0] - b[0], a[1] - b[1], a[2] - b[2]});
            }
        }
        sort_dedup_lattice(out);
        return from_points(dim_, from_lattice(out, lat->scale * 2, dim_));
    }
    std::vector<RatPoint> out;
    out.reserve(n * n);
    const Rational half(1, 2);
    for (const auto& p : pts_) {
        for (const auto& q : pts_) out.push_back(half * (p - q));
    }
    return from_points(dim_, std::move(out));
}

PointSet PointSet::minkowski_sum(const PointSet& a, const PointSet& b, std::size_t cap) {
    if (a.dim_ != b.dim_) fail(ErrorCode::DimensionMismatch, "sum on mixed dimensions");
    const std::size_t n = a.pts_.size() * b.pts_.size();
    if (n > cap) fail(ErrorCode::BudgetExceeded, "sumset pair count exceeds cap");
    auto la = to_lattice(a.pts_, a.dim_);
    auto lb = la ? to_lattice(b.pts_, b.dim_) : std::nullopt;
    if (la && lb) {
        // common scale
        BigInt s = la->scale / boost::multiprecision::gcd(la->scale, lb->scale) * lb->scale;
        BigInt ma = s / la->scale, mb = s / lb->scale;
        std::int64_t maxa = 0, maxb = 0;
        for (const auto& p : la->coords)
            for (auto c : p) maxa = std::max(maxa, c < 0 ? -c : c);
        for (const auto& q : lb->coords)
            for (auto c : q) maxb = std::max(maxb, c < 0 ? -c : c);
        if (ma <= (1 << 20) && mb <= (1 << 20) &&
            BigInt(maxa) * ma + BigInt(maxb) * mb < kLatticeLimit) {
            std::int64_t fa = ma.convert_to<std::int64_t>(), fb = mb.convert_to<std::int64_t>();
            std::vector<std::array<std::int64_t, 3>> out;
            out.reserve(n);
            for (const auto& p : la->coords) {
                for (const auto& q : lb->coords) {
                    out.push_back({p[0] * fa + q[0] * fb, p[1] * fa + q[1] * fb,
                                   p[2] * fa + q[2] * fb});
                }
            }
            sort_dedup_lattice(out);
            return from_points(a.dim_, from_lattice(out, s, a.dim_));
        }
    }
    std::vector<RatPoint> out;
    out.reserve(n);
    for (const auto& p : a.pts_) {
        for (const auto& q : b.pts_) out.push_back(p + q);
    }
    return from_points(a.dim_, std::move(out));
}

} // namespace steinhaus
