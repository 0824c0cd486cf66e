#include "steinhaus/minkowski.hpp"

#include <algorithm>
#include <cmath>

#include "steinhaus/convex_ops.hpp"
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

} // namespace

IntervalUnion steinhaus_map(const IntervalUnion& k) {
    // S(∪A_i) = ∪S(A_i) ∪ ∪_{i≠j} (A_i - A_j)/2
    std::vector<Interval> out;
    const auto& parts = k.parts();
    const Rational half(1, 2);
    for (const auto& a : parts) {
        Rational l = (a.hi - a.lo) * half;
        out.push_back({-l, l});
    }
    for (std::size_t i = 0; i < parts.size(); ++i) {
        for (std::size_t j = 0; j < parts.size(); ++j) {
            if (i == j) continue;
            out.push_back({(parts[i].lo - parts[j].hi) * half, (parts[i].hi - parts[j].lo) * half});
        }
    }
    return IntervalUnion::canonicalize(std::move(out));
}

PointSet steinhaus_map(const PointSet& k, const GridBudget& budget) {
    return k.pairwise_half_difference(budget.point_pair_cap);
}

ConvexPolytope steinhaus_map(const ConvexPolytope& k) {
    // difference body: hull of (v_i - v_j)/2
    std::vector<RatPoint> diffs;
    const auto& v = k.vertices();
    diffs.reserve(v.size() * v.size());
    const Rational half(1, 2);
    for (const auto& p : v) {
        for (const auto& q : v) diffs.push_back(half * (p - q));
    }
    return ConvexPolytope::hull_of(k.dim(), std::move(diffs));
}

GridSet steinhaus_map(const GridSet& k, const GridBudget& budget) {
    // (K - K)/2 is exactly a grid set at h/2: each index difference u
    // contributes the fine cells u + {-1,0}^d
    auto diffs = difference_index_set(k);
    const int d = k.dim();
    std::vector<CellIndex> fine;
    fine.reserve(diffs.size() << d);
    for (const auto& u : diffs) {
        for (int m = 0; m < (1 << d); ++m) {
            CellIndex c = u;
            for (int i = 0; i < d; ++i) c[i] += ((m >> i) & 1) - 1;
            fine.push_back(c);
        }
    }
    std::sort(fine.begin(), fine.end());
    fine.erase(std::unique(fine.begin(), fine.end()), fine.end());
    if (fine.size() > budget.max_cells)
        fail(ErrorCode::BudgetExceeded,
             "refined grid exceeds the cell budget; coarsen the input or raise the budget");
    return GridSet::from_cells(d, k.cell_size() / 2, std::move(fine));
}

GridSandwich steinhaus_map(const GridSandwich& k, const GridBudget& budget) {
    GridSet inner = steinhaus_map(k.inner, budget);
    GridSet outer = steinhaus_map(k.outer, budget);
    return GridSandwich::make(std::move(inner), std::move(outer));
}

CompactSetHandle steinhaus_map(const CompactSetHandle& k, const GridBudget& budget) {
    return std::visit(
        overloaded{
            [&](const IntervalUnion& u) -> CompactSetHandle { return steinhaus_map(u); },
            [&](const PointSet& p) -> CompactSetHandle { return steinhaus_map(p, budget); },
            [&](const ConvexPolytope& c) -> CompactSetHandle { return steinhaus_map(c); },
            [&](const GridSet& g) -> CompactSetHandle { return steinhaus_map(g, budget); },
            [&](const GridSandwich& s) -> CompactSetHandle { return steinhaus_map(s, budget); },
        },
        k);
}

IntervalUnion sumset_power(const IntervalUnion& k, unsigned m, const GridBudget&) {
    if (m < 1) fail(ErrorCode::InvalidArgument, "sumset power needs m >= 1");
    // doubling
    IntervalUnion acc = k;  // invariant: acc = k^[cur]
    unsigned cur = 1;
    std::vector<unsigned> bits;
    while (cur < m) {
        if (cur * 2 <= m) {
            acc = IntervalUnion::minkowski_sum(acc, acc);
            cur *= 2;
        } else {
            acc = IntervalUnion::minkowski_sum(acc, k);
            cur += 1;
        }
    }
    return acc;
}

PointSet sumset_power(const PointSet& k, unsigned m, const GridBudget& budget) {
    if (m < 1) fail(ErrorCode::InvalidArgument, "sumset power needs m >= 1");
    PointSet acc = k;
    unsigned cur = 1;
    while (cur < m) {
        if (cur * 2 <= m) {
            acc = PointSet::minkowski_sum(acc, acc, budget.point_pair_cap);
            cur *= 2;
        } else {
            acc = PointSet::minkowski_sum(acc, k, budget.point_pair_cap);
            cur += 1;
        }
    }
    return acc;
}

bool identity_check_powers(const IntervalUnion& k0, unsigned n, const GridBudget& budget) {
    if (n < 1) fail(ErrorCode::InvalidArgument, "identity check needs n >= 1");
    IntervalUnion lhs = k0;
    for (unsigned i = 0; i < n; ++i) lhs = steinhaus_map(lhs);
    IntervalUnion p = sumset_power(k0, 1u << (n - 1), budget);
    IntervalUnion rhs =
        IntervalUnion::minkowski_sum(p, p.negate()).scale(Rational(1, BigInt(1) << n));
    return lhs == rhs;
}

bool identity_check_powers(const PointSet& k0, unsigned n, const GridBudget& budget) {
    if (n < 1) fail(ErrorCode::InvalidArgument, "identity check needs n >= 1");
    PointSet lhs = k0;
    for (unsigned i = 0; i < n; ++i) lhs = steinhaus_map(lhs, budget);
    PointSet p = sumset_power(k0, 1u << (n - 1), budget);
    PointSet rhs = PointSet::minkowski_sum(p, p.negate(), budget.point_pair_cap)
                       .scale(Rational(1, BigInt(1) << n));
    return lhs == rhs;
}

Rational shift_symmdiff(const IntervalUnion& u, const Rational& x) {
    return u.symmdiff_measure(x);
}

Rational shift_symmdiff(const GridSet& u, const CellIndex& z) {
    return 2 * (u.volume() - lattice_overlap_measure(u, z));
}

Rational correlation(const IntervalUnion& u, const Rational& x) { return u.overlap_measure(x); }

Rational correlation(const GridSet& u, const CellIndex& z) {
    return lattice_overlap_measure(u, z);
}

MstarReport mstar_estimate(const GridSet& u, const MstarPlan& plan) {
    const int d = u.dim();
    const Rational& h = u.cell_size();
    auto fm = directional_face_measure(u);
    Rational upper_sq = 4 * (fm[0] * fm[0] + fm[1] * fm[1] + fm[2] * fm[2]);

    MstarReport rep;
    rep.upper_sq = upper_sq;
    rep.upper = std::sqrt(to_double(upper_sq));
    Rational lmax = std::max(fm[0], std::max(fm[1], fm[2]));
    rep.lipschitz_L = to_double(2 * lmax);

    // lattice scan; M_U(z)/|z| vanishes past the diameter, so truncate there
    Rational diam_ub = sqrt_upper_bound(u.diameter_sq());
    std::int64_t rmax =
        rational_ceil(diam_ub / h).convert_to<long long>() + 2;
    rmax = std::min<std::int64_t>(rmax, plan.max_scan_radius_cells);
    rep.sample_plan = "lattice shifts |z| <= " + std::to_string(rmax) +
                      " cells (M_U saturates past the diameter); upper bound via "
                      "per-axis exposed-face measures";

    detail::BitGrid b;
    {
        // local copy of the bit image for fast overlap counting
        CellIndex lo = u.bbox_lo(), hi = u.bbox_hi();
        std::array<std::int64_t, 3> blo{lo[0], lo[1], lo[2]};
        std::array<int, 3> n{hi[0] - lo[0] + 1, hi[1] - lo[1] + 1, hi[2] - lo[2] + 1};
        for (int i = d; i < 3; ++i) {
            blo[i] = 0;
            n[i] = 1;
        }
        b.init(d, blo, n);
        for (const auto& c : u.cells()) b.set(c[0], c[1], c[2]);
    }
    const std::int64_t total = static_cast<std::int64_t>(u.cell_count());

    // best ratio squared = (M_cnt)^2 * h^(2d-2) / |z|^2 tracked by cross-multiplying
    unsigned __int128 best_num = 0; // M_cnt^2
    std::int64_t best_den = 1;      // |z|^2 in cells
    CellIndex best_z{0, 0, 0};

    auto overlap_count = [&](const CellIndex& z) -> std::int64_t {
        std::int64_t cnt = 0;
        for (int zz = 0; zz < b.n[2]; ++zz) {
            std::int64_t z2 = zz + z[2];
            if (d >= 3) {
                if (z2 < 0 || z2 >= b.n[2]) continue;
            } else {
                z2 = 0;
            }
            for (int y = 0; y < b.n[1]; ++y) {
                std::int64_t y2 = y + z[1];
                if (d >= 2) {
                    if (y2 < 0 || y2 >= b.n[1]) continue;
                } else {
                    y2 = 0;
                }
                cnt += static_cast<std::int64_t>(detail::and_shifted_popcount(
                    b.row(y, zz), b.row(static_cast<int>(y2), static_cast<int>(z2)), b.wpr,
                    -z[0]));
            }
        }
        return cnt;
    };

    const std::int64_t r2max = rmax * rmax;
    const std::int64_t ylim = d >= 2 ? rmax : 0;
    const std::int64_t zlim = d >= 3 ? rmax : 0;
    for (std::int64_t zz = -zlim; zz <= zlim; ++zz) {
        for (std::int64_t zy = -ylim; zy <= ylim; ++zy) {
            for (std::int64_t zx = 0; zx <= rmax; ++zx) {
                if (zx == 0 && (zy < 0 || (zy == 0 && zz <= 0))) continue; // half-space, skip 0
                std::int64_t n2 = zx * zx + zy * zy + zz * zz;
                if (n2 == 0 || n2 > r2max) continue;
                CellIndex z{static_cast<std::int32_t>(zx), static_cast<std::int32_t>(zy),
                            static_cast<std::int32_t>(zz)};
                std::int64_t m_cnt = 2 * (total - overlap_count(z));
                unsigned __int128 num = static_cast<unsigned __int128>(m_cnt) * m_cnt;
                // compare num/n2 > best_num/best_den
                if (num * static_cast<unsigned __int128>(best_den) >
                    best_num * static_cast<unsigned __int128>(n2)) {
                    best_num = num;
                    best_den = n2;
                    best_z = z;
                }
            }
        }
    }
    // ratio^2 = (M_cnt h^d)^2 / (|z| h)^2 = M_cnt^2 h^(2d-2) / |z|^2
    Rational h2d2 = 1;
    for (int i = 0; i < 2 * d - 2; ++i) h2d2 *= h;
    BigInt bn = BigInt(static_cast<std::uint64_t>(best_num >> 64)) << 64;
    bn += BigInt(static_cast<std::uint64_t>(best_num));
    rep.lower_ratio_sq = Rational(bn, BigInt(best_den)) * h2d2;
    rep.lower = std::sqrt(to_double(rep.lower_ratio_sq));
    rep.argmax_shift = best_z;
    return rep;
}

} // namespace steinhaus
