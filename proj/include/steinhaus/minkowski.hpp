#pragma once

#include <optional>
#include <string>

#include "steinhaus/set_handle.hpp"

namespace steinhaus {

struct GridBudget {
    std::size_t max_cells = std::size_t{1} << 26;
    std::size_t point_pair_cap = 10'000'000;
};

/// S(K) = (K - K)/2, exact per representation. Grid sets come back at
/// resolution h/2 (exact image); sandwiches are mapped layer by layer.
IntervalUnion steinhaus_map(const IntervalUnion& k);
PointSet steinhaus_map(const PointSet& k, const GridBudget& budget = {});
ConvexPolytope steinhaus_map(const ConvexPolytope& k);
GridSet steinhaus_map(const GridSet& k, const GridBudget& budget = {});
GridSandwich steinhaus_map(const GridSandwich& k, const GridBudget& budget = {});
CompactSetHandle steinhaus_map(const CompactSetHandle& k, const GridBudget& budget = {});

/// m-fold Minkowski sum K + ... + K (exact representations only).
IntervalUnion sumset_power(const IntervalUnion& k, unsigned m, const GridBudget& budget = {});
PointSet sumset_power(const PointSet& k, unsigned m, const GridBudget& budget = {});

/// Verifies S^[n](K0) = 2^-n (K0^[2^(n-1)] - K0^[2^(n-1)]) exactly.
bool identity_check_powers(const IntervalUnion& k0, unsigned n, const GridBudget& budget = {});
bool identity_check_powers(const PointSet& k0, unsigned n, const GridBudget& budget = {});

/// |U Δ (U - x)| exactly.
Rational shift_symmdiff(const IntervalUnion& u, const Rational& x);
Rational shift_symmdiff(const GridSet& u, const CellIndex& lattice_shift);

/// F(x) = |U ∩ (U - x)| exactly; satisfies F(x) = |U| - M_U(x)/2.
Rational correlation(const IntervalUnion& u, const Rational& x);
Rational correlation(const GridSet& u, const CellIndex& lattice_shift);

struct MstarReport {
    double lower = 0;          // max over scanned lattice shifts of M_U(z)/|z|
    double upper = 0;          // 2*sqrt(sum_i F_i^2), certified
    Rational lower_ratio_sq;   // exact squared lower bound
    Rational upper_sq;         // exact squared upper bound
    CellIndex argmax_shift{0, 0, 0};
    double lipschitz_L = 0;    // per-axis constant max_i 2 F_i
    std::string sample_plan;
};

struct MstarPlan {
    std::int64_t max_scan_radius_cells = 1 << 12;
};

MstarReport mstar_estimate(const GridSet& u, const MstarPlan& plan = {});

/// One iteration record of the process.
struct TraceRow {
    int n = 0;
    Rational vol_inner;
    Rational vol_outer;
    double dh = 0;       // distance to Conv(K1) (certified upper estimate)
    double dh_err = 0;   // additive slack; 0 when exact
    bool dh_exact = false;
    Rational dh_sq;      // exact squared value when dh_exact
    double r_ball = 0;   // origin ball radius (radius convention), inner-certified
    double diam = 0;
    std::optional<CompactSetHandle> snapshot; // always set by iterate_process
    std::optional<CompactSetHandle> star;
};

struct ProcessTrace {
    int dim = 1;
    Rational seed_diameter_sq;
    std::optional<ConvexPolytope> hull; // Conv(K1)
    std::vector<TraceRow> rows;
};

struct IterateOptions {
    bool with_star = false;
    bool with_metrics = true;
    int star_directions = 720;
};

ProcessTrace iterate_process(const CompactSetHandle& k0, int n_max, const GridBudget& budget = {},
                             const IterateOptions& options = {});

/// Convex hull of any representation (corners for grids, outer for sandwiches).
ConvexPolytope hull_of_handle(const CompactSetHandle& k);

} // namespace steinhaus
