#pragma once

#include <array>
#include <vector>

#include "steinhaus/set_handle.hpp"

namespace steinhaus {

struct DirectionPlan {
    int count = 720; // d=2: uniform angles; d=3: Fibonacci sphere (use ~2048)
};

std::vector<std::array<double, 3>> sample_directions(int dim, int count);

/// Per-direction profile of a symmetric compact set: r(theta) and D(theta)
/// are the diameters of the largest inner and smallest outer centered
/// segments along theta (both conventions follow the quasi-support
/// definition, i.e. [0, r/2] ⊆ P_theta ⊆ [0, D/2]).
struct QuasiSupportProfile {
    int dim = 1;
    std::vector<std::array<double, 3>> directions;
    std::vector<double> r_theta;
    std::vector<double> d_theta;
    double r_min = 0; // min over sampled directions
    double d_max = 0; // max over sampled directions
    double error = 0; // additive per-value slack (grids: h*sqrt(d))
};

QuasiSupportProfile quasi_support(const CompactSetHandle& k, const DirectionPlan& plan = {});

/// Largest star-convex (about the origin) subset: exact in 1D, exact for
/// symmetric convex polytopes, inner grid approximation for grid sets.
CompactSetHandle star_subset(const CompactSetHandle& k, const DirectionPlan& plan = {});

struct CaratheodoryDecomposition {
    std::vector<RatPoint> base;    // at most d+1 points of K1
    std::vector<Rational> weights; // nonnegative, sum 1, largest first
};

/// Exact convex-combination certificate for y ∈ Conv(K1).
CaratheodoryDecomposition caratheodory_decompose(const RatPoint& y, const PointSet& k1);

struct DyadicRoundResult {
    std::vector<Rational> q; // dyadic weights with denominator 2^(n-1)
    RatPoint point;          // sum q_i x_i, a certified member of K_n
    Rational dist_sq;        // exact squared distance to the query point
    Rational bound_sq;       // (D d / 2^n)^2
    bool certified = false;
};

/// Rounds a Caratheodory decomposition to the dyadic mesh with denominator
/// 2^(n-1); requires n >= ceil(log2(d(d+1))).
DyadicRoundResult dyadic_round(const CaratheodoryDecomposition& dec, unsigned n,
                               const RatPoint& y, const Rational& diameter_sq_of_k0);

/// { sum (a_i / 2^(n-1)) x_i : a_i >= 0 integers, sum a_i = 2^(n-1) } exactly.
PointSet weighted_combination_set(const PointSet& k1, unsigned n, std::size_t cap = 1'000'000);

struct OriginBall {
    Rational radius_sq_lo; // certified lower (exact == upper except sandwiches)
    Rational radius_sq_hi;
    bool exact() const { return radius_sq_lo == radius_sq_hi; }
};

/// Largest rho with B(0, rho) ⊆ K, for symmetric K (radius convention).
OriginBall origin_ball_radius(const CompactSetHandle& k);

} // namespace steinhaus
