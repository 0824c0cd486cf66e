#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "steinhaus/interval_union.hpp"
#include "steinhaus/point_set.hpp"
#include "steinhaus/polytope.hpp"
#include "steinhaus/rational.hpp"

namespace steinhaus {

using CellIndex = std::array<std::int32_t, 3>;

enum class RasterMode { Inner, Outer };

/// Union of closed axis-aligned cells ∏ [h·z_i, h·(z_i+1)] at resolution h > 0.
/// Cells are kept sorted and unique; unused index coordinates are zero.
class GridSet {
public:
    static GridSet from_cells(int dim, Rational h, std::vector<CellIndex> cells);

    int dim() const { return dim_; }
    const Rational& cell_size() const { return h_; }
    const std::vector<CellIndex>& cells() const { return cells_; }
    std::size_t cell_count() const { return cells_.size(); }

    Rational volume() const;
    /// Exact squared diameter (max distance between cell corners).
    Rational diameter_sq() const;

    CellIndex bbox_lo() const;
    CellIndex bbox_hi() const; // inclusive

    bool contains_cell(const CellIndex& z) const;
    bool subset_of(const GridSet& other) const;

    /// Exact squared distance from a rational point to the cell union.
    Rational distance_sq_to(const RatPoint& p) const;

    /// Cell-index symmetry z -> -z - 1 (set symmetric about the origin).
    bool is_symmetric_with_origin() const;

    GridSet translate_cells(const CellIndex& dz) const;

    bool operator==(const GridSet&) const = default;

private:
    GridSet() = default;
    int dim_ = 1;
    Rational h_ = Rational(1);
    std::vector<CellIndex> cells_;
};

/// inner ⊆ true set ⊆ outer, same dimension and resolution.
struct GridSandwich {
    GridSet inner;
    GridSet outer;

    static GridSandwich make(GridSet inner, GridSet outer);
};

GridSet rasterize(const IntervalUnion& k, const Rational& h, RasterMode mode);
GridSet rasterize(const ConvexPolytope& k, const Rational& h, RasterMode mode);
GridSet rasterize(const PointSet& k, const Rational& h, RasterMode mode);

/// Exact rasterization of the closed disk/ball of radius R about the origin.
/// Center mode keeps cells whose center lies in the ball.
enum class DiskMode { Center, Inner, Outer };
GridSet ball_grid(int dim, const Rational& radius, const Rational& h, DiskMode mode);

/// Cells of U that carry at least one exposed face.
GridSet boundary_cells(const GridSet& u);

/// Total (d-1)-measure of exposed faces normal to each axis, one direction
/// (equals #maximal runs along the axis times h^{d-1}).
std::array<Rational, 3> directional_face_measure(const GridSet& u);

/// Coarsen to resolution 2h. Inner: keep a coarse cell iff all 2^d children
/// are present; Outer: iff any child is present.
GridSet coarsen(const GridSet& u, RasterMode mode);

/// Exact set of index differences (cells - cells), as cells on the same h lattice.
std::vector<CellIndex> difference_index_set(const GridSet& u);

/// |U ∩ (U - h·z)| exactly, for a lattice shift z.
Rational lattice_overlap_measure(const GridSet& u, const CellIndex& z);

/// Exact largest rho with closed ball B(0, rho) ⊆ U; 0 if the origin is not
/// covered. Returned as exact squared value.
Rational origin_ball_radius_sq(const GridSet& u);

/// Sound inner erosion by radius k·h (cells kept iff the ball of radius
/// (k+1)·h about the cell center stays inside U).
GridSet erode_by_cells(const GridSet& u, int k);

/// Largest axis-aligned all-inside box of cells (2D exact; other dims: largest
/// cell row found greedily). Returned as a GridSet.
GridSet largest_inscribed_box(const GridSet& u);

struct GridHausdorff {
    double value = 0;
    double error = 0; // additive certified slack
};

/// Hausdorff distance between two grid sets via exact corner-lattice EDT;
/// additive error at most h*sqrt(d).
GridHausdorff grid_hausdorff(const GridSet& a, const GridSet& b);

struct TubeReport {
    double volume = 0;
    double error_bound = 0;
    bool flagged = false; // error bound not small against the measured value
};

/// |{y : d(y, ∂U) <= r}| measured by exact EDT from exposed-face midpoint
/// sites, counted at cell centers. Requires r >= h.
TubeReport tube_volume(const GridSet& u, const GridSet& boundary, const Rational& r);

struct ContentEstimate {
    std::vector<double> radii;
    std::vector<double> tube_volumes;
    std::vector<double> ratios; // tube/(2x)
    double extrapolated = 0;
};

/// Ratio sequence tube(x)/(2x) for x = 2^-k down to 4h plus an extrapolated
/// boundary-content estimate. Requires dim >= 2.
ContentEstimate minkowski_content_estimate(const GridSet& u);

} // namespace steinhaus
