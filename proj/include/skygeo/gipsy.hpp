#pragma once

#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

#include "skygeo/geo.hpp"

namespace skygeo {

/// One stacked polyhedron: an axis-aligned footprint (west <= east, i.e.
/// already antimeridian-split) whose height is the mention weight.
struct Prism {
    GeoBoundingBox footprint;
    int height = 1;
};

/// Piecewise-constant elevation surface from coordinate compression over
/// all footprint edges. Cells are half-open: closed on their south/west
/// edges, open on north/east, so they partition the bounding rectangle.
class ElevationMap {
public:
    ElevationMap() = default;
    ElevationMap(std::vector<double> x_cuts, std::vector<double> y_cuts,
                 std::vector<int> elevation);

    const std::vector<double>& x_cuts() const { return x_cuts_; }
    const std::vector<double>& y_cuts() const { return y_cuts_; }

    int nx() const { return static_cast<int>(x_cuts_.size()) - 1; }
    int ny() const { return static_cast<int>(y_cuts_.size()) - 1; }
    bool empty() const { return elevation_.empty(); }

    int cell_elevation(int iy, int ix) const { return elevation_[std::size_t(iy) * nx() + ix]; }
    GeoBoundingBox cell_box(int iy, int ix) const {
        return GeoBoundingBox{y_cuts_[iy], y_cuts_[iy + 1], x_cuts_[ix], x_cuts_[ix + 1]};
    }

    /// Stacked height at a point; 0 outside the compressed grid.
    int elevation_at(double lat_deg, double lon_deg) const;

    int max_elevation() const;

    /// Debug dump: array of {south, north, west, east, elevation}.
    nlohmann::json cells_json() const;

private:
    std::vector<double> x_cuts_;  // sorted unique longitudes
    std::vector<double> y_cuts_;  // sorted unique latitudes
    std::vector<int> elevation_;  // row-major [iy * nx + ix]
};

/// Overlays all prisms. Each cell's elevation is the sum of the heights of
/// the prisms covering it, which is the closed form the three stacking
/// rules (no overlap / containment / partial overlap) produce regardless
/// of insertion order.
ElevationMap build_elevation_map(std::span<const Prism> prisms);

/// An edge-connected component of cells at the map's maximal elevation.
struct MaxRegion {
    std::vector<std::pair<int, int>> cells;  // (iy, ix)
    int elevation = 0;
    double area = 0.0;  // cos(lat)-weighted square degrees
    GeoCoordinate centroid;
    double corner_south = 0.0;  // smallest (south, west) corner, for tie-breaks
    double corner_west = 0.0;
};

/// Connected components (4-adjacency on the compressed grid) of the cells
/// at maximal elevation, ordered by (corner_south, corner_west). Area and
/// centroid use cos-latitude weighting, with cells wider than 10 degrees
/// of latitude split into bands first.
std::vector<MaxRegion> max_regions(const ElevationMap& map);

/// Footprints for a place list: zero-area boxes grow to 0.02 x 0.02 deg
/// around the place coordinate, then everything is antimeridian-split.
std::vector<Prism> make_prisms(std::span<const WeightedPlace> places);

/// Full GIPSY geocode: stack prisms, take the maximal-elevation regions,
/// return the centroid of the largest-area one (ties: smallest south, then
/// west corner). Throws NoCandidatesError on an empty list.
GeoCoordinate gipsy_locate(std::span<const WeightedPlace> places);

}  // namespace skygeo
