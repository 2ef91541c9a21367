#pragma once

#include <span>

#include "skygeo/geo.hpp"

namespace skygeo {

/// Mention-weighted chordal average: converts every place to ECEF, takes
/// the weighted mean, and inverts back to a geodetic coordinate (the mean
/// lies inside the ellipsoid; its negative altitude is discarded).
/// Invariant to uniform scaling of all weights.
///
/// Throws NoCandidatesError on an empty list, ValidationError on weights
/// below 1 and DegenerateGeometryError when the mean collapses onto the
/// rotation axis (antipodal inputs), where longitude is undefined.
GeoCoordinate weighted_centroid(std::span<const WeightedPlace> places);

}  // namespace skygeo
