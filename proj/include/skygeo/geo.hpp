#pragma once

#include <string>
#include <vector>

namespace skygeo {

namespace wgs84 {
/// Semi-major axis [m].
inline constexpr double kSemiMajorM = 6378137.0;
/// Flattening.
inline constexpr double kFlattening = 1.0 / 298.257223563;
/// Semi-minor axis [m].
inline constexpr double kSemiMinorM = kSemiMajorM * (1.0 - kFlattening);
/// First eccentricity squared, e^2 = f(2-f).
inline constexpr double kEccSq = kFlattening * (2.0 - kFlattening);
}  // namespace wgs84

/// Geodetic coordinate in degrees. Valid when lat in [-90, 90] and
/// lon in (-180, 180].
struct GeoCoordinate {
    double lat_deg = 0.0;
    double lon_deg = 0.0;

    bool operator==(const GeoCoordinate&) const = default;
};

/// Earth-Centered Earth-Fixed point in meters.
struct EcefPoint {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    bool operator==(const EcefPoint&) const = default;
};

/// Geographic bounding box in degrees. west > east encodes an
/// antimeridian crossing; south <= north always.
struct GeoBoundingBox {
    double south = 0.0;
    double north = 0.0;
    double west = 0.0;
    double east = 0.0;

    bool crosses_antimeridian() const { return west > east; }

    /// Width in degrees of longitude, crossing-aware.
    double lon_span() const {
        return crosses_antimeridian() ? (180.0 - west) + (east + 180.0) : east - west;
    }
    double lat_span() const { return north - south; }

    /// Closed containment (edges count as inside), crossing-aware.
    bool contains(const GeoCoordinate& c) const;

    GeoCoordinate center() const;

    bool operator==(const GeoBoundingBox&) const = default;
};

/// A named geographic entity with its geocode, bounding box and the
/// number of times the name was mentioned.
struct WeightedPlace {
    std::string name;
    GeoCoordinate coordinate;
    GeoBoundingBox bbox;
    int weight = 1;
};

/// Maps any finite longitude into (-180, 180], congruent mod 360.
double normalize_longitude(double lon_deg);

/// Throws ValidationError (naming the field) when c is outside the
/// documented ranges; returns a longitude-normalized copy otherwise.
GeoCoordinate validate_coordinate(const GeoCoordinate& c, const std::string& context = {});

/// Closed-form WGS84 conversion at ellipsoid height 0. Exact at the
/// quadrant anchors (equator/prime meridian, poles).
EcefPoint geodetic_to_ecef(const GeoCoordinate& c);

/// Iterative inverse, converged to 1e-12 rad. Interior points are
/// inverted directly (the implied negative altitude is discarded).
/// Throws DegenerateGeometryError for points within 1 m of the rotation
/// axis, where longitude is undefined.
GeoCoordinate ecef_to_geodetic(const EcefPoint& p);

/// Splits a crossing box into its two west<=east pieces; non-crossing
/// boxes pass through unchanged. Pointwise membership is preserved.
std::vector<GeoBoundingBox> split_antimeridian(const GeoBoundingBox& b);

}  // namespace skygeo
