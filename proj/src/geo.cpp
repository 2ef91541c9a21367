#include "skygeo/geo.hpp"

#include <cmath>

#include "skygeo/errors.hpp"

namespace skygeo {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

// sin/cos in degrees, exact at the quadrant angles so that the pole and
// equator anchors come out bit-exact instead of picking up sin(pi/2-eps)
// noise from the radian conversion.
void sincos_deg(double deg, double& s, double& c) {
    double r = std::fmod(deg, 360.0);
    if (r < 0.0) r += 360.0;
    if (r == 0.0) {
        s = 0.0;
        c = 1.0;
        return;
    }
    if (r == 90.0) {
        s = 1.0;
        c = 0.0;
        return;
    }
    if (r == 180.0) {
        s = 0.0;
        c = -1.0;
        return;
    }
    if (r == 270.0) {
        s = -1.0;
        c = 0.0;
        return;
    }
    const double rad = deg_to_rad(deg);
    s = std::sin(rad);
    c = std::cos(rad);
}

}  // namespace

double normalize_longitude(double lon_deg) {
    if (!std::isfinite(lon_deg)) {
        throw ValidationError("normalize_longitude: non-finite longitude");
    }
    double r = std::fmod(lon_deg, 360.0);
    if (r <= -180.0) {
        r += 360.0;
    } else if (r > 180.0) {
        r -= 360.0;
    }
    return r;
}

GeoCoordinate validate_coordinate(const GeoCoordinate& c, const std::string& context) {
    const std::string where = context.empty() ? std::string() : context + ": ";
    if (!std::isfinite(c.lat_deg) || c.lat_deg < -90.0 || c.lat_deg > 90.0) {
        throw ValidationError(where + "lat out of range [-90, 90]: " + std::to_string(c.lat_deg));
    }
    if (!std::isfinite(c.lon_deg)) {
        throw ValidationError(where + "lon is not finite");
    }
    return GeoCoordinate{c.lat_deg, normalize_longitude(c.lon_deg)};
}

bool GeoBoundingBox::contains(const GeoCoordinate& c) const {
    if (c.lat_deg < south || c.lat_deg > north) return false;
    if (crosses_antimeridian()) {
        return c.lon_deg >= west || c.lon_deg <= east;
    }
    return c.lon_deg >= west && c.lon_deg <= east;
}

GeoCoordinate GeoBoundingBox::center() const {
    const double lat = 0.5 * (south + north);
    if (!crosses_antimeridian()) {
        return GeoCoordinate{lat, 0.5 * (west + east)};
    }
    return GeoCoordinate{lat, normalize_longitude(west + 0.5 * lon_span())};
}

EcefPoint geodetic_to_ecef(const GeoCoordinate& c) {
    double slat, clat, slon, clon;
    sincos_deg(c.lat_deg, slat, clat);
    sincos_deg(c.lon_deg, slon, clon);
    const double n = wgs84::kSemiMajorM / std::sqrt(1.0 - wgs84::kEccSq * slat * slat);
    return EcefPoint{n * clat * clon, n * clat * slon, n * (1.0 - wgs84::kEccSq) * slat};
}

GeoCoordinate ecef_to_geodetic(const EcefPoint& p) {
    const double rho = std::hypot(p.x, p.y);
    if (rho < 1.0) {
        throw DegenerateGeometryError(
            "ecef_to_geodetic: point within 1 m of the rotation axis, longitude undefined");
    }
    const double lon = std::atan2(p.y, p.x);

    double lat = std::atan2(p.z, rho * (1.0 - wgs84::kEccSq));
    bool converged = false;
    for (int i = 0; i < 200; ++i) {
        const double s = std::sin(lat);
        const double n = wgs84::kSemiMajorM / std::sqrt(1.0 - wgs84::kEccSq * s * s);
        const double next = std::atan2(p.z + wgs84::kEccSq * n * s, rho);
        const bool done = std::fabs(next - lat) < 1e-12;
        lat = next;
        if (done) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw DegenerateGeometryError("ecef_to_geodetic: latitude iteration did not converge");
    }
    return GeoCoordinate{rad_to_deg(lat), normalize_longitude(rad_to_deg(lon))};
}

std::vector<GeoBoundingBox> split_antimeridian(const GeoBoundingBox& b) {
    if (!b.crosses_antimeridian()) {
        return {b};
    }
    return {GeoBoundingBox{b.south, b.north, b.west, 180.0},
            GeoBoundingBox{b.south, b.north, -180.0, b.east}};
}

}  // namespace skygeo
