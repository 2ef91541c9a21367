#pragma once

// Brute-force raster oracle for the polygon-stacking geocoder. Kept
// deliberately naive and independent of the production path: coverage is
// re-derived per sample point straight from the prism list.

#include <span>
#include <vector>

#include "skygeo/geo.hpp"
#include "skygeo/gipsy.hpp"
#include "skygeo/hashing.hpp"

namespace skygeo::testing {

/// Half-open membership, matching the south/west-closed cell convention.
inline bool covers(const GeoBoundingBox& b, double lat, double lon) {
    return lat >= b.south && lat < b.north && lon >= b.west && lon < b.east;
}

/// Sum of prism heights over the point.
inline int coverage_sum(std::span<const Prism> prisms, double lat, double lon) {
    int sum = 0;
    for (const auto& p : prisms) {
        if (covers(p.footprint, lat, lon)) sum += p.height;
    }
    return sum;
}

/// Bounding rectangle of all footprints.
inline GeoBoundingBox bounding_rect(std::span<const Prism> prisms) {
    GeoBoundingBox r{90.0, -90.0, 180.0, -180.0};
    for (const auto& p : prisms) {
        r.south = std::min(r.south, p.footprint.south);
        r.north = std::max(r.north, p.footprint.north);
        r.west = std::min(r.west, p.footprint.west);
        r.east = std::max(r.east, p.footprint.east);
    }
    return r;
}

struct RasterArgmax {
    int max_coverage = 0;
    std::vector<GeoCoordinate> points;  // sample points attaining the max
    double step_lat = 0.0;
    double step_lon = 0.0;
};

/// Scans an n x n sample grid over the prisms' bounding rectangle and
/// collects the argmax sample points.
inline RasterArgmax raster_argmax(std::span<const Prism> prisms, int n) {
    const GeoBoundingBox rect = bounding_rect(prisms);
    RasterArgmax out;
    out.step_lat = (rect.north - rect.south) / (n - 1);
    out.step_lon = (rect.east - rect.west) / (n - 1);
    for (int i = 0; i < n; ++i) {
        const double lat = rect.south + i * out.step_lat;
        for (int j = 0; j < n; ++j) {
            const double lon = rect.west + j * out.step_lon;
            const int c = coverage_sum(prisms, lat, lon);
            if (c > out.max_coverage) {
                out.max_coverage = c;
                out.points.clear();
            }
            if (c == out.max_coverage && c > 0) {
                out.points.push_back({lat, lon});
            }
        }
    }
    return out;
}

/// Random prism instance on a 0.1 degree lattice inside [0,20]^2,
/// weights 1..9, at most max_prisms prisms.
inline std::vector<Prism> random_lattice_prisms(DeterministicRng& rng, int max_prisms) {
    const int count = static_cast<int>(rng.next_int(1, max_prisms));
    std::vector<Prism> prisms;
    prisms.reserve(count);
    for (int i = 0; i < count; ++i) {
        const int sy = static_cast<int>(rng.next_int(0, 150));
        const int sx = static_cast<int>(rng.next_int(0, 150));
        const int h = static_cast<int>(rng.next_int(1, 50));
        const int w = static_cast<int>(rng.next_int(1, 50));
        prisms.push_back(Prism{GeoBoundingBox{0.1 * sy, 0.1 * (sy + h), 0.1 * sx, 0.1 * (sx + w)},
                               static_cast<int>(rng.next_int(1, 9))});
    }
    return prisms;
}

/// The same instances expressed as weighted places (bbox footprint,
/// weight = height) for driving the full geocoder.
inline std::vector<WeightedPlace> places_from_prisms(std::span<const Prism> prisms) {
    std::vector<WeightedPlace> places;
    places.reserve(prisms.size());
    int k = 0;
    for (const auto& p : prisms) {
        places.push_back(WeightedPlace{"prism-" + std::to_string(k++), p.footprint.center(),
                                       p.footprint, p.height});
    }
    return places;
}

}  // namespace skygeo::testing
