#include "skygeo/gipsy.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "skygeo/errors.hpp"

namespace skygeo {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kDegenerateHalfWidthDeg = 0.01;
constexpr double kLatBandDeg = 10.0;

// Index of the half-open interval [cuts[i], cuts[i+1]) containing v,
// or -1 when outside.
int interval_index(const std::vector<double>& cuts, double v) {
    if (cuts.size() < 2 || v < cuts.front() || v >= cuts.back()) return -1;
    const auto it = std::upper_bound(cuts.begin(), cuts.end(), v);
    return static_cast<int>(it - cuts.begin()) - 1;
}

struct Accumulator {
    double area = 0.0;
    double lat_moment = 0.0;
    double lon_moment = 0.0;

    // Splits tall cells into latitude bands so the cos-lat weighting stays
    // honest for continent-sized footprints.
    void add_cell(const GeoBoundingBox& box) {
        const int bands = std::max(1, static_cast<int>(std::ceil(box.lat_span() / kLatBandDeg)));
        const double band_h = box.lat_span() / bands;
        const double width = box.east - box.west;
        const double mid_lon = 0.5 * (box.west + box.east);
        for (int b = 0; b < bands; ++b) {
            const double s = box.south + b * band_h;
            const double mid_lat = s + 0.5 * band_h;
            const double a = band_h * width * std::cos(mid_lat * kPi / 180.0);
            area += a;
            lat_moment += a * mid_lat;
            lon_moment += a * mid_lon;
        }
    }
};

}  // namespace

ElevationMap::ElevationMap(std::vector<double> x_cuts, std::vector<double> y_cuts,
                           std::vector<int> elevation)
    : x_cuts_(std::move(x_cuts)), y_cuts_(std::move(y_cuts)), elevation_(std::move(elevation)) {}

int ElevationMap::elevation_at(double lat_deg, double lon_deg) const {
    const int ix = interval_index(x_cuts_, lon_deg);
    const int iy = interval_index(y_cuts_, lat_deg);
    if (ix < 0 || iy < 0) return 0;
    return cell_elevation(iy, ix);
}

int ElevationMap::max_elevation() const {
    int best = 0;
    for (int e : elevation_) best = std::max(best, e);
    return best;
}

nlohmann::json ElevationMap::cells_json() const {
    nlohmann::json cells = nlohmann::json::array();
    for (int iy = 0; iy < ny(); ++iy) {
        for (int ix = 0; ix < nx(); ++ix) {
            const auto box = cell_box(iy, ix);
            cells.push_back({{"south", box.south},
                             {"north", box.north},
                             {"west", box.west},
                             {"east", box.east},
                             {"elevation", cell_elevation(iy, ix)}});
        }
    }
    return cells;
}

ElevationMap build_elevation_map(std::span<const Prism> prisms) {
    if (prisms.empty()) {
        throw NoCandidatesError("build_elevation_map: no prisms");
    }
    std::vector<double> xs, ys;
    xs.reserve(prisms.size() * 2);
    ys.reserve(prisms.size() * 2);
    for (const auto& p : prisms) {
        if (p.height < 1) {
            throw ValidationError("prism height must be >= 1, got " + std::to_string(p.height));
        }
        if (p.footprint.crosses_antimeridian()) {
            throw ValidationError("prism footprint must be antimeridian-split (west <= east)");
        }
        xs.push_back(p.footprint.west);
        xs.push_back(p.footprint.east);
        ys.push_back(p.footprint.south);
        ys.push_back(p.footprint.north);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

    const int nx = static_cast<int>(xs.size()) - 1;
    const int ny = static_cast<int>(ys.size()) - 1;
    std::vector<int> elevation(std::size_t(std::max(nx, 0)) * std::max(ny, 0), 0);
    for (const auto& p : prisms) {
        const auto x0 = std::lower_bound(xs.begin(), xs.end(), p.footprint.west) - xs.begin();
        const auto x1 = std::lower_bound(xs.begin(), xs.end(), p.footprint.east) - xs.begin();
        const auto y0 = std::lower_bound(ys.begin(), ys.end(), p.footprint.south) - ys.begin();
        const auto y1 = std::lower_bound(ys.begin(), ys.end(), p.footprint.north) - ys.begin();
        for (auto iy = y0; iy < y1; ++iy) {
            for (auto ix = x0; ix < x1; ++ix) {
                elevation[std::size_t(iy) * nx + ix] += p.height;
            }
        }
    }
    return ElevationMap(std::move(xs), std::move(ys), std::move(elevation));
}

std::vector<MaxRegion> max_regions(const ElevationMap& map) {
    if (map.empty()) {
        throw NoCandidatesError("max_regions: empty elevation map");
    }
    const int target = map.max_elevation();
    const int nx = map.nx();
    const int ny = map.ny();
    std::vector<char> visited(std::size_t(nx) * ny, 0);

    std::vector<MaxRegion> regions;
    for (int sy = 0; sy < ny; ++sy) {
        for (int sx = 0; sx < nx; ++sx) {
            const std::size_t sidx = std::size_t(sy) * nx + sx;
            if (visited[sidx] || map.cell_elevation(sy, sx) != target) continue;

            MaxRegion region;
            region.elevation = target;
            Accumulator acc;
            region.corner_south = map.y_cuts()[sy];
            region.corner_west = map.x_cuts()[sx];

            std::deque<std::pair<int, int>> queue{{sy, sx}};
            visited[sidx] = 1;
            while (!queue.empty()) {
                const auto [iy, ix] = queue.front();
                queue.pop_front();
                region.cells.emplace_back(iy, ix);
                const auto box = map.cell_box(iy, ix);
                acc.add_cell(box);
                if (box.south < region.corner_south ||
                    (box.south == region.corner_south && box.west < region.corner_west)) {
                    region.corner_south = box.south;
                    region.corner_west = box.west;
                }
                const int dy[4] = {1, -1, 0, 0};
                const int dx[4] = {0, 0, 1, -1};
                for (int d = 0; d < 4; ++d) {
                    const int jy = iy + dy[d];
                    const int jx = ix + dx[d];
                    if (jy < 0 || jy >= ny || jx < 0 || jx >= nx) continue;
                    const std::size_t jidx = std::size_t(jy) * nx + jx;
                    if (visited[jidx] || map.cell_elevation(jy, jx) != target) continue;
                    visited[jidx] = 1;
                    queue.emplace_back(jy, jx);
                }
            }
            region.area = acc.area;
            region.centroid = GeoCoordinate{acc.lat_moment / acc.area, acc.lon_moment / acc.area};
            regions.push_back(std::move(region));
        }
    }
    std::sort(regions.begin(), regions.end(), [](const MaxRegion& a, const MaxRegion& b) {
        if (a.corner_south != b.corner_south) return a.corner_south < b.corner_south;
        return a.corner_west < b.corner_west;
    });
    return regions;
}

std::vector<Prism> make_prisms(std::span<const WeightedPlace> places) {
    std::vector<Prism> prisms;
    prisms.reserve(places.size());
    for (const auto& p : places) {
        if (p.weight < 1) {
            throw ValidationError("place '" + p.name + "' has weight " + std::to_string(p.weight) +
                                  " (must be >= 1)");
        }
        GeoBoundingBox box = p.bbox;
        const bool zero_area = box.lat_span() <= 0.0 || box.lon_span() <= 0.0;
        if (zero_area) {
            const auto c = validate_coordinate(p.coordinate, p.name);
            box.south = std::max(-90.0, c.lat_deg - kDegenerateHalfWidthDeg);
            box.north = std::min(90.0, c.lat_deg + kDegenerateHalfWidthDeg);
            box.west = normalize_longitude(c.lon_deg - kDegenerateHalfWidthDeg);
            box.east = normalize_longitude(c.lon_deg + kDegenerateHalfWidthDeg);
        }
        for (const auto& piece : split_antimeridian(box)) {
            // A box whose west edge sits exactly on the antimeridian splits
            // into a zero-width remnant; it covers nothing, drop it.
            if (piece.lat_span() > 0.0 && piece.lon_span() > 0.0) {
                prisms.push_back(Prism{piece, p.weight});
            }
        }
    }
    return prisms;
}

GeoCoordinate gipsy_locate(std::span<const WeightedPlace> places) {
    if (places.empty()) {
        throw NoCandidatesError("gipsy_locate: no places");
    }
    const auto prisms = make_prisms(places);
    const auto map = build_elevation_map(prisms);
    const auto regions = max_regions(map);

    const MaxRegion* best = &regions.front();
    for (const auto& r : regions) {
        if (r.area > best->area) {
            best = &r;
        }
        // Equal areas fall back to the (south, west) order regions are
        // already sorted in, so the first one stands.
    }
    return GeoCoordinate{best->centroid.lat_deg, normalize_longitude(best->centroid.lon_deg)};
}

}  // namespace skygeo
