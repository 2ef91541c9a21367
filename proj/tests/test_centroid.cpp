#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "skygeo/centroid.hpp"
#include "skygeo/errors.hpp"
#include "skygeo/hashing.hpp"

using namespace skygeo;

namespace {

WeightedPlace place(double lat, double lon, int weight) {
    return WeightedPlace{"p", {lat, lon}, {lat, lat, lon, lon}, weight};
}

// Straightforward reference path: plain accumulation in ECEF, no pairwise
// tricks, independent of the production implementation.
GeoCoordinate brute_force_centroid(const std::vector<WeightedPlace>& places) {
    double sx = 0.0, sy = 0.0, sz = 0.0, sw = 0.0;
    for (const auto& p : places) {
        const EcefPoint e = geodetic_to_ecef(p.coordinate);
        sx += p.weight * e.x;
        sy += p.weight * e.y;
        sz += p.weight * e.z;
        sw += p.weight;
    }
    return ecef_to_geodetic({sx / sw, sy / sw, sz / sw});
}

}  // namespace

TEST_SUITE("centroid") {

TEST_CASE("single place is an identity within 1e-9 degrees") {
    const GeoCoordinate c = weighted_centroid(std::vector{place(10.0, 20.0, 1)});
    CHECK(std::fabs(c.lat_deg - 10.0) < 1e-9);
    CHECK(std::fabs(c.lon_deg - 20.0) < 1e-9);
}

TEST_CASE("symmetric latitudes cancel") {
    const GeoCoordinate c =
        weighted_centroid(std::vector{place(30.0, 50.0, 1), place(-30.0, 50.0, 1)});
    CHECK(std::fabs(c.lat_deg - 0.0) < 1e-9);
    CHECK(std::fabs(c.lon_deg - 50.0) < 1e-9);
}

TEST_CASE("three weighted places match the frozen high-precision value") {
    // Expected value from the independent mpmath oracle (60 digits),
    // computed ahead of this implementation.
    const GeoCoordinate c = weighted_centroid(std::vector{
        place(40.7, -74.0, 3), place(34.1, -118.2, 1), place(41.9, -87.6, 2)});
    CHECK(c.lat_deg == doctest::Approx(41.12318739026365).epsilon(1e-12));
    CHECK(c.lon_deg == doctest::Approx(-86.12699824971692).epsilon(1e-12));
}

TEST_CASE("500 random instances match the brute-force oracle within 1e-9 degrees") {
    DeterministicRng rng(77);
    for (int i = 0; i < 500; ++i) {
        std::vector<WeightedPlace> places;
        const int n = static_cast<int>(rng.next_int(1, 12));
        for (int k = 0; k < n; ++k) {
            places.push_back(place(rng.next_double(-85.0, 85.0), rng.next_double(-60.0, 60.0),
                                   static_cast<int>(rng.next_int(1, 9))));
        }
        const GeoCoordinate fast = weighted_centroid(places);
        const GeoCoordinate slow = brute_force_centroid(places);
        CHECK(std::fabs(fast.lat_deg - slow.lat_deg) < 1e-9);
        CHECK(std::fabs(fast.lon_deg - slow.lon_deg) < 1e-9);
    }
}

TEST_CASE("uniform weight scaling leaves the output unchanged within 1e-12 degrees") {
    DeterministicRng rng(88);
    for (int i = 0; i < 200; ++i) {
        std::vector<WeightedPlace> places;
        const int n = static_cast<int>(rng.next_int(1, 8));
        for (int k = 0; k < n; ++k) {
            places.push_back(place(rng.next_double(-80.0, 80.0), rng.next_double(-170.0, 170.0),
                                   static_cast<int>(rng.next_int(1, 5))));
        }
        const GeoCoordinate base = weighted_centroid(places);
        const int scale = static_cast<int>(rng.next_int(2, 7));
        auto scaled = places;
        for (auto& p : scaled) p.weight *= scale;
        const GeoCoordinate after = weighted_centroid(scaled);
        CHECK(std::fabs(after.lat_deg - base.lat_deg) < 1e-12);
        CHECK(std::fabs(after.lon_deg - base.lon_deg) < 1e-12);
    }
}

TEST_CASE("permutation invariance") {
    DeterministicRng rng(99);
    std::vector<WeightedPlace> places;
    for (int k = 0; k < 9; ++k) {
        places.push_back(place(rng.next_double(-70.0, 70.0), rng.next_double(-150.0, 150.0),
                               static_cast<int>(rng.next_int(1, 9))));
    }
    const GeoCoordinate base = weighted_centroid(places);
    for (int i = 0; i < 20; ++i) {
        for (std::size_t k = places.size(); k > 1; --k) {
            std::swap(places[k - 1], places[rng.next_int(0, static_cast<int>(k) - 1)]);
        }
        const GeoCoordinate shuffled = weighted_centroid(places);
        CHECK(std::fabs(shuffled.lat_deg - base.lat_deg) < 1e-12);
        CHECK(std::fabs(shuffled.lon_deg - base.lon_deg) < 1e-12);
    }
}

TEST_CASE("longitude stays within the covering interval for compact clusters") {
    DeterministicRng rng(111);
    for (int i = 0; i < 200; ++i) {
        const double base_lon = rng.next_double(-120.0, 120.0);
        double lo = 1e9, hi = -1e9;
        std::vector<WeightedPlace> places;
        const int n = static_cast<int>(rng.next_int(2, 10));
        for (int k = 0; k < n; ++k) {
            const double lon = base_lon + rng.next_double(0.0, 50.0);
            lo = std::min(lo, lon);
            hi = std::max(hi, lon);
            places.push_back(place(rng.next_double(-60.0, 60.0), lon,
                                   static_cast<int>(rng.next_int(1, 9))));
        }
        const GeoCoordinate c = weighted_centroid(places);
        CHECK(c.lon_deg >= lo - 1e-9);
        CHECK(c.lon_deg <= hi + 1e-9);
    }
}

TEST_CASE("empty input raises NoCandidatesError") {
    CHECK_THROWS_AS(weighted_centroid({}), NoCandidatesError);
}

TEST_CASE("non-positive weight is rejected") {
    CHECK_THROWS_AS(weighted_centroid(std::vector{place(0.0, 0.0, 0)}), ValidationError);
}

TEST_CASE("antipodal input degenerates with a centroid-specific error") {
    CHECK_THROWS_WITH_AS(
        weighted_centroid(std::vector{place(0.0, 90.0, 1), place(0.0, -90.0, 1)}),
        doctest::Contains("degenerate centroid"), DegenerateGeometryError);
    // Axis-aligned but non-origin case: two points at the same latitude,
    // opposite longitudes, average sits on the rotation axis.
    CHECK_THROWS_AS(weighted_centroid(std::vector{place(45.0, 0.0, 1), place(45.0, 180.0, 1)}),
                    DegenerateGeometryError);
}

}  // TEST_SUITE
