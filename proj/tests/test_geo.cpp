#include <cmath>

#include <doctest.h>

#include "skygeo/errors.hpp"
#include "skygeo/geo.hpp"
#include "skygeo/hashing.hpp"

using namespace skygeo;

TEST_SUITE("geo") {

TEST_CASE("normalize_longitude maps into (-180, 180]") {
    CHECK(normalize_longitude(180.0) == 180.0);
    CHECK(normalize_longitude(-180.0) == 180.0);
    CHECK(normalize_longitude(541.0) == -179.0);  // 541 - 720
    CHECK(normalize_longitude(0.0) == 0.0);
    CHECK(normalize_longitude(360.0) == 0.0);
    CHECK(normalize_longitude(-540.0) == 180.0);
    CHECK(normalize_longitude(359.5) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK_THROWS_AS(normalize_longitude(std::nan("")), ValidationError);
}

TEST_CASE("normalize_longitude is congruent mod 360") {
    DeterministicRng rng(11);
    for (int i = 0; i < 1000; ++i) {
        const double lon = rng.next_double(-10000.0, 10000.0);
        const double n = normalize_longitude(lon);
        CHECK(n > -180.0);
        CHECK(n <= 180.0);
        const double diff = std::fmod(lon - n, 360.0);
        CHECK(std::fabs(std::remainder(diff, 360.0)) < 1e-9);
    }
}

TEST_CASE("geodetic_to_ecef anchors: equator and pole") {
    const EcefPoint equator = geodetic_to_ecef({0.0, 0.0});
    CHECK(equator.x == 6378137.0);
    CHECK(equator.y == 0.0);
    CHECK(equator.z == 0.0);

    const EcefPoint pole = geodetic_to_ecef({90.0, 0.0});
    CHECK(pole.x == 0.0);
    CHECK(pole.y == 0.0);
    CHECK(pole.z == doctest::Approx(6356752.314245).epsilon(1e-12));
    CHECK(std::fabs(pole.z - wgs84::kSemiMinorM) < 1e-6);

    const EcefPoint south = geodetic_to_ecef({-90.0, 45.0});
    CHECK(south.x == 0.0);
    CHECK(south.y == 0.0);
    CHECK(south.z == doctest::Approx(-6356752.314245).epsilon(1e-12));
}

TEST_CASE("geodetic_to_ecef matches the high-precision reference value") {
    // Independent mpmath evaluation of the published closed form,
    // computed ahead of this implementation.
    const EcefPoint p = geodetic_to_ecef({37.3, -121.9});
    CHECK(p.x == doctest::Approx(-2684406.860194322).epsilon(1e-12));
    CHECK(p.y == doctest::Approx(-4312679.971599423).epsilon(1e-12));
    CHECK(p.z == doctest::Approx(3843930.462026719).epsilon(1e-12));
}

TEST_CASE("geodetic_to_ecef output lies on the ellipsoid") {
    DeterministicRng rng(22);
    const double a2 = wgs84::kSemiMajorM * wgs84::kSemiMajorM;
    const double b2 = wgs84::kSemiMinorM * wgs84::kSemiMinorM;
    for (int i = 0; i < 1000; ++i) {
        const GeoCoordinate c{rng.next_double(-90.0, 90.0), rng.next_double(-180.0, 180.0)};
        const EcefPoint p = geodetic_to_ecef(c);
        const double value = (p.x * p.x + p.y * p.y) / a2 + (p.z * p.z) / b2;
        CHECK(std::fabs(value - 1.0) < 1e-12);
    }
}

TEST_CASE("ecef_to_geodetic inverts the anchor points") {
    const GeoCoordinate origin = ecef_to_geodetic({6378137.0, 0.0, 0.0});
    CHECK(origin.lat_deg == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(origin.lon_deg == doctest::Approx(0.0).epsilon(1e-12));

    const GeoCoordinate east = ecef_to_geodetic({0.0, 6378137.0, 0.0});
    CHECK(east.lat_deg == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(east.lon_deg == doctest::Approx(90.0).epsilon(1e-12));
}

TEST_CASE("ecef_to_geodetic rejects points near the rotation axis") {
    CHECK_THROWS_AS(ecef_to_geodetic({0.0, 0.0, 0.0}), DegenerateGeometryError);
    CHECK_THROWS_AS(ecef_to_geodetic({0.5, 0.5, 1000000.0}), DegenerateGeometryError);
    CHECK_THROWS_AS(ecef_to_geodetic({0.0, 0.0, 6356752.0}), DegenerateGeometryError);
}

TEST_CASE("round trip reproduces coordinates within 1e-9 degrees") {
    DeterministicRng rng(33);
    for (int i = 0; i < 1000; ++i) {
        const GeoCoordinate c{rng.next_double(-89.99, 89.99), rng.next_double(-179.99, 180.0)};
        const GeoCoordinate back = ecef_to_geodetic(geodetic_to_ecef(c));
        CHECK(std::fabs(back.lat_deg - c.lat_deg) < 1e-9);
        CHECK(std::fabs(back.lon_deg - c.lon_deg) < 1e-9);
    }
}

TEST_CASE("round trip survives interior points (scaled-down surface)") {
    DeterministicRng rng(44);
    for (int i = 0; i < 200; ++i) {
        const GeoCoordinate c{rng.next_double(-80.0, 80.0), rng.next_double(-179.0, 180.0)};
        EcefPoint p = geodetic_to_ecef(c);
        const double shrink = rng.next_double(0.3, 0.95);
        p.x *= shrink;
        p.y *= shrink;
        p.z *= shrink;
        const GeoCoordinate back = ecef_to_geodetic(p);
        CHECK(std::fabs(back.lon_deg - c.lon_deg) < 1e-9);
        CHECK(std::fabs(back.lat_deg) <= 90.0);
    }
}

TEST_CASE("split_antimeridian passes non-crossing boxes through") {
    const GeoBoundingBox b{0.0, 10.0, 20.0, 30.0};
    const auto parts = split_antimeridian(b);
    REQUIRE(parts.size() == 1);
    CHECK(parts[0] == b);
}

TEST_CASE("split_antimeridian splits a crossing box at 180") {
    const GeoBoundingBox b{0.0, 10.0, 170.0, -170.0};
    const auto parts = split_antimeridian(b);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0] == GeoBoundingBox{0.0, 10.0, 170.0, 180.0});
    CHECK(parts[1] == GeoBoundingBox{0.0, 10.0, -180.0, -170.0});
}

TEST_CASE("split_antimeridian preserves pointwise membership") {
    DeterministicRng rng(55);
    for (int instance = 0; instance < 20; ++instance) {
        const double south = rng.next_double(-80.0, 70.0);
        const GeoBoundingBox b{south, south + rng.next_double(0.1, 15.0),
                               rng.next_double(100.0, 179.9), rng.next_double(-179.9, -100.0)};
        REQUIRE(b.crosses_antimeridian());
        const auto parts = split_antimeridian(b);
        for (const auto& part : parts) CHECK(part.west <= part.east);
        for (int i = 0; i < 500; ++i) {
            const GeoCoordinate p{rng.next_double(-90.0, 90.0),
                                  normalize_longitude(rng.next_double(-180.0, 180.0))};
            bool in_parts = false;
            for (const auto& part : parts) in_parts = in_parts || part.contains(p);
            CHECK(in_parts == b.contains(p));
        }
    }
}

TEST_CASE("bounding box center handles crossing boxes") {
    const GeoBoundingBox plain{0.0, 10.0, 20.0, 30.0};
    CHECK(plain.center() == GeoCoordinate{5.0, 25.0});
    const GeoBoundingBox wrapped{0.0, 10.0, 170.0, -170.0};
    const auto c = wrapped.center();
    CHECK(c.lat_deg == 5.0);
    CHECK(c.lon_deg == doctest::Approx(180.0).epsilon(1e-12));
}

TEST_CASE("validate_coordinate names the offending field") {
    CHECK_THROWS_WITH_AS(validate_coordinate({95.0, 0.0}, "row"),
                         doctest::Contains("lat out of range"), ValidationError);
    const GeoCoordinate ok = validate_coordinate({10.0, 190.0});
    CHECK(ok.lon_deg == -170.0);
}

}  // TEST_SUITE
