#include "skygeo/centroid.hpp"

#include <array>
#include <vector>

#include "skygeo/errors.hpp"

namespace skygeo {

namespace {

// Pairwise (cascade) summation keeps the rounding error O(log n) on long
// mention lists.
std::array<double, 3> pairwise_sum(std::span<const std::array<double, 3>> terms) {
    if (terms.size() == 1) return terms[0];
    if (terms.size() == 2) {
        return {terms[0][0] + terms[1][0], terms[0][1] + terms[1][1], terms[0][2] + terms[1][2]};
    }
    const std::size_t half = terms.size() / 2;
    const auto lo = pairwise_sum(terms.subspan(0, half));
    const auto hi = pairwise_sum(terms.subspan(half));
    return {lo[0] + hi[0], lo[1] + hi[1], lo[2] + hi[2]};
}

}  // namespace

GeoCoordinate weighted_centroid(std::span<const WeightedPlace> places) {
    if (places.empty()) {
        throw NoCandidatesError("weighted_centroid: no places to average");
    }
    std::vector<std::array<double, 3>> terms;
    terms.reserve(places.size());
    double total_weight = 0.0;
    for (const auto& p : places) {
        if (p.weight < 1) {
            throw ValidationError("weighted_centroid: place '" + p.name + "' has weight " +
                                  std::to_string(p.weight) + " (must be >= 1)");
        }
        const EcefPoint e = geodetic_to_ecef(validate_coordinate(p.coordinate, p.name));
        const double w = static_cast<double>(p.weight);
        terms.push_back({w * e.x, w * e.y, w * e.z});
        total_weight += w;
    }
    const auto sum = pairwise_sum(terms);
    const EcefPoint mean{sum[0] / total_weight, sum[1] / total_weight, sum[2] / total_weight};
    try {
        return ecef_to_geodetic(mean);
    } catch (const DegenerateGeometryError&) {
        throw DegenerateGeometryError(
            "weighted_centroid: degenerate centroid (mean on the rotation axis, near-antipodal "
            "inputs)");
    }
}

}  // namespace skygeo
