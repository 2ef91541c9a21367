#include <utility>

#include "http_util.hpp"
#include "skygeo/clients.hpp"
#include "skygeo/errors.hpp"

namespace skygeo {

GazetteerGeocoder::GazetteerGeocoder(std::shared_ptr<const Gazetteer> gazetteer)
    : gazetteer_(std::move(gazetteer)) {
    if (!gazetteer_) {
        throw ValidationError("GazetteerGeocoder: null gazetteer");
    }
}

std::optional<GeocodeResult> GazetteerGeocoder::forward(const std::string& name) {
    if (name.empty()) {
        throw ValidationError("geocode_forward: empty name");
    }
    const GazetteerEntry* e = gazetteer_->lookup(name);
    if (!e) return std::nullopt;
    return GeocodeResult{e->coordinate, e->bbox};
}

struct HttpGeocoder::Impl {
    http::JsonHttp client;
    explicit Impl(const HttpClientOptions& options)
        : client(options.endpoint, http::RequestOptions{options.timeout_ms, options.retries,
                                                        http::env_or_empty("SKY_GEOCODE_TOKEN"),
                                                        options.max_inflight}) {}
};

HttpGeocoder::HttpGeocoder(HttpClientOptions options)
    : impl_(std::make_unique<Impl>(options)) {}

HttpGeocoder::~HttpGeocoder() = default;

std::optional<GeocodeResult> HttpGeocoder::forward(const std::string& name) {
    if (name.empty()) {
        throw ValidationError("geocode_forward: empty name");
    }
    const auto body = impl_->client.get("?q=" + http::url_encode(name));

    if (!body.is_object() || !body.contains("features") || !body.at("features").is_array()) {
        throw MalformedResponseError("geocoder response missing 'features' array");
    }
    const auto& features = body.at("features");
    if (features.empty()) return std::nullopt;

    const auto& top = features.at(0);
    try {
        const auto& center = top.at("center");  // [lon, lat]
        GeocodeResult r;
        r.coordinate =
            validate_coordinate({center.at(1).get<double>(), center.at(0).get<double>()});
        if (top.contains("bbox")) {
            const auto& b = top.at("bbox");  // [west, south, east, north]
            r.bbox = GeoBoundingBox{b.at(1).get<double>(), b.at(3).get<double>(),
                                    normalize_longitude(b.at(0).get<double>()),
                                    normalize_longitude(b.at(2).get<double>())};
        } else {
            r.bbox = GeoBoundingBox{r.coordinate.lat_deg, r.coordinate.lat_deg,
                                    r.coordinate.lon_deg, r.coordinate.lon_deg};
        }
        if (!r.bbox.contains(r.coordinate)) {
            throw MalformedResponseError("geocoder feature center outside its bbox");
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw MalformedResponseError(std::string("geocoder feature schema violation: ") + e.what());
    }
}

}  // namespace skygeo
