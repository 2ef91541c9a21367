#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "skygeo/datetime.hpp"
#include "skygeo/gazetteer.hpp"
#include "skygeo/geo.hpp"

namespace skygeo {

/// Forward-geocoding answer for a place name.
struct GeocodeResult {
    GeoCoordinate coordinate;
    GeoBoundingBox bbox;
};

/// Name -> coordinate lookup. An empty optional means the name could not
/// be geocoded; transport failures throw TransportError instead.
class Geocoder {
public:
    virtual ~Geocoder() = default;
    virtual std::optional<GeocodeResult> forward(const std::string& name) = 0;
};

/// Deterministic mock backend resolving names against a gazetteer.
class GazetteerGeocoder : public Geocoder {
public:
    explicit GazetteerGeocoder(std::shared_ptr<const Gazetteer> gazetteer);
    std::optional<GeocodeResult> forward(const std::string& name) override;

private:
    std::shared_ptr<const Gazetteer> gazetteer_;
};

struct HttpClientOptions {
    std::string endpoint;  // e.g. "https://host:port/path"
    int timeout_ms = 10000;
    int retries = 1;       // transport retries beyond the first attempt
    int max_inflight = 4;  // concurrent requests per client
};

/// GET {endpoint}?q={name}; expects a feature list and takes the
/// top-ranked feature's center and bbox. Bearer token, when needed, comes
/// from SKY_GEOCODE_TOKEN.
class HttpGeocoder : public Geocoder {
public:
    explicit HttpGeocoder(HttpClientOptions options);
    ~HttpGeocoder() override;
    std::optional<GeocodeResult> forward(const std::string& name) override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// One satellite scene's metadata.
struct ImageFrame {
    Timestamp timestamp;
    std::string scene_id;
    double cloud_fraction = 0.0;
    std::string image_ref;                     // opaque locator (path or URL)
    std::optional<bool> planted_event;         // synthetic backend only

    nlohmann::json to_json() const;
    static ImageFrame from_json(const nlohmann::json& j);
};

/// Time-ordered frames fetched for one coordinate and timeline. Frames
/// are strictly ascending by timestamp and dated within the timeline.
struct ImagerySequence {
    std::vector<ImageFrame> frames;
    GeoCoordinate query_coordinate;
    EventTimeline timeline;

    bool empty() const { return frames.empty(); }

    nlohmann::json to_json() const;
    static ImagerySequence from_json(const nlohmann::json& j);
};

class ImageryClient {
public:
    virtual ~ImageryClient() = default;
    /// Empty result (no scenes in the window) is a valid, non-error answer.
    virtual ImagerySequence fetch(const GeoCoordinate& coordinate,
                                  const EventTimeline& timeline) = 0;
};

/// Ground-truth event used by the synthetic backend in place of manual
/// verification.
struct PlantedEvent {
    GeoCoordinate coordinate;
    Date start;
    Date end;
    std::string label;
};

/// Loads the planted-event table: JSON array of {lat, lon, start, end, label}.
std::vector<PlantedEvent> load_planted_events(const std::filesystem::path& path);

struct SyntheticImageryOptions {
    std::uint64_t seed = 0;
    int cadence_days = 7;
    double proximity_deg = 0.05;  // Chebyshev radius for planted-event hits
};

/// Deterministic desk-scale imagery source. Output is a pure function of
/// (seed, planted-event table, coordinate rounded to 0.01 deg, timeline).
/// Frames run from timeline.start to timeline.end inclusive at the
/// configured cadence; frames dated on or after a nearby planted event's
/// start carry planted_event = true.
class SyntheticImagery : public ImageryClient {
public:
    SyntheticImagery(SyntheticImageryOptions options, std::vector<PlantedEvent> events);
    ImagerySequence fetch(const GeoCoordinate& coordinate, const EventTimeline& timeline) override;

private:
    SyntheticImageryOptions options_;
    std::vector<PlantedEvent> events_;
};

struct HttpImageryOptions {
    HttpClientOptions http;
    double window_deg = 0.05;  // half-width of the search bbox
    int limit = 500;
};

/// POST {endpoint} with {bbox, datetime, limit}; parses response items
/// into frames, sorted ascending and filtered to the timeline.
class HttpImageryCatalog : public ImageryClient {
public:
    explicit HttpImageryCatalog(HttpImageryOptions options);
    ~HttpImageryCatalog() override;
    ImagerySequence fetch(const GeoCoordinate& coordinate, const EventTimeline& timeline) override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace skygeo
