#include <algorithm>
#include <cmath>
#include <fstream>

#include "http_util.hpp"
#include "skygeo/clients.hpp"
#include "skygeo/errors.hpp"
#include "skygeo/hashing.hpp"

namespace skygeo {

nlohmann::json ImageFrame::to_json() const {
    nlohmann::json j{{"timestamp", timestamp.to_string()},
                     {"scene_id", scene_id},
                     {"cloud_fraction", cloud_fraction},
                     {"image_ref", image_ref}};
    if (planted_event.has_value()) j["planted_event"] = *planted_event;
    return j;
}

ImageFrame ImageFrame::from_json(const nlohmann::json& j) {
    ImageFrame f;
    f.timestamp = Timestamp::parse(j.at("timestamp").get<std::string>());
    f.scene_id = j.at("scene_id").get<std::string>();
    f.cloud_fraction = j.at("cloud_fraction").get<double>();
    if (f.cloud_fraction < 0.0 || f.cloud_fraction > 1.0) {
        throw ValidationError("cloud_fraction out of [0, 1]: " + std::to_string(f.cloud_fraction));
    }
    f.image_ref = j.at("image_ref").get<std::string>();
    if (j.contains("planted_event") && !j.at("planted_event").is_null()) {
        f.planted_event = j.at("planted_event").get<bool>();
    }
    return f;
}

nlohmann::json ImagerySequence::to_json() const {
    nlohmann::json frames_json = nlohmann::json::array();
    for (const auto& f : frames) frames_json.push_back(f.to_json());
    return nlohmann::json{{"frames", std::move(frames_json)},
                          {"query_coordinate",
                           {{"lat", query_coordinate.lat_deg}, {"lon", query_coordinate.lon_deg}}},
                          {"timeline",
                           {{"start", timeline.start.to_string()},
                            {"end", timeline.end.to_string()}}}};
}

ImagerySequence ImagerySequence::from_json(const nlohmann::json& j) {
    ImagerySequence s;
    s.query_coordinate = GeoCoordinate{j.at("query_coordinate").at("lat").get<double>(),
                                       j.at("query_coordinate").at("lon").get<double>()};
    s.timeline = EventTimeline{Date::parse(j.at("timeline").at("start").get<std::string>()),
                               Date::parse(j.at("timeline").at("end").get<std::string>())};
    for (const auto& fj : j.at("frames")) {
        s.frames.push_back(ImageFrame::from_json(fj));
    }
    for (std::size_t i = 1; i < s.frames.size(); ++i) {
        if (!(s.frames[i - 1].timestamp < s.frames[i].timestamp)) {
            throw ValidationError("imagery frames not strictly ascending by timestamp");
        }
    }
    return s;
}

std::vector<PlantedEvent> load_planted_events(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open planted-event table: " + path.string());
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("planted-event table " + path.string() + ": " + e.what());
    }
    if (!j.is_array()) {
        throw ParseError("planted-event table must be a JSON array");
    }
    std::vector<PlantedEvent> events;
    events.reserve(j.size());
    std::size_t idx = 0;
    for (const auto& ej : j) {
        ++idx;
        try {
            PlantedEvent e;
            e.coordinate = validate_coordinate(
                {ej.at("lat").get<double>(), ej.at("lon").get<double>()});
            e.start = Date::parse(ej.at("start").get<std::string>());
            e.end = Date::parse(ej.at("end").get<std::string>());
            if (e.end < e.start) throw ValidationError("'end' precedes 'start'");
            e.label = ej.value("label", std::string());
            events.push_back(std::move(e));
        } catch (const std::exception& ex) {
            throw ParseError("planted event " + std::to_string(idx) + ": " + ex.what());
        }
    }
    return events;
}

namespace {

double round_to_hundredth(double v) { return std::round(v * 100.0) / 100.0; }

}  // namespace

SyntheticImagery::SyntheticImagery(SyntheticImageryOptions options, std::vector<PlantedEvent> events)
    : options_(options), events_(std::move(events)) {}

ImagerySequence SyntheticImagery::fetch(const GeoCoordinate& coordinate,
                                        const EventTimeline& timeline) {
    if (!timeline.valid()) {
        throw ValidationError("imagery_fetch: timeline start after end");
    }
    const double lat = round_to_hundredth(coordinate.lat_deg);
    const double lon = round_to_hundredth(normalize_longitude(coordinate.lon_deg));

    // Events close enough (Chebyshev) whose date range overlaps the timeline.
    std::vector<const PlantedEvent*> nearby;
    for (const auto& e : events_) {
        const double dlat = std::fabs(e.coordinate.lat_deg - lat);
        double dlon = std::fabs(e.coordinate.lon_deg - lon);
        dlon = std::min(dlon, 360.0 - dlon);  // wraparound distance
        const bool close = dlat <= options_.proximity_deg && dlon <= options_.proximity_deg;
        if (close && EventTimeline{e.start, e.end}.overlaps(timeline)) {
            nearby.push_back(&e);
        }
    }

    ImagerySequence seq;
    seq.query_coordinate = GeoCoordinate{lat, lon};
    seq.timeline = timeline;

    const std::uint64_t cell_key =
        hash_mix(options_.seed, hash_mix(std::uint64_t(std::llround(lat * 100.0) + 9000000),
                                         std::uint64_t(std::llround(lon * 100.0) + 18000000)));
    const int cadence = std::max(1, options_.cadence_days);
    for (Date d = timeline.start; d <= timeline.end; d = d.plus_days(cadence)) {
        ImageFrame f;
        // Mid-morning pass, like a sun-synchronous platform.
        f.timestamp = Timestamp::from_date(d, 10, 30, 0);
        const std::uint64_t h = hash_mix(cell_key, std::uint64_t(d.days_since_epoch()));
        f.scene_id = "SYN-" + to_hex16(h);
        f.cloud_fraction = static_cast<double>(h >> 11) * 0x1.0p-53;
        f.image_ref = "synthetic://" + f.scene_id;
        bool planted = false;
        for (const auto* e : nearby) {
            // The change shows up in every frame on/after the event starts.
            if (d >= e->start) {
                planted = true;
                break;
            }
        }
        f.planted_event = planted;
        seq.frames.push_back(std::move(f));
    }
    return seq;
}

struct HttpImageryCatalog::Impl {
    http::JsonHttp client;
    HttpImageryOptions options;
    explicit Impl(const HttpImageryOptions& opts)
        : client(opts.http.endpoint,
                 http::RequestOptions{opts.http.timeout_ms, opts.http.retries, std::string(),
                                      opts.http.max_inflight}),
          options(opts) {}
};

HttpImageryCatalog::HttpImageryCatalog(HttpImageryOptions options)
    : impl_(std::make_unique<Impl>(options)) {}

HttpImageryCatalog::~HttpImageryCatalog() = default;

ImagerySequence HttpImageryCatalog::fetch(const GeoCoordinate& coordinate,
                                          const EventTimeline& timeline) {
    if (!timeline.valid()) {
        throw ValidationError("imagery_fetch: timeline start after end");
    }
    const double w = impl_->options.window_deg;
    const nlohmann::json body{
        {"bbox",
         {normalize_longitude(coordinate.lon_deg - w), std::max(-90.0, coordinate.lat_deg - w),
          normalize_longitude(coordinate.lon_deg + w), std::min(90.0, coordinate.lat_deg + w)}},
        {"datetime", Timestamp::from_date(timeline.start).to_string() + "/" +
                         Timestamp::from_date(timeline.end, 23, 59, 59).to_string()},
        {"limit", impl_->options.limit}};
    const auto response = impl_->client.post(body);

    if (!response.is_object() || !response.contains("items") || !response.at("items").is_array()) {
        throw MalformedResponseError("imagery catalog response missing 'items' array");
    }
    ImagerySequence seq;
    seq.query_coordinate = coordinate;
    seq.timeline = timeline;
    for (const auto& item : response.at("items")) {
        try {
            ImageFrame f;
            f.timestamp = Timestamp::parse(item.at("datetime").get<std::string>());
            f.scene_id = item.at("id").get<std::string>();
            f.cloud_fraction = std::clamp(item.value("cloud_fraction", 0.0), 0.0, 1.0);
            f.image_ref = item.value("href", std::string());
            if (!timeline.contains(f.timestamp.date())) continue;
            seq.frames.push_back(std::move(f));
        } catch (const nlohmann::json::exception& e) {
            throw MalformedResponseError(std::string("imagery catalog item schema violation: ") +
                                         e.what());
        }
    }
    std::sort(seq.frames.begin(), seq.frames.end(),
              [](const ImageFrame& a, const ImageFrame& b) { return a.timestamp < b.timestamp; });
    // Duplicate timestamps would break the strict ordering invariant; keep
    // the first scene of any timestamp collision.
    seq.frames.erase(std::unique(seq.frames.begin(), seq.frames.end(),
                                 [](const ImageFrame& a, const ImageFrame& b) {
                                     return a.timestamp == b.timestamp;
                                 }),
                     seq.frames.end());
    return seq;
}

}  // namespace skygeo
