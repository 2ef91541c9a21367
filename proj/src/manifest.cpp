#include "skygeo/manifest.hpp"

#include <cmath>
#include <fstream>
#include <unordered_set>

#include "skygeo/errors.hpp"

namespace skygeo {

nlohmann::json SequenceManifest::to_json() const {
    nlohmann::json frames_json = nlohmann::json::array();
    for (const auto& f : frames) frames_json.push_back(f.to_json());
    return nlohmann::json{{"sequence_id", sequence_id},
                          {"article_id", article_id},
                          {"imagery_source", imagery_source},
                          {"frames", std::move(frames_json)},
                          {"caption", caption.to_json()},
                          {"confirmed", confirmed},
                          {"event_dates",
                           {{"start", event_dates.start.to_string()},
                            {"end", event_dates.end.to_string()}}}};
}

SequenceManifest SequenceManifest::from_json(const nlohmann::json& j) {
    SequenceManifest m;
    m.sequence_id = j.at("sequence_id").get<std::string>();
    if (m.sequence_id.empty()) throw ValidationError("empty sequence_id");
    m.article_id = j.at("article_id").get<std::string>();
    m.imagery_source = j.at("imagery_source").get<std::string>();
    for (const auto& fj : j.at("frames")) m.frames.push_back(ImageFrame::from_json(fj));
    if (m.frames.empty()) {
        throw ValidationError("manifest '" + m.sequence_id + "' has no frames");
    }
    for (std::size_t i = 1; i < m.frames.size(); ++i) {
        if (!(m.frames[i - 1].timestamp < m.frames[i].timestamp)) {
            throw ValidationError("manifest '" + m.sequence_id +
                                  "': frames not strictly ascending");
        }
    }
    m.caption = Caption::from_json(j.at("caption"));
    m.confirmed = j.at("confirmed").get<bool>();
    m.event_dates = EventTimeline{Date::parse(j.at("event_dates").at("start").get<std::string>()),
                                  Date::parse(j.at("event_dates").at("end").get<std::string>())};
    if (!m.event_dates.valid()) {
        throw ValidationError("manifest '" + m.sequence_id + "': event_dates start after end");
    }
    return m;
}

int DatasetStats::avg_images_rounded() const {
    return static_cast<int>(std::floor(avg_images_per_sequence + 0.5));
}

nlohmann::json DatasetStats::to_json() const {
    return nlohmann::json{{"total_sequences", total_sequences},
                          {"confirmed_events", confirmed_events},
                          {"avg_images_per_sequence", avg_images_per_sequence},
                          {"avg_images_per_sequence_rounded", avg_images_rounded()}};
}

DatasetStats compute_dataset_stats(std::span<const SequenceManifest> manifests) {
    DatasetStats stats;
    stats.total_sequences = static_cast<int>(manifests.size());
    if (manifests.empty()) return stats;
    std::int64_t frames = 0;
    for (const auto& m : manifests) {
        if (m.confirmed) ++stats.confirmed_events;
        frames += static_cast<std::int64_t>(m.frames.size());
    }
    stats.avg_images_per_sequence =
        static_cast<double>(frames) / static_cast<double>(stats.total_sequences);
    return stats;
}

std::vector<SequenceManifest> export_manifests(std::span<const PipelineResult> results,
                                               const std::filesystem::path& path,
                                               const std::string& imagery_source) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot open manifest file for writing: " + path.string());
    }
    std::vector<SequenceManifest> manifests;
    std::unordered_set<std::string> used_ids;
    for (const auto& r : results) {
        if (r.status != PipelineStatus::detected) continue;
        if (!r.imagery || r.imagery->frames.empty() || !r.caption || !r.timeline) {
            throw ValidationError("detected result '" + r.article_id +
                                  "' lacks imagery/caption/timeline; cannot export");
        }
        SequenceManifest m;
        m.sequence_id = r.article_id;
        int suffix = 2;
        while (!used_ids.insert(m.sequence_id).second) {
            m.sequence_id = r.article_id + "-" + std::to_string(suffix++);
        }
        m.article_id = r.article_id;
        m.imagery_source = imagery_source;
        m.frames = r.imagery->frames;
        m.caption = *r.caption;
        m.confirmed = false;  // annotation happens elsewhere
        m.event_dates = *r.timeline;
        out << m.to_json().dump() << '\n';
        manifests.push_back(std::move(m));
    }
    return manifests;
}

std::vector<SequenceManifest> import_manifests(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open manifest file: " + path.string());
    }
    std::vector<SequenceManifest> manifests;
    std::unordered_set<std::string> ids;
    std::string line;
    std::size_t record = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++record;
        try {
            auto m = SequenceManifest::from_json(nlohmann::json::parse(line));
            if (!ids.insert(m.sequence_id).second) {
                throw ValidationError("duplicate sequence_id '" + m.sequence_id + "'");
            }
            manifests.push_back(std::move(m));
        } catch (const std::exception& e) {
            throw ParseError("record " + std::to_string(record) + ": " + e.what());
        }
    }
    return manifests;
}

}  // namespace skygeo
