#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "skygeo/agents.hpp"
#include "skygeo/clients.hpp"
#include "skygeo/pipeline.hpp"

namespace skygeo {

/// One curated dataset record: a captioned multi-temporal sequence.
/// confirmed starts false and flips only through external annotation.
struct SequenceManifest {
    std::string sequence_id;
    std::string article_id;
    std::string imagery_source;
    std::vector<ImageFrame> frames;
    Caption caption;
    bool confirmed = false;
    EventTimeline event_dates;

    nlohmann::json to_json() const;
    static SequenceManifest from_json(const nlohmann::json& j);
};

struct DatasetStats {
    int total_sequences = 0;
    int confirmed_events = 0;
    double avg_images_per_sequence = 0.0;

    /// Presentation rounding, half-up to an integer.
    int avg_images_rounded() const;

    nlohmann::json to_json() const;
};

/// Sequence counts, confirmed counts and mean frames per sequence.
/// Empty input yields all zeros.
DatasetStats compute_dataset_stats(std::span<const SequenceManifest> manifests);

/// Writes one JSON object per line for every detected result (others are
/// skipped). Returns the manifests written.
std::vector<SequenceManifest> export_manifests(std::span<const PipelineResult> results,
                                               const std::filesystem::path& path,
                                               const std::string& imagery_source);

/// Reads a manifest file back; schema violations carry the 1-based record
/// index. Duplicate sequence ids are rejected.
std::vector<SequenceManifest> import_manifests(const std::filesystem::path& path);

}  // namespace skygeo
