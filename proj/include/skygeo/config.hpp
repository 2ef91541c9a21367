#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "skygeo/pipeline.hpp"

namespace skygeo {

/// Run configuration from a JSON file plus command-line overrides.
/// Unknown keys are rejected so typos fail loudly. Secrets never live
/// here; they come from SKY_AGENT_TOKEN / SKY_GEOCODE_TOKEN.
struct AppConfig {
    Method method = Method::agentic;
    int max_attempts = 5;
    int concurrency = 1;
    std::uint64_t seed = 0;
    bool requeue_infrastructure = false;

    std::string agent_backend = "scripted";    // scripted | remote
    std::string geocode_backend = "gazetteer"; // gazetteer | http
    std::string imagery_backend = "synthetic"; // synthetic | http

    std::filesystem::path gazetteer_path;
    std::filesystem::path fixture_path;
    std::filesystem::path planted_events_path;
    std::filesystem::path prompt_dir;

    std::string agent_endpoint;
    std::string agent_model = "chat-default";
    std::string geocode_endpoint;
    std::string imagery_endpoint;

    int timeout_ms = 10000;
    int retries = 1;
    int max_inflight = 4;
    bool include_images = false;

    int cadence_days = 7;
    double proximity_deg = 0.05;
    double imagery_window_deg = 0.05;
    int imagery_limit = 500;
    std::string imagery_source_label;  // defaults to the backend name

    static AppConfig load(const std::filesystem::path& path);
    static AppConfig from_json(const nlohmann::json& j);

    PipelineConfig pipeline_config() const;

    /// Instantiates the configured backends. Paths are resolved relative
    /// to base_dir (normally the config file's directory).
    Backends build_backends(const std::filesystem::path& base_dir = {}) const;

    std::string source_label() const {
        return imagery_source_label.empty() ? imagery_backend : imagery_source_label;
    }
};

}  // namespace skygeo
