#include "skygeo/config.hpp"

#include <fstream>
#include <set>

#include "skygeo/errors.hpp"

namespace skygeo {

namespace {

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys{
        "method",          "max_attempts",       "concurrency",
        "seed",            "requeue_infrastructure",
        "agent_backend",   "geocode_backend",    "imagery_backend",
        "gazetteer_path",  "fixture_path",       "planted_events_path",
        "prompt_dir",      "agent_endpoint",     "agent_model",
        "geocode_endpoint", "imagery_endpoint",  "timeout_ms",
        "retries",         "max_inflight",       "include_images",
        "cadence_days",    "proximity_deg",      "imagery_window_deg",
        "imagery_limit",   "imagery_source_label"};
    return keys;
}

void expect_choice(const std::string& value, std::initializer_list<const char*> allowed,
                   const char* key) {
    for (const char* a : allowed) {
        if (value == a) return;
    }
    std::string msg = std::string("config key '") + key + "' must be one of {";
    bool first = true;
    for (const char* a : allowed) {
        if (!first) msg += ", ";
        msg += a;
        first = false;
    }
    throw ValidationError(msg + "}, got '" + value + "'");
}

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::filesystem::path& p) {
    if (p.empty() || p.is_absolute() || base.empty()) return p;
    return base / p;
}

}  // namespace

AppConfig AppConfig::from_json(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw ParseError("config must be a JSON object");
    }
    for (const auto& [key, _] : j.items()) {
        if (!known_keys().count(key)) {
            throw ValidationError("unknown config key '" + key + "'");
        }
    }
    AppConfig c;
    if (j.contains("method")) c.method = method_from_string(j.at("method").get<std::string>());
    c.max_attempts = j.value("max_attempts", c.max_attempts);
    if (c.max_attempts < 1) throw ValidationError("config: max_attempts must be >= 1");
    c.concurrency = j.value("concurrency", c.concurrency);
    if (c.concurrency < 1) throw ValidationError("config: concurrency must be >= 1");
    c.seed = j.value("seed", c.seed);
    c.requeue_infrastructure = j.value("requeue_infrastructure", c.requeue_infrastructure);

    c.agent_backend = j.value("agent_backend", c.agent_backend);
    expect_choice(c.agent_backend, {"scripted", "remote"}, "agent_backend");
    c.geocode_backend = j.value("geocode_backend", c.geocode_backend);
    expect_choice(c.geocode_backend, {"gazetteer", "http"}, "geocode_backend");
    c.imagery_backend = j.value("imagery_backend", c.imagery_backend);
    expect_choice(c.imagery_backend, {"synthetic", "http"}, "imagery_backend");

    if (j.contains("gazetteer_path")) c.gazetteer_path = j.at("gazetteer_path").get<std::string>();
    if (j.contains("fixture_path")) c.fixture_path = j.at("fixture_path").get<std::string>();
    if (j.contains("planted_events_path")) {
        c.planted_events_path = j.at("planted_events_path").get<std::string>();
    }
    if (j.contains("prompt_dir")) c.prompt_dir = j.at("prompt_dir").get<std::string>();

    c.agent_endpoint = j.value("agent_endpoint", c.agent_endpoint);
    c.agent_model = j.value("agent_model", c.agent_model);
    c.geocode_endpoint = j.value("geocode_endpoint", c.geocode_endpoint);
    c.imagery_endpoint = j.value("imagery_endpoint", c.imagery_endpoint);

    c.timeout_ms = j.value("timeout_ms", c.timeout_ms);
    c.retries = j.value("retries", c.retries);
    c.max_inflight = j.value("max_inflight", c.max_inflight);
    c.include_images = j.value("include_images", c.include_images);

    c.cadence_days = j.value("cadence_days", c.cadence_days);
    if (c.cadence_days < 1) throw ValidationError("config: cadence_days must be >= 1");
    c.proximity_deg = j.value("proximity_deg", c.proximity_deg);
    c.imagery_window_deg = j.value("imagery_window_deg", c.imagery_window_deg);
    c.imagery_limit = j.value("imagery_limit", c.imagery_limit);
    c.imagery_source_label = j.value("imagery_source_label", c.imagery_source_label);
    return c;
}

AppConfig AppConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open config file: " + path.string());
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("config file " + path.string() + ": " + e.what());
    }
    return from_json(j);
}

PipelineConfig AppConfig::pipeline_config() const {
    PipelineConfig p;
    p.max_attempts = max_attempts;
    p.method = method;
    p.concurrency = concurrency;
    p.seed = seed;
    p.requeue_infrastructure = requeue_infrastructure;
    return p;
}

Backends AppConfig::build_backends(const std::filesystem::path& base_dir) const {
    Backends b;

    std::shared_ptr<const Gazetteer> gazetteer;
    if (!gazetteer_path.empty()) {
        gazetteer = std::make_shared<Gazetteer>(load_gazetteer(resolve(base_dir, gazetteer_path)));
    }
    b.gazetteer = gazetteer;

    if (geocode_backend == "gazetteer") {
        if (!gazetteer) {
            throw ValidationError("geocode_backend 'gazetteer' requires gazetteer_path");
        }
        b.geocoder = std::make_shared<GazetteerGeocoder>(gazetteer);
    } else {
        if (geocode_endpoint.empty()) {
            throw ValidationError("geocode_backend 'http' requires geocode_endpoint");
        }
        b.geocoder = std::make_shared<HttpGeocoder>(
            HttpClientOptions{geocode_endpoint, timeout_ms, retries, max_inflight});
    }

    if (imagery_backend == "synthetic") {
        std::vector<PlantedEvent> events;
        if (!planted_events_path.empty()) {
            events = load_planted_events(resolve(base_dir, planted_events_path));
        }
        b.imagery = std::make_shared<SyntheticImagery>(
            SyntheticImageryOptions{seed, cadence_days, proximity_deg}, std::move(events));
    } else {
        if (imagery_endpoint.empty()) {
            throw ValidationError("imagery_backend 'http' requires imagery_endpoint");
        }
        b.imagery = std::make_shared<HttpImageryCatalog>(HttpImageryOptions{
            HttpClientOptions{imagery_endpoint, timeout_ms, retries, max_inflight},
            imagery_window_deg, imagery_limit});
    }

    if (agent_backend == "scripted") {
        AgentFixture fixture;
        if (!fixture_path.empty()) {
            fixture = load_agent_fixture(resolve(base_dir, fixture_path));
        }
        auto agents = std::make_shared<ScriptedAgents>(std::move(fixture));
        b.article_agent = agents;
        b.verifier = agents;
        b.captioner = agents;
    } else {
        if (agent_endpoint.empty()) {
            throw ValidationError("agent_backend 'remote' requires agent_endpoint");
        }
        if (prompt_dir.empty()) {
            throw ValidationError("agent_backend 'remote' requires prompt_dir");
        }
        auto agents = std::make_shared<RemoteAgents>(
            RemoteAgentOptions{agent_endpoint, agent_model, resolve(base_dir, prompt_dir),
                               timeout_ms, retries, max_inflight, include_images});
        b.article_agent = agents;
        b.verifier = agents;
        b.captioner = agents;
    }
    return b;
}

}  // namespace skygeo
