#include "skygeo/agents.hpp"

#include <fstream>

#include "skygeo/errors.hpp"

namespace skygeo {

const char* to_string(FailureEntry::Kind kind) {
    switch (kind) {
        case FailureEntry::Kind::geocode_error:
            return "geocode_error";
        case FailureEntry::Kind::not_visible:
            return "not_visible";
    }
    return "unknown";
}

nlohmann::json FailureEntry::to_json() const {
    return nlohmann::json{
        {"location_name", location_name}, {"kind", to_string(kind)}, {"reason", reason}};
}

FailureEntry FailureEntry::from_json(const nlohmann::json& j) {
    FailureEntry f;
    f.location_name = j.at("location_name").get<std::string>();
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "geocode_error") {
        f.kind = Kind::geocode_error;
    } else if (kind == "not_visible") {
        f.kind = Kind::not_visible;
    } else {
        throw ParseError("unknown failure kind '" + kind + "'");
    }
    f.reason = j.value("reason", std::string());
    if (f.kind == Kind::not_visible && f.reason.empty()) {
        throw ValidationError("not_visible failure requires a reason");
    }
    return f;
}

nlohmann::json Caption::to_json() const {
    nlohmann::json frames = nlohmann::json::array();
    for (const auto& t : referenced_frames) frames.push_back(t.to_string());
    return nlohmann::json{{"text", text}, {"referenced_frames", std::move(frames)}};
}

Caption Caption::from_json(const nlohmann::json& j) {
    Caption c;
    c.text = j.at("text").get<std::string>();
    if (c.text.empty()) throw ValidationError("caption text is empty");
    if (j.contains("referenced_frames")) {
        for (const auto& t : j.at("referenced_frames")) {
            c.referenced_frames.push_back(Timestamp::parse(t.get<std::string>()));
        }
    }
    return c;
}

EventTimeline default_timeline(Date published) {
    return EventTimeline{published.plus_days(-30), published.plus_days(30)};
}

AgentFixture parse_agent_fixture(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw ParseError("agent fixture must be a JSON object keyed by article id");
    }
    AgentFixture fixture;
    for (const auto& [article_id, entry_json] : j.items()) {
        AgentFixtureEntry entry;
        std::unordered_map<std::string, bool> proposal_names;
        if (entry_json.contains("proposals")) {
            for (const auto& pj : entry_json.at("proposals")) {
                AgentFixtureEntry::Proposal p;
                p.name = pj.at("name").get<std::string>();
                if (p.name.empty()) {
                    throw ValidationError("fixture for article '" + article_id +
                                          "': proposal with empty name");
                }
                if (!proposal_names.emplace(p.name, true).second) {
                    throw ValidationError("fixture for article '" + article_id +
                                          "': duplicate proposal name '" + p.name + "'");
                }
                p.rationale = pj.value("rationale", std::string());
                if (pj.contains("start")) p.start = Date::parse(pj.at("start").get<std::string>());
                if (pj.contains("end")) p.end = Date::parse(pj.at("end").get<std::string>());
                entry.proposals.push_back(std::move(p));
            }
        }
        if (entry_json.contains("verdicts")) {
            for (const auto& [name, vj] : entry_json.at("verdicts").items()) {
                VerifierVerdict v;
                v.visible = vj.at("visible").get<bool>();
                v.reason = vj.at("reason").get<std::string>();
                if (v.reason.empty()) {
                    throw ValidationError("fixture for article '" + article_id +
                                          "': verdict for '" + name + "' has empty reason");
                }
                entry.verdicts.emplace(name, std::move(v));
            }
        }
        entry.caption_template = entry_json.value("caption_template", std::string());
        fixture.emplace(article_id, std::move(entry));
    }
    return fixture;
}

AgentFixture load_agent_fixture(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open agent fixture: " + path.string());
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("agent fixture " + path.string() + ": " + e.what());
    }
    return parse_agent_fixture(j);
}

ScriptedAgents::ScriptedAgents(AgentFixture fixture) : fixture_(std::move(fixture)) {}

std::optional<std::pair<CandidateLocation, EventTimeline>> ScriptedAgents::propose(
    const ArticleRecord& article, const std::vector<FailureEntry>& failures) {
    const auto it = fixture_.find(article.id);
    if (it == fixture_.end()) return std::nullopt;
    const auto& proposals = it->second.proposals;
    const std::size_t index = failures.size();
    if (index >= proposals.size()) return std::nullopt;
    const auto& p = proposals[index];
    for (const auto& f : failures) {
        if (f.location_name == p.name) {
            throw ValidationError("fixture for article '" + article.id + "' replays name '" +
                                  p.name + "' already in the failure list");
        }
    }
    EventTimeline timeline = default_timeline(article.published);
    if (p.start && p.end) {
        timeline = EventTimeline{*p.start, *p.end};
        if (!timeline.valid()) {
            throw ValidationError("fixture for article '" + article.id + "', proposal '" + p.name +
                                  "': start after end");
        }
    }
    return std::make_pair(CandidateLocation{p.name, p.rationale}, timeline);
}

VerifierVerdict ScriptedAgents::verify(const ArticleRecord& article,
                                       const ImagerySequence& imagery,
                                       const std::string& location_name) {
    if (imagery.empty()) {
        throw ValidationError("verifier_agent_verify: empty imagery sequence");
    }
    const auto it = fixture_.find(article.id);
    if (it != fixture_.end()) {
        const auto vit = it->second.verdicts.find(location_name);
        if (vit != it->second.verdicts.end()) return vit->second;
    }
    // No scripted verdict: the planted-event flags are the oracle.
    std::size_t planted = 0;
    std::optional<Timestamp> first_planted;
    for (const auto& f : imagery.frames) {
        if (f.planted_event.value_or(false)) {
            ++planted;
            if (!first_planted) first_planted = f.timestamp;
        }
    }
    if (planted > 0) {
        return VerifierVerdict{true, "planted change visible in " + std::to_string(planted) +
                                         " of " + std::to_string(imagery.frames.size()) +
                                         " frames, first at " + first_planted->to_string()};
    }
    return VerifierVerdict{false, "no change visible across " +
                                      std::to_string(imagery.frames.size()) + " frames near " +
                                      location_name};
}

namespace {

std::string join_timestamps(const std::vector<ImageFrame>& frames) {
    std::string out;
    for (std::size_t i = 0; i < frames.size(); ++i) {
        if (i > 0) out += ", ";
        out += frames[i].timestamp.to_string();
    }
    return out;
}

void replace_all(std::string& text, std::string_view key, const std::string& value) {
    std::size_t pos = 0;
    while ((pos = text.find(key, pos)) != std::string::npos) {
        text.replace(pos, key.size(), value);
        pos += value.size();
    }
}

}  // namespace

Caption ScriptedAgents::caption(const ArticleRecord& article, const ImagerySequence& imagery,
                                const std::string& location_name) {
    if (imagery.empty()) {
        throw ValidationError("captioning_agent_caption: empty imagery sequence");
    }
    std::string text;
    const auto it = fixture_.find(article.id);
    if (it != fixture_.end() && !it->second.caption_template.empty()) {
        text = it->second.caption_template;
    } else {
        text =
            "Change near {location} for article {article_id}. Frames {frames} track the event as "
            "it develops.";
    }
    replace_all(text, "{article_id}", article.id);
    replace_all(text, "{location}", location_name);
    replace_all(text, "{frames}", join_timestamps(imagery.frames));
    replace_all(text, "{frame_count}", std::to_string(imagery.frames.size()));

    Caption c;
    c.text = std::move(text);
    for (const auto& f : imagery.frames) c.referenced_frames.push_back(f.timestamp);
    return c;
}

std::string render_failures(const std::vector<FailureEntry>& failures) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& f : failures) arr.push_back(f.to_json());
    return arr.dump();
}

std::string render_frame_table(const ImagerySequence& imagery) {
    std::string out = "timestamp | scene_id | cloud_fraction | image_ref";
    char buf[32];
    for (const auto& f : imagery.frames) {
        std::snprintf(buf, sizeof(buf), "%.3f", f.cloud_fraction);
        out += "\n" + f.timestamp.to_string() + " | " + f.scene_id + " | " + buf + " | " +
               f.image_ref;
    }
    return out;
}

}  // namespace skygeo
