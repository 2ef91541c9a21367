#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "skygeo/article.hpp"
#include "skygeo/clients.hpp"
#include "skygeo/datetime.hpp"

namespace skygeo {

/// A location name proposed by the article agent, with its stated reason.
struct CandidateLocation {
    std::string name;
    std::string rationale;
};

/// One failed attempt, fed back to the article agent on the next turn.
struct FailureEntry {
    enum class Kind { geocode_error, not_visible };

    std::string location_name;
    Kind kind = Kind::geocode_error;
    std::string reason;  // verifier reasoning; empty for geocode_error

    nlohmann::json to_json() const;
    static FailureEntry from_json(const nlohmann::json& j);
};

const char* to_string(FailureEntry::Kind kind);

struct VerifierVerdict {
    bool visible = false;
    std::string reason;
};

/// Multi-sentence change description referencing frames of a sequence.
struct Caption {
    std::string text;
    std::vector<Timestamp> referenced_frames;

    nlohmann::json to_json() const;
    static Caption from_json(const nlohmann::json& j);
};

/// Proposes one candidate location (and event timeline) at a time, given
/// the failures so far. An empty optional means the agent has run out of
/// plausible candidates. Proposals never repeat a failed name.
class ArticleAgent {
public:
    virtual ~ArticleAgent() = default;
    virtual std::optional<std::pair<CandidateLocation, EventTimeline>> propose(
        const ArticleRecord& article, const std::vector<FailureEntry>& failures) = 0;
};

/// Cross-references the article and fetched imagery; says whether the
/// event is visible and why. The candidate name travels along so backends
/// can key their answer (fixtures) or their prompt (remote) on it.
class VerifierAgent {
public:
    virtual ~VerifierAgent() = default;
    virtual VerifierVerdict verify(const ArticleRecord& article, const ImagerySequence& imagery,
                                   const std::string& location_name) = 0;
};

/// Writes a change caption using the article as context. Called only
/// after a positive verdict.
class CaptioningAgent {
public:
    virtual ~CaptioningAgent() = default;
    virtual Caption caption(const ArticleRecord& article, const ImagerySequence& imagery,
                            const std::string& location_name) = 0;
};

/// When the agent supplies a location but no dates, the timeline defaults
/// to [published - 30 days, published + 30 days].
EventTimeline default_timeline(Date published);

/// One article's scripted behavior.
struct AgentFixtureEntry {
    struct Proposal {
        std::string name;
        std::string rationale;
        std::optional<Date> start;
        std::optional<Date> end;
    };
    std::vector<Proposal> proposals;
    std::unordered_map<std::string, VerifierVerdict> verdicts;  // by location name
    std::string caption_template;                               // empty -> built-in default
};

using AgentFixture = std::unordered_map<std::string, AgentFixtureEntry>;  // by article id

/// Fixture file: JSON map article_id -> {proposals, verdicts, caption_template}.
AgentFixture load_agent_fixture(const std::filesystem::path& path);
AgentFixture parse_agent_fixture(const nlohmann::json& j);

/// Deterministic backend replaying a fixture. Proposal k answers the call
/// with k prior failures; verdicts fall back to the imagery's planted-event
/// flags when the fixture has no entry for the location; captions come from
/// a template embedding article id, location and frame timestamps.
class ScriptedAgents : public ArticleAgent, public VerifierAgent, public CaptioningAgent {
public:
    explicit ScriptedAgents(AgentFixture fixture);

    std::optional<std::pair<CandidateLocation, EventTimeline>> propose(
        const ArticleRecord& article, const std::vector<FailureEntry>& failures) override;
    VerifierVerdict verify(const ArticleRecord& article, const ImagerySequence& imagery,
                           const std::string& location_name) override;
    Caption caption(const ArticleRecord& article, const ImagerySequence& imagery,
                    const std::string& location_name) override;

private:
    AgentFixture fixture_;
};

struct RemoteAgentOptions {
    std::string endpoint;  // chat-completion style URL
    std::string model;
    std::filesystem::path prompt_dir;  // article.txt / verifier.txt / caption.txt
    int timeout_ms = 30000;
    int retries = 1;
    int max_inflight = 4;
    bool include_images = false;  // attach frame image refs to requests
};

/// Generic remote chat-completion backend. Requests are
/// {model, messages[, images]}; the assistant's content must be one JSON
/// object per role schema. One retry on schema violations, then
/// MalformedResponseError. Bearer token from SKY_AGENT_TOKEN.
class RemoteAgents : public ArticleAgent, public VerifierAgent, public CaptioningAgent {
public:
    explicit RemoteAgents(RemoteAgentOptions options);
    ~RemoteAgents() override;

    std::optional<std::pair<CandidateLocation, EventTimeline>> propose(
        const ArticleRecord& article, const std::vector<FailureEntry>& failures) override;
    VerifierVerdict verify(const ArticleRecord& article, const ImagerySequence& imagery,
                           const std::string& location_name) override;
    Caption caption(const ArticleRecord& article, const ImagerySequence& imagery,
                    const std::string& location_name) override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Renders the failures list the way remote prompts embed it: a JSON array
/// of {location_name, kind, reason}, verbatim.
std::string render_failures(const std::vector<FailureEntry>& failures);

/// Renders frame metadata as the text table sent to multimodal agents.
std::string render_frame_table(const ImagerySequence& imagery);

}  // namespace skygeo
