#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "http_util.hpp"
#include "skygeo/agents.hpp"
#include "skygeo/errors.hpp"

namespace skygeo {

namespace {

std::string load_prompt(const std::filesystem::path& dir, const char* file) {
    const auto path = dir / file;
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open prompt template: " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void replace_all(std::string& text, std::string_view key, const std::string& value) {
    std::size_t pos = 0;
    while ((pos = text.find(key, pos)) != std::string::npos) {
        text.replace(pos, key.size(), value);
        pos += value.size();
    }
}

}  // namespace

struct RemoteAgents::Impl {
    RemoteAgentOptions options;
    http::JsonHttp client;
    std::string article_prompt;
    std::string verifier_prompt;
    std::string caption_prompt;

    explicit Impl(RemoteAgentOptions opts)
        : options(std::move(opts)),
          client(options.endpoint,
                 http::RequestOptions{options.timeout_ms, options.retries,
                                      http::env_or_empty("SKY_AGENT_TOKEN"),
                                      options.max_inflight}),
          article_prompt(load_prompt(options.prompt_dir, "article.txt")),
          verifier_prompt(load_prompt(options.prompt_dir, "verifier.txt")),
          caption_prompt(load_prompt(options.prompt_dir, "caption.txt")) {}

    /// Sends one chat request and returns the assistant content parsed as
    /// JSON. Schema-level problems get exactly one fresh attempt.
    nlohmann::json chat_json(const std::string& prompt, const ImagerySequence* imagery,
                             const std::function<void(const nlohmann::json&)>& validate) {
        nlohmann::json request{{"model", options.model},
                               {"messages", nlohmann::json::array({nlohmann::json{
                                               {"role", "user"}, {"content", prompt}}})}};
        if (options.include_images && imagery != nullptr) {
            nlohmann::json refs = nlohmann::json::array();
            for (const auto& f : imagery->frames) refs.push_back(f.image_ref);
            request["images"] = std::move(refs);
        }

        std::string last_error;
        for (int attempt = 0; attempt < 2; ++attempt) {
            const nlohmann::json response = client.post(request);
            try {
                const std::string content = response.at("choices")
                                                .at(0)
                                                .at("message")
                                                .at("content")
                                                .get<std::string>();
                nlohmann::json parsed = nlohmann::json::parse(content);
                validate(parsed);
                return parsed;
            } catch (const nlohmann::json::exception& e) {
                last_error = e.what();
            } catch (const MalformedResponseError& e) {
                last_error = e.what();
            } catch (const ParseError& e) {
                last_error = e.what();
            }
        }
        throw MalformedResponseError("agent response failed schema validation after retry: " +
                                     last_error);
    }
};

RemoteAgents::RemoteAgents(RemoteAgentOptions options)
    : impl_(std::make_unique<Impl>(std::move(options))) {}

RemoteAgents::~RemoteAgents() = default;

std::optional<std::pair<CandidateLocation, EventTimeline>> RemoteAgents::propose(
    const ArticleRecord& article, const std::vector<FailureEntry>& failures) {
    std::string prompt = impl_->article_prompt;
    replace_all(prompt, "{article_id}", article.id);
    replace_all(prompt, "{article_text}", article.text);
    replace_all(prompt, "{published}", article.published.to_string());
    replace_all(prompt, "{failures}", render_failures(failures));

    const auto parsed = impl_->chat_json(prompt, nullptr, [&](const nlohmann::json& j) {
        if (!j.is_object()) throw MalformedResponseError("article agent: not a JSON object");
        if (j.value("exhausted", false)) return;
        if (!j.contains("name") || !j.at("name").is_string() ||
            j.at("name").get<std::string>().empty()) {
            throw MalformedResponseError("article agent: missing non-empty 'name'");
        }
        const auto name = j.at("name").get<std::string>();
        for (const auto& f : failures) {
            if (f.location_name == name) {
                throw MalformedResponseError("article agent repeated failed name '" + name + "'");
            }
        }
    });

    if (parsed.value("exhausted", false)) return std::nullopt;

    CandidateLocation loc{parsed.at("name").get<std::string>(),
                          parsed.value("rationale", std::string())};
    EventTimeline timeline = default_timeline(article.published);
    if (parsed.contains("start") && parsed.contains("end")) {
        try {
            const EventTimeline t{Date::parse(parsed.at("start").get<std::string>()),
                                  Date::parse(parsed.at("end").get<std::string>())};
            if (t.valid()) timeline = t;
        } catch (const ParseError&) {
            // Unparseable dates fall back to the +/-30 day default.
        }
    }
    return std::make_pair(std::move(loc), timeline);
}

VerifierVerdict RemoteAgents::verify(const ArticleRecord& article, const ImagerySequence& imagery,
                                     const std::string& location_name) {
    if (imagery.empty()) {
        throw ValidationError("verifier_agent_verify: empty imagery sequence");
    }
    std::string prompt = impl_->verifier_prompt;
    replace_all(prompt, "{article_id}", article.id);
    replace_all(prompt, "{article_text}", article.text);
    replace_all(prompt, "{location_name}", location_name);
    replace_all(prompt, "{frame_table}", render_frame_table(imagery));

    const auto parsed = impl_->chat_json(prompt, &imagery, [](const nlohmann::json& j) {
        if (!j.is_object() || !j.contains("visible") || !j.at("visible").is_boolean() ||
            !j.contains("reason") || !j.at("reason").is_string() ||
            j.at("reason").get<std::string>().empty()) {
            throw MalformedResponseError("verifier: expected {visible: bool, reason: string}");
        }
    });
    return VerifierVerdict{parsed.at("visible").get<bool>(),
                           parsed.at("reason").get<std::string>()};
}

Caption RemoteAgents::caption(const ArticleRecord& article, const ImagerySequence& imagery,
                              const std::string& location_name) {
    if (imagery.empty()) {
        throw ValidationError("captioning_agent_caption: empty imagery sequence");
    }
    std::string prompt = impl_->caption_prompt;
    replace_all(prompt, "{article_id}", article.id);
    replace_all(prompt, "{article_text}", article.text);
    replace_all(prompt, "{location_name}", location_name);
    replace_all(prompt, "{frame_table}", render_frame_table(imagery));

    const auto parsed = impl_->chat_json(prompt, &imagery, [&](const nlohmann::json& j) {
        if (!j.is_object() || !j.contains("text") || !j.at("text").is_string() ||
            j.at("text").get<std::string>().empty()) {
            throw MalformedResponseError("caption: expected non-empty 'text'");
        }
        if (j.contains("referenced_frames")) {
            for (const auto& t : j.at("referenced_frames")) {
                const Timestamp ts = Timestamp::parse(t.get<std::string>());
                const bool known = std::any_of(
                    imagery.frames.begin(), imagery.frames.end(),
                    [&](const ImageFrame& f) { return f.timestamp == ts; });
                if (!known) {
                    throw MalformedResponseError("caption references unknown frame timestamp " +
                                                 ts.to_string());
                }
            }
        }
    });

    Caption c;
    c.text = parsed.at("text").get<std::string>();
    if (parsed.contains("referenced_frames")) {
        for (const auto& t : parsed.at("referenced_frames")) {
            c.referenced_frames.push_back(Timestamp::parse(t.get<std::string>()));
        }
    }
    return c;
}

}  // namespace skygeo
