#include <doctest.h>

#include "skygeo/agents.hpp"
#include "skygeo/errors.hpp"
#include "support/tempdir.hpp"

using namespace skygeo;

namespace {

ArticleRecord article() {
    return ArticleRecord{"art-1", "A storm hit the coast.", Date::parse("2024-03-15"), ""};
}

AgentFixture abc_fixture() {
    return parse_agent_fixture(nlohmann::json::parse(R"({
      "art-1": {
        "proposals": [
          {"name": "Alpha", "start": "2024-03-01", "end": "2024-03-20", "rationale": "named first"},
          {"name": "Beta"},
          {"name": "Gamma"}
        ],
        "verdicts": {
          "Beta": {"visible": false, "reason": "coastline unchanged"}
        }
      }
    })"));
}

ImagerySequence sequence(bool planted, int frames = 3) {
    ImagerySequence s;
    s.query_coordinate = {10.0, 20.0};
    s.timeline = {Date::parse("2024-03-01"), Date::parse("2024-03-29")};
    for (int i = 0; i < frames; ++i) {
        ImageFrame f;
        f.timestamp = Timestamp::from_date(Date::parse("2024-03-01").plus_days(i * 7), 10, 30, 0);
        f.scene_id = "S" + std::to_string(i);
        f.cloud_fraction = 0.1;
        f.image_ref = "synthetic://S" + std::to_string(i);
        f.planted_event = planted && i >= 1;
        s.frames.push_back(std::move(f));
    }
    return s;
}

}  // namespace

TEST_SUITE("agents") {

TEST_CASE("scripted proposals replay by failure count") {
    ScriptedAgents agents(abc_fixture());

    const auto first = agents.propose(article(), {});
    REQUIRE(first.has_value());
    CHECK(first->first.name == "Alpha");
    CHECK(first->second.start == Date::parse("2024-03-01"));
    CHECK(first->second.end == Date::parse("2024-03-20"));

    const std::vector<FailureEntry> one{{"Alpha", FailureEntry::Kind::geocode_error, ""}};
    const auto second = agents.propose(article(), one);
    REQUIRE(second.has_value());
    CHECK(second->first.name == "Beta");
    // No dates on the fixture entry: falls back to published +/- 30 days.
    CHECK(second->second.start == Date::parse("2024-02-14"));
    CHECK(second->second.end == Date::parse("2024-04-14"));
}

TEST_CASE("scripted agent exhausts when failures cover the fixture") {
    AgentFixture fixture = parse_agent_fixture(nlohmann::json::parse(R"({
      "art-1": {"proposals": [{"name": "A"}, {"name": "B"}]}
    })"));
    ScriptedAgents agents(std::move(fixture));
    const std::vector<FailureEntry> two{{"A", FailureEntry::Kind::geocode_error, ""},
                                        {"B", FailureEntry::Kind::not_visible, "nope"}};
    CHECK(!agents.propose(article(), two).has_value());
    CHECK(!agents.propose(ArticleRecord{"unknown", "x", Date::parse("2024-01-01"), ""}, {})
               .has_value());
}

TEST_CASE("fixture rejects duplicate proposal names at parse time") {
    CHECK_THROWS_AS(parse_agent_fixture(nlohmann::json::parse(
                        R"({"a": {"proposals": [{"name": "X"}, {"name": "X"}]}})")),
                    ValidationError);
}

TEST_CASE("scripted verdict lookup by location name wins over planted flags") {
    ScriptedAgents agents(abc_fixture());
    const auto verdict = agents.verify(article(), sequence(true), "Beta");
    CHECK(!verdict.visible);
    CHECK(verdict.reason == "coastline unchanged");
}

TEST_CASE("verdict falls back to the planted-event oracle") {
    ScriptedAgents agents(abc_fixture());

    const auto hit = agents.verify(article(), sequence(true), "Alpha");
    CHECK(hit.visible);
    CHECK(hit.reason.find("planted change") != std::string::npos);

    const auto miss = agents.verify(article(), sequence(false), "Alpha");
    CHECK(!miss.visible);
    CHECK(!miss.reason.empty());
}

TEST_CASE("verify requires non-empty imagery") {
    ScriptedAgents agents(abc_fixture());
    ImagerySequence empty;
    empty.timeline = {Date::parse("2024-01-01"), Date::parse("2024-01-02")};
    CHECK_THROWS_AS(agents.verify(article(), empty, "Alpha"), ValidationError);
}

TEST_CASE("scripted caption cites every frame timestamp") {
    ScriptedAgents agents(abc_fixture());
    const auto seq = sequence(true);
    const Caption c = agents.caption(article(), seq, "Alpha");
    CHECK(!c.text.empty());
    REQUIRE(c.referenced_frames.size() == 3);
    for (const auto& f : seq.frames) {
        CHECK(c.text.find(f.timestamp.to_string()) != std::string::npos);
    }
    CHECK(c.text.find("art-1") != std::string::npos);
    CHECK(c.text.find("Alpha") != std::string::npos);
}

TEST_CASE("caption template placeholders fill from the fixture") {
    AgentFixture fixture = parse_agent_fixture(nlohmann::json::parse(R"({
      "art-1": {"proposals": [], "caption_template": "{article_id}@{location}: {frame_count} frames"}
    })"));
    ScriptedAgents agents(std::move(fixture));
    const Caption c = agents.caption(article(), sequence(false, 2), "Delta");
    CHECK(c.text == "art-1@Delta: 2 frames");
    CHECK(c.referenced_frames.size() == 2);
}

TEST_CASE("scripted backends are pure functions of their inputs") {
    ScriptedAgents a(abc_fixture());
    ScriptedAgents b(abc_fixture());
    const auto pa = a.propose(article(), {});
    const auto pb = b.propose(article(), {});
    REQUIRE(pa.has_value());
    REQUIRE(pb.has_value());
    CHECK(pa->first.name == pb->first.name);
    CHECK(pa->second == pb->second);
    CHECK(a.caption(article(), sequence(true), "Alpha").text ==
          b.caption(article(), sequence(true), "Alpha").text);
}

TEST_CASE("failure entries serialize with a kind-specific reason contract") {
    const FailureEntry f{"Here", FailureEntry::Kind::not_visible, "no change"};
    const auto round = FailureEntry::from_json(f.to_json());
    CHECK(round.location_name == "Here");
    CHECK(round.kind == FailureEntry::Kind::not_visible);
    CHECK(round.reason == "no change");
    CHECK_THROWS_AS(
        FailureEntry::from_json(nlohmann::json{{"location_name", "X"},
                                               {"kind", "not_visible"},
                                               {"reason", ""}}),
        ValidationError);
}

TEST_CASE("render_failures embeds names and reasons verbatim") {
    const std::vector<FailureEntry> failures{
        {"Springfield", FailureEntry::Kind::geocode_error, ""},
        {"Shelbyville", FailureEntry::Kind::not_visible, "river bend looks untouched"}};
    const std::string rendered = render_failures(failures);
    CHECK(rendered.find("Springfield") != std::string::npos);
    CHECK(rendered.find("river bend looks untouched") != std::string::npos);
    CHECK(rendered.find("geocode_error") != std::string::npos);
}

TEST_CASE("default timeline brackets the publish date by 30 days") {
    const auto t = default_timeline(Date::parse("2024-03-15"));
    CHECK(t.start == Date::parse("2024-02-14"));
    CHECK(t.end == Date::parse("2024-04-14"));
}

}  // TEST_SUITE
