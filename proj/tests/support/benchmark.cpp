#include "support/benchmark.hpp"

#include "skygeo/hashing.hpp"

namespace skygeo::testing {

namespace {

const char* kPrefixes[] = {"Kar", "Bel", "Dor", "Mal", "Tren", "Vor",
                           "Quin", "Ash", "Fen", "Gray", "Hol", "Ost"};
const char* kSuffixes[] = {"field", "mont", "haven", "bridge", "port",
                           "wick", "dale", "burg", "ford", "mere"};

std::vector<GazetteerEntry> make_places() {
    std::vector<GazetteerEntry> entries;
    int k = 0;
    for (const char* p : kPrefixes) {
        for (int s = 0; s < 3; ++s) {  // 36 places, 7 x 9 degrees apart
            GazetteerEntry e;
            e.name = std::string(p) + kSuffixes[(k + s * 5) % 10];
            const double lat = -35.0 + 7.0 * (k % 11);
            const double lon = -140.0 + 9.0 * (k % 29);
            e.coordinate = {lat, lon};
            e.bbox = {lat - 0.3, lat + 0.3, lon - 0.3, lon + 0.3};
            entries.push_back(std::move(e));
            ++k;
        }
    }
    return entries;
}

std::string article_text(DeterministicRng& rng, const std::string& site,
                         const std::string& decoy, bool misleading) {
    static const char* kOpeners[] = {
        "Emergency crews responded overnight as the situation developed.",
        "Officials confirmed the damage after an aerial survey.",
        "Residents described scenes of confusion through the morning.",
        "The regional authority declared a state of alert."};
    std::string text = kOpeners[rng.next_int(0, 3)];
    if (misleading) {
        // The decoy dominates the mention counts; the real site appears once.
        text += " Coordination was run from " + decoy + ", where the council met twice.";
        text += " Supplies staged in " + decoy + " moved out by truck.";
        text += " A spokesperson in " + decoy + " praised the volunteers.";
        text += " Witnesses near " + site + " reported the event itself.";
    } else {
        text += " The event struck " + site + " before dawn.";
        text += " By afternoon, " + site + " had closed its main road.";
        if (rng.next_unit() < 0.5) {
            text += " Power in " + site + " was restored late in the day.";
        }
    }
    return text;
}

}  // namespace

Benchmark generate_benchmark(const BenchmarkOptions& options) {
    DeterministicRng rng(options.seed);
    Benchmark bench;

    auto places = make_places();
    const int place_count = static_cast<int>(places.size());
    bench.gazetteer = std::make_shared<Gazetteer>(places);

    const Date epoch = Date::parse("2024-01-01");
    nlohmann::json fixture_json = nlohmann::json::object();

    for (int i = 0; i < options.article_count; ++i) {
        const bool misleading =
            i < static_cast<int>(options.article_count * options.misleading_fraction + 0.5);
        if (misleading) ++bench.misleading_count;

        const int site_idx = static_cast<int>(rng.next_int(0, place_count - 1));
        int decoy_idx = site_idx;
        while (decoy_idx == site_idx ||
               places[decoy_idx].coordinate == places[site_idx].coordinate) {
            decoy_idx = static_cast<int>(rng.next_int(0, place_count - 1));
        }
        const auto& site = places[site_idx];
        const auto& decoy = places[decoy_idx];

        ArticleRecord article;
        article.id = "bench-" + std::to_string(i);
        article.published = epoch.plus_days(rng.next_int(30, 300));
        article.text = article_text(rng, site.name, decoy.name, misleading);
        article.source_url = "synthetic://benchmark/" + article.id;

        // Ground truth: the event happened at the site shortly before print.
        bench.events.push_back(PlantedEvent{site.coordinate, article.published.plus_days(-10),
                                            article.published.plus_days(-5), "bench event"});

        // Scripted proposals in relevance order: what the article talks
        // about most comes first, the true site follows.
        nlohmann::json proposals = nlohmann::json::array();
        const std::string start = article.published.plus_days(-15).to_string();
        const std::string end = article.published.plus_days(15).to_string();
        if (misleading) {
            proposals.push_back({{"name", decoy.name}, {"start", start}, {"end", end}});
        }
        proposals.push_back({{"name", site.name}, {"start", start}, {"end", end}});
        fixture_json[article.id] = nlohmann::json{{"proposals", std::move(proposals)}};

        bench.articles.push_back(std::move(article));
    }
    bench.fixture = parse_agent_fixture(fixture_json);
    return bench;
}

Backends Benchmark::backends(std::uint64_t seed) const {
    Backends b;
    b.gazetteer = gazetteer;
    b.geocoder = std::make_shared<GazetteerGeocoder>(gazetteer);
    b.imagery = std::make_shared<SyntheticImagery>(SyntheticImageryOptions{seed, 7, 0.05}, events);
    auto agents = std::make_shared<ScriptedAgents>(fixture);
    b.article_agent = agents;
    b.verifier = agents;
    b.captioner = agents;
    return b;
}

}  // namespace skygeo::testing
