#include "skygeo/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "skygeo/centroid.hpp"
#include "skygeo/errors.hpp"
#include "skygeo/extraction.hpp"
#include "skygeo/gipsy.hpp"

namespace skygeo {

const char* to_string(Method m) {
    switch (m) {
        case Method::centroid:
            return "centroid";
        case Method::gipsy:
            return "gipsy";
        case Method::agentic:
            return "agentic";
    }
    return "unknown";
}

Method method_from_string(const std::string& s) {
    if (s == "centroid") return Method::centroid;
    if (s == "gipsy") return Method::gipsy;
    if (s == "agentic") return Method::agentic;
    throw ValidationError("unknown method '" + s + "' (expected centroid, gipsy or agentic)");
}

std::vector<Method> canonical_method_order(std::vector<Method> methods) {
    std::sort(methods.begin(), methods.end(),
              [](Method a, Method b) { return static_cast<int>(a) < static_cast<int>(b); });
    methods.erase(std::unique(methods.begin(), methods.end()), methods.end());
    return methods;
}

const char* to_string(PipelineStatus s) {
    switch (s) {
        case PipelineStatus::detected:
            return "detected";
        case PipelineStatus::exhausted:
            return "exhausted";
        case PipelineStatus::no_candidates:
            return "no_candidates";
        case PipelineStatus::infrastructure_error:
            return "infrastructure_error";
    }
    return "unknown";
}

PipelineStatus pipeline_status_from_string(const std::string& s) {
    if (s == "detected") return PipelineStatus::detected;
    if (s == "exhausted") return PipelineStatus::exhausted;
    if (s == "no_candidates") return PipelineStatus::no_candidates;
    if (s == "infrastructure_error") return PipelineStatus::infrastructure_error;
    throw ParseError("unknown pipeline status '" + s + "'");
}

nlohmann::json PipelineResult::to_json() const {
    nlohmann::json j{{"article_id", article_id},
                     {"method", skygeo::to_string(method)},
                     {"status", skygeo::to_string(status)},
                     {"attempts", attempts}};
    nlohmann::json fj = nlohmann::json::array();
    for (const auto& f : failures) fj.push_back(f.to_json());
    j["failures"] = std::move(fj);
    if (location_name) j["location_name"] = *location_name;
    if (coordinate) j["coordinate"] = {{"lat", coordinate->lat_deg}, {"lon", coordinate->lon_deg}};
    if (timeline) {
        j["timeline"] = {{"start", timeline->start.to_string()},
                         {"end", timeline->end.to_string()}};
    }
    if (caption) j["caption"] = caption->to_json();
    if (imagery) j["imagery"] = imagery->to_json();
    if (!error.empty()) j["error"] = error;
    return j;
}

PipelineResult PipelineResult::from_json(const nlohmann::json& j) {
    PipelineResult r;
    r.article_id = j.at("article_id").get<std::string>();
    r.method = method_from_string(j.at("method").get<std::string>());
    r.status = pipeline_status_from_string(j.at("status").get<std::string>());
    r.attempts = j.at("attempts").get<int>();
    for (const auto& fj : j.at("failures")) r.failures.push_back(FailureEntry::from_json(fj));
    if (j.contains("location_name")) r.location_name = j.at("location_name").get<std::string>();
    if (j.contains("coordinate")) {
        r.coordinate = GeoCoordinate{j.at("coordinate").at("lat").get<double>(),
                                     j.at("coordinate").at("lon").get<double>()};
    }
    if (j.contains("timeline")) {
        r.timeline = EventTimeline{Date::parse(j.at("timeline").at("start").get<std::string>()),
                                   Date::parse(j.at("timeline").at("end").get<std::string>())};
    }
    if (j.contains("caption")) r.caption = Caption::from_json(j.at("caption"));
    if (j.contains("imagery")) r.imagery = ImagerySequence::from_json(j.at("imagery"));
    r.error = j.value("error", std::string());
    if (r.status == PipelineStatus::detected &&
        (!r.location_name || !r.coordinate || !r.caption)) {
        throw ValidationError("detected result for '" + r.article_id +
                              "' missing location/coordinate/caption");
    }
    return r;
}

PipelineResult run_article_agentic(const ArticleRecord& article, const PipelineConfig& config,
                                   const Backends& backends) {
    if (config.max_attempts < 1) {
        throw ValidationError("max_attempts must be >= 1");
    }
    PipelineResult result;
    result.article_id = article.id;
    result.method = Method::agentic;

    int attempts = 0;
    std::vector<FailureEntry> failures;
    try {
        while (attempts < config.max_attempts) {
            ++attempts;

            const auto proposal = backends.article_agent->propose(article, failures);
            if (!proposal) {
                // Agent out of candidates: this turn consumed no location.
                result.status = PipelineStatus::no_candidates;
                result.attempts = attempts - 1;
                result.failures = std::move(failures);
                return result;
            }
            const auto& [location, timeline] = *proposal;

            std::optional<GeocodeResult> geocode;
            geocode = backends.geocoder->forward(location.name);
            if (!geocode) {
                failures.push_back(
                    FailureEntry{location.name, FailureEntry::Kind::geocode_error, ""});
                continue;
            }

            const ImagerySequence imagery =
                backends.imagery->fetch(geocode->coordinate, timeline);
            if (imagery.empty()) {
                failures.push_back(FailureEntry{location.name, FailureEntry::Kind::not_visible,
                                                "no imagery available over the event timeline"});
                continue;
            }

            VerifierVerdict verdict;
            try {
                verdict = backends.verifier->verify(article, imagery, location.name);
            } catch (const MalformedResponseError& e) {
                // A verifier that cannot produce a valid verdict counts as a
                // miss for this candidate, with the malformation as reason.
                failures.push_back(FailureEntry{location.name, FailureEntry::Kind::not_visible,
                                                std::string("malformed verifier response: ") +
                                                    e.what()});
                continue;
            }
            if (!verdict.visible) {
                failures.push_back(FailureEntry{location.name, FailureEntry::Kind::not_visible,
                                                verdict.reason});
                continue;
            }

            result.status = PipelineStatus::detected;
            result.location_name = location.name;
            result.coordinate = geocode->coordinate;
            result.timeline = timeline;
            result.caption = backends.captioner->caption(article, imagery, location.name);
            result.imagery = imagery;
            result.attempts = attempts;
            result.failures = std::move(failures);
            return result;
        }
    } catch (const TransportError& e) {
        result.status = PipelineStatus::infrastructure_error;
        result.attempts = attempts;
        result.failures = std::move(failures);
        result.error = e.what();
        return result;
    } catch (const MalformedResponseError& e) {
        result.status = PipelineStatus::infrastructure_error;
        result.attempts = attempts;
        result.failures = std::move(failures);
        result.error = e.what();
        return result;
    }

    result.status = PipelineStatus::exhausted;
    result.attempts = attempts;
    result.failures = std::move(failures);
    return result;
}

PipelineResult run_article_traditional(const ArticleRecord& article, Method method,
                                       const PipelineConfig& config, const Backends& backends) {
    if (method != Method::centroid && method != Method::gipsy) {
        throw ValidationError("run_article_traditional requires centroid or gipsy");
    }
    (void)config;
    PipelineResult result;
    result.article_id = article.id;
    result.method = method;

    if (!backends.gazetteer) {
        throw ValidationError("traditional methods need a gazetteer for entity extraction");
    }
    const auto places = extract_weighted_places(article, *backends.gazetteer);
    if (places.empty()) {
        result.status = PipelineStatus::no_candidates;
        result.attempts = 0;
        return result;
    }
    // The heaviest mention labels the run; the geometry decides the point.
    const std::string label = places.front().name;

    try {
        GeoCoordinate located;
        try {
            located = method == Method::centroid ? weighted_centroid(places)
                                                 : gipsy_locate(places);
        } catch (const DegenerateGeometryError& e) {
            result.status = PipelineStatus::no_candidates;
            result.attempts = 0;
            result.error = e.what();
            return result;
        }

        const EventTimeline timeline = default_timeline(article.published);
        const ImagerySequence imagery = backends.imagery->fetch(located, timeline);
        result.attempts = 1;

        if (imagery.empty()) {
            result.status = PipelineStatus::exhausted;
            result.failures.push_back(FailureEntry{label, FailureEntry::Kind::not_visible,
                                                   "no imagery available over the event timeline"});
            return result;
        }

        VerifierVerdict verdict;
        try {
            verdict = backends.verifier->verify(article, imagery, label);
        } catch (const MalformedResponseError& e) {
            result.status = PipelineStatus::exhausted;
            result.failures.push_back(
                FailureEntry{label, FailureEntry::Kind::not_visible,
                             std::string("malformed verifier response: ") + e.what()});
            return result;
        }
        if (!verdict.visible) {
            result.status = PipelineStatus::exhausted;
            result.failures.push_back(
                FailureEntry{label, FailureEntry::Kind::not_visible, verdict.reason});
            return result;
        }

        result.status = PipelineStatus::detected;
        result.location_name = label;
        result.coordinate = located;
        result.timeline = timeline;
        result.caption = backends.captioner->caption(article, imagery, label);
        result.imagery = imagery;
        return result;
    } catch (const TransportError& e) {
        result.status = PipelineStatus::infrastructure_error;
        result.error = e.what();
        return result;
    } catch (const MalformedResponseError& e) {
        result.status = PipelineStatus::infrastructure_error;
        result.error = e.what();
        return result;
    }
}

PipelineResult run_article(const ArticleRecord& article, Method method,
                           const PipelineConfig& config, const Backends& backends) {
    return method == Method::agentic ? run_article_agentic(article, config, backends)
                                     : run_article_traditional(article, method, config, backends);
}

nlohmann::json MetricsRow::to_json() const {
    nlohmann::json j{{"method", method},
                     {"detections", detections},
                     {"total_articles", total_articles},
                     {"yield_pct", yield_pct}};
    if (improvement_over_baseline) {
        j["improvement_over_baseline"] = *improvement_over_baseline;
    } else {
        j["improvement_over_baseline"] = nullptr;
    }
    return j;
}

MetricsRow compute_metrics(int detections, int total, std::optional<int> baseline_detections,
                           const std::string& method_name) {
    if (total <= 0) {
        throw ValidationError("compute_metrics: total must be positive");
    }
    if (detections < 0 || detections > total) {
        throw ValidationError("compute_metrics: detections out of [0, total]");
    }
    MetricsRow row;
    row.method = method_name;
    row.detections = detections;
    row.total_articles = total;
    row.yield_pct = 100.0 * static_cast<double>(detections) / static_cast<double>(total);
    if (baseline_detections) {
        if (*baseline_detections <= 0) {
            throw UndefinedBaselineError(
                "compute_metrics: improvement requested against a zero-detection baseline");
        }
        row.improvement_over_baseline =
            static_cast<double>(detections) / static_cast<double>(*baseline_detections);
    }
    return row;
}

nlohmann::json BatchReport::to_json() const {
    nlohmann::json rows_json = nlohmann::json::array();
    for (const auto& row : rows) rows_json.push_back(row.to_json());
    return nlohmann::json{{"rows", std::move(rows_json)}, {"baseline", baseline}};
}

std::string BatchReport::render_table() const {
    std::string out =
        "Method     Event Detections  Yield   Increase over Centroid Baseline\n";
    char line[128];
    for (const auto& row : rows) {
        char yield_buf[24];
        std::snprintf(yield_buf, sizeof(yield_buf), "%.1f%%", row.yield_pct);
        char improvement_buf[24];
        if (row.improvement_over_baseline) {
            std::snprintf(improvement_buf, sizeof(improvement_buf), "%.1fx",
                          *row.improvement_over_baseline);
        } else {
            std::snprintf(improvement_buf, sizeof(improvement_buf), "--");
        }
        std::snprintf(line, sizeof(line), "%-9s  %16d  %-6s  %s\n", row.method.c_str(),
                      row.detections, yield_buf, improvement_buf);
        out += line;
    }
    return out;
}

struct FileResultsStore::Impl {
    std::filesystem::path directory;
    std::mutex mutex;
    std::unordered_map<std::string, std::ofstream> sinks;  // method name -> stream
};

FileResultsStore::FileResultsStore(std::filesystem::path directory)
    : impl_(std::make_shared<Impl>()) {
    impl_->directory = std::move(directory);
    std::filesystem::create_directories(impl_->directory);
}

std::filesystem::path FileResultsStore::path_for(const std::filesystem::path& dir, Method method) {
    return dir / ("results_" + std::string(to_string(method)) + ".jsonl");
}

std::vector<PipelineResult> FileResultsStore::existing(Method method) {
    const auto path = path_for(impl_->directory, method);
    std::vector<PipelineResult> results;
    std::ifstream in(path, std::ios::binary);
    if (!in) return results;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            results.push_back(PipelineResult::from_json(nlohmann::json::parse(line)));
        } catch (const std::exception& e) {
            throw ParseError(path.string() + " line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return results;
}

void FileResultsStore::append(const PipelineResult& result) {
    std::lock_guard lock(impl_->mutex);
    auto& sink = impl_->sinks[to_string(result.method)];
    if (!sink.is_open()) {
        sink.open(path_for(impl_->directory, result.method), std::ios::app | std::ios::binary);
        if (!sink) {
            throw Error("cannot open results file for append under " +
                        impl_->directory.string());
        }
    }
    sink << result.to_json().dump() << '\n';
    sink.flush();
}

BatchOutcome run_batch(const std::vector<ArticleRecord>& articles,
                       const std::vector<Method>& methods, const PipelineConfig& config,
                       const Backends& backends, ResultsStore* store) {
    const auto ordered_methods = canonical_method_order(methods);
    BatchOutcome outcome;

    std::unordered_map<std::string, int> detections_by_method;
    std::unordered_map<std::string, int> totals_by_method;

    for (const Method method : ordered_methods) {
        std::unordered_map<std::string, PipelineResult> done;
        if (store) {
            for (auto& r : store->existing(method)) {
                done.emplace(r.article_id, std::move(r));
            }
        }

        std::vector<PipelineResult> slot(articles.size());
        std::vector<char> fresh(articles.size(), 0);
        std::atomic<std::size_t> next{0};
        std::mutex store_mutex;

        const int workers =
            std::max(1, std::min<int>(config.concurrency, static_cast<int>(articles.size())));
        auto worker = [&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= articles.size()) break;
                const auto it = done.find(articles[i].id);
                if (it != done.end()) {
                    slot[i] = it->second;
                    continue;
                }
                PipelineResult r = run_article(articles[i], method, config, backends);
                if (store) {
                    std::lock_guard lock(store_mutex);
                    store->append(r);
                }
                slot[i] = std::move(r);
                fresh[i] = 1;
            }
        };
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (int t = 0; t < workers; ++t) threads.emplace_back(worker);
        for (auto& t : threads) t.join();

        int detections = 0;
        int total = 0;
        for (const auto& r : slot) {
            if (config.requeue_infrastructure &&
                r.status == PipelineStatus::infrastructure_error) {
                continue;
            }
            ++total;
            if (r.status == PipelineStatus::detected) ++detections;
        }
        detections_by_method[to_string(method)] = detections;
        totals_by_method[to_string(method)] = total;
        for (auto& r : slot) outcome.results.push_back(std::move(r));
    }

    std::optional<int> baseline;
    const auto base_it = detections_by_method.find("centroid");
    if (base_it != detections_by_method.end() && base_it->second > 0) {
        baseline = base_it->second;
    }
    for (const Method method : ordered_methods) {
        const std::string name = to_string(method);
        const int total = totals_by_method[name];
        if (total == 0) {
            MetricsRow row;
            row.method = name;
            outcome.report.rows.push_back(row);
            continue;
        }
        const std::optional<int> row_baseline =
            (method == Method::centroid) ? std::optional<int>{} : baseline;
        outcome.report.rows.push_back(
            compute_metrics(detections_by_method[name], total, row_baseline, name));
    }
    return outcome;
}

}  // namespace skygeo
