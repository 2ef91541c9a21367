#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "skygeo/agents.hpp"
#include "skygeo/article.hpp"
#include "skygeo/clients.hpp"

namespace skygeo {

enum class Method { centroid, gipsy, agentic };

const char* to_string(Method m);
Method method_from_string(const std::string& s);

/// Canonical report/run order: centroid, gipsy, agentic.
std::vector<Method> canonical_method_order(std::vector<Method> methods);

enum class PipelineStatus { detected, exhausted, no_candidates, infrastructure_error };

const char* to_string(PipelineStatus s);
PipelineStatus pipeline_status_from_string(const std::string& s);

/// Outcome of one article run. For detected results the location name,
/// coordinate and caption are always present and the failure list holds
/// exactly the attempts that came before the hit.
struct PipelineResult {
    std::string article_id;
    Method method = Method::agentic;
    PipelineStatus status = PipelineStatus::no_candidates;
    std::optional<std::string> location_name;  // l*
    std::optional<GeoCoordinate> coordinate;
    std::optional<EventTimeline> timeline;
    int attempts = 0;
    std::vector<FailureEntry> failures;
    std::optional<Caption> caption;
    std::optional<ImagerySequence> imagery;
    std::string error;  // infrastructure_error detail

    nlohmann::json to_json() const;
    static PipelineResult from_json(const nlohmann::json& j);
};

/// Runtime knobs for one run; backends are wired separately.
struct PipelineConfig {
    int max_attempts = 5;
    Method method = Method::agentic;
    int concurrency = 1;
    std::uint64_t seed = 0;
    /// When true, articles that died on transport errors are treated as
    /// re-queued: they drop out of the yield denominator.
    bool requeue_infrastructure = false;
};

/// The wired service set one run talks to.
struct Backends {
    std::shared_ptr<Geocoder> geocoder;
    std::shared_ptr<ImageryClient> imagery;
    std::shared_ptr<ArticleAgent> article_agent;
    std::shared_ptr<VerifierAgent> verifier;
    std::shared_ptr<CaptioningAgent> captioner;
    std::shared_ptr<const Gazetteer> gazetteer;  // entity extraction for the traditional methods
};

/// Iterative search-and-verify loop for one article: propose a candidate,
/// geocode it, fetch imagery, verify; on failure feed the reason back and
/// try the next candidate, up to max_attempts. Captioning runs only after
/// a positive verdict.
PipelineResult run_article_agentic(const ArticleRecord& article, const PipelineConfig& config,
                                   const Backends& backends);

/// Single-shot traditional run: extract weighted places, geocode with the
/// chosen method, fetch imagery over published +/- 30 days, verify once.
PipelineResult run_article_traditional(const ArticleRecord& article, Method method,
                                       const PipelineConfig& config, const Backends& backends);

/// Dispatches on config/method.
PipelineResult run_article(const ArticleRecord& article, Method method,
                           const PipelineConfig& config, const Backends& backends);

/// One Table-1-style report row.
struct MetricsRow {
    std::string method;
    int detections = 0;
    int total_articles = 0;
    double yield_pct = 0.0;
    std::optional<double> improvement_over_baseline;

    nlohmann::json to_json() const;
};

/// Yield and relative improvement. Throws UndefinedBaselineError when an
/// improvement is requested against zero baseline detections.
MetricsRow compute_metrics(int detections, int total, std::optional<int> baseline_detections,
                           const std::string& method_name = {});

struct BatchReport {
    std::vector<MetricsRow> rows;  // canonical method order
    std::string baseline = "centroid";

    nlohmann::json to_json() const;
    /// Rendered table: Method | Event Detections | Yield | Increase over
    /// Centroid Baseline ("--" for the baseline row).
    std::string render_table() const;
};

/// Append-only results persistence; one JSON object per line, per method
/// file. Reopening an existing file resumes: completed article ids are
/// skipped and their stored results reused.
class ResultsStore {
public:
    virtual ~ResultsStore() = default;
    virtual std::vector<PipelineResult> existing(Method method) = 0;
    virtual void append(const PipelineResult& result) = 0;
};

/// results_{method}.jsonl files under a directory.
class FileResultsStore : public ResultsStore {
public:
    explicit FileResultsStore(std::filesystem::path directory);
    std::vector<PipelineResult> existing(Method method) override;
    void append(const PipelineResult& result) override;

    static std::filesystem::path path_for(const std::filesystem::path& dir, Method method);

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

struct BatchOutcome {
    std::vector<PipelineResult> results;  // method-major, article order within a method
    BatchReport report;
};

/// Runs every method over the corpus with article-level parallelism up to
/// config.concurrency. Results are deterministic for the scripted and
/// synthetic backends regardless of scheduling. A store, when given,
/// receives results incrementally and pre-seeds completed ids.
BatchOutcome run_batch(const std::vector<ArticleRecord>& articles,
                       const std::vector<Method>& methods, const PipelineConfig& config,
                       const Backends& backends, ResultsStore* store = nullptr);

}  // namespace skygeo
