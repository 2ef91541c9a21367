// skygeo: geocode news-described events and check them against satellite
// imagery. Machine output is line-delimited JSON on stdout; human tables
// go to stderr under --pretty. Exit codes: 0 success/detected, 1 usage or
// input error, 2 infrastructure (transport) error, 3 event not found.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "skygeo/article.hpp"
#include "skygeo/config.hpp"
#include "skygeo/errors.hpp"
#include "skygeo/manifest.hpp"
#include "skygeo/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfrastructure = 2;
constexpr int kExitNotFound = 3;

struct GlobalFlags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    bool quiet = false;
    bool pretty = false;

    std::optional<std::string> method;
    std::optional<int> max_attempts;
    std::optional<int> concurrency;
};

std::string timestamp_header() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[40];
    std::strftime(buf, sizeof(buf), "# generated %Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

skygeo::AppConfig load_config(const GlobalFlags& flags) {
    skygeo::AppConfig config;
    if (!flags.config_path.empty()) {
        config = skygeo::AppConfig::load(flags.config_path);
    }
    if (flags.method) config.method = skygeo::method_from_string(*flags.method);
    if (flags.max_attempts) config.max_attempts = *flags.max_attempts;
    if (flags.concurrency) config.concurrency = *flags.concurrency;
    if (flags.seed) config.seed = *flags.seed;
    return config;
}

std::filesystem::path config_dir(const GlobalFlags& flags) {
    if (flags.config_path.empty()) return {};
    return std::filesystem::path(flags.config_path).parent_path();
}

int cmd_geocode(const GlobalFlags& flags, const std::string& article_path) {
    const auto config = load_config(flags);
    const auto backends = config.build_backends(config_dir(flags));
    const auto article = skygeo::load_article(article_path);

    const auto result =
        skygeo::run_article(article, config.method, config.pipeline_config(), backends);
    std::cout << result.to_json().dump() << "\n";
    if (flags.pretty) {
        if (!flags.quiet) std::cerr << timestamp_header() << "\n";
        std::cerr << "article " << result.article_id << ": " << to_string(result.status);
        if (result.location_name) std::cerr << " at " << *result.location_name;
        std::cerr << " after " << result.attempts << " attempt(s)\n";
    }
    switch (result.status) {
        case skygeo::PipelineStatus::detected:
            return kExitOk;
        case skygeo::PipelineStatus::infrastructure_error:
            if (!flags.quiet) std::cerr << "error: " << result.error << "\n";
            return kExitInfrastructure;
        default:
            return kExitNotFound;
    }
}

void write_report(const skygeo::BatchReport& report, const std::filesystem::path& out_dir,
                  const GlobalFlags& flags) {
    {
        std::ofstream json_out(out_dir / "report.json", std::ios::binary | std::ios::trunc);
        json_out << report.to_json().dump(2) << "\n";
    }
    {
        std::ofstream text_out(out_dir / "report.txt", std::ios::binary | std::ios::trunc);
        text_out << report.render_table();
    }
    std::cout << report.to_json().dump() << "\n";
    if (flags.pretty) {
        if (!flags.quiet) std::cerr << timestamp_header() << "\n";
        std::cerr << report.render_table();
    }
}

int cmd_run_batch(const GlobalFlags& flags, const std::string& corpus_path,
                  const std::string& methods_csv, const std::string& out_dir) {
    const auto config = load_config(flags);
    const auto backends = config.build_backends(config_dir(flags));

    std::vector<skygeo::Method> methods;
    std::stringstream ss(methods_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) methods.push_back(skygeo::method_from_string(item));
    }
    if (methods.empty()) {
        throw skygeo::ValidationError("--methods must name at least one method");
    }

    const auto corpus = skygeo::load_corpus(corpus_path);
    for (const auto& e : corpus.errors) {
        std::cerr << "corpus line " << e.line << ": " << e.message << "\n";
    }

    std::filesystem::create_directories(out_dir);
    skygeo::FileResultsStore store{std::filesystem::path(out_dir)};
    const auto outcome =
        skygeo::run_batch(corpus.articles, methods, config.pipeline_config(), backends, &store);
    write_report(outcome.report, out_dir, flags);

    if (!flags.quiet) {
        std::cerr << "processed " << corpus.articles.size() << " article(s), "
                  << corpus.errors.size() << " corpus error(s), results under " << out_dir
                  << "\n";
    }
    return kExitOk;
}

int cmd_report(const GlobalFlags& flags, const std::string& dir) {
    skygeo::BatchReport report;
    std::optional<int> baseline;
    skygeo::FileResultsStore store{std::filesystem::path(dir)};

    struct Row {
        skygeo::Method method;
        int detections = 0;
        int total = 0;
    };
    std::vector<Row> rows;
    for (const auto method :
         {skygeo::Method::centroid, skygeo::Method::gipsy, skygeo::Method::agentic}) {
        const auto path = skygeo::FileResultsStore::path_for(dir, method);
        if (!std::filesystem::exists(path)) continue;
        Row row{method, 0, 0};
        for (const auto& r : store.existing(method)) {
            ++row.total;
            if (r.status == skygeo::PipelineStatus::detected) ++row.detections;
        }
        rows.push_back(row);
        if (method == skygeo::Method::centroid && row.detections > 0) {
            baseline = row.detections;
        }
    }
    if (rows.empty()) {
        throw skygeo::ValidationError("no results_{method}.jsonl files under " + dir);
    }
    for (const auto& row : rows) {
        const std::optional<int> row_baseline =
            row.method == skygeo::Method::centroid ? std::optional<int>{} : baseline;
        if (row.total == 0) {
            skygeo::MetricsRow empty;
            empty.method = to_string(row.method);
            report.rows.push_back(empty);
        } else {
            report.rows.push_back(skygeo::compute_metrics(row.detections, row.total, row_baseline,
                                                          to_string(row.method)));
        }
    }
    write_report(report, dir, flags);
    return kExitOk;
}

int cmd_dataset_stats(const GlobalFlags& flags, const std::string& manifest_path) {
    const auto manifests = skygeo::import_manifests(manifest_path);
    const auto stats = skygeo::compute_dataset_stats(manifests);
    std::cout << stats.to_json().dump() << "\n";
    if (flags.pretty) {
        if (!flags.quiet) std::cerr << timestamp_header() << "\n";
        char line[160];
        std::snprintf(line, sizeof(line), "%-16s  %-16s  %s\n", "Total Sequences",
                      "Confirmed Events", "Average # Images Per Sequence");
        std::cerr << line;
        std::snprintf(line, sizeof(line), "%-16d  %-16d  %d\n", stats.total_sequences,
                      stats.confirmed_events, stats.avg_images_rounded());
        std::cerr << line;
    }
    return kExitOk;
}

int cmd_gazetteer_validate(const GlobalFlags& flags, const std::string& path) {
    const auto gazetteer = skygeo::load_gazetteer(path);
    std::cout << nlohmann::json{{"entries", gazetteer.size()}, {"valid", true}}.dump() << "\n";
    if (flags.pretty && !flags.quiet) {
        std::cerr << path << ": " << gazetteer.size() << " entries, all valid\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"News-event geocoding against satellite imagery"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may appear after the subcommand

    GlobalFlags flags;
    app.add_option("--config", flags.config_path, "JSON run configuration");
    std::uint64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "Deterministic seed override");
    app.add_flag("--quiet", flags.quiet, "Suppress log chatter and timestamp headers");
    app.add_flag("--pretty", flags.pretty, "Render human tables on stderr");

    std::string method_value;
    auto* method_opt = app.add_option("--method", method_value, "centroid, gipsy or agentic")
                           ->check(CLI::IsMember({"centroid", "gipsy", "agentic"}));
    int max_attempts_value = 0;
    auto* attempts_opt =
        app.add_option("--max-attempts", max_attempts_value, "Agentic attempt cap");
    int concurrency_value = 0;
    auto* concurrency_opt =
        app.add_option("--concurrency", concurrency_value, "Parallel articles in a batch");

    std::string article_path;
    auto* geocode = app.add_subcommand("geocode", "Locate one article's event");
    geocode->add_option("article", article_path, "Article JSON file")->required();

    std::string corpus_path;
    std::string methods_csv = "centroid,gipsy,agentic";
    std::string out_dir;
    auto* run_batch = app.add_subcommand("run-batch", "Run methods over a corpus");
    run_batch->add_option("corpus", corpus_path, "Line-delimited JSON corpus")->required();
    run_batch->add_option("--methods", methods_csv, "Comma-separated method list");
    run_batch->add_option("--out", out_dir, "Output directory")->required();

    std::string report_dir;
    auto* report = app.add_subcommand("report", "Recompute the report from results files");
    report->add_option("dir", report_dir, "Directory holding results_{method}.jsonl")->required();

    std::string manifest_path;
    auto* dataset_stats = app.add_subcommand("dataset-stats", "Summarize a manifest file");
    dataset_stats->add_option("manifest", manifest_path, "Manifest JSONL file")->required();

    std::string gazetteer_path;
    auto* gazetteer_validate = app.add_subcommand("gazetteer-validate", "Check a gazetteer file");
    gazetteer_validate->add_option("gazetteer", gazetteer_path, "Gazetteer TSV file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (*seed_opt) flags.seed = seed_value;
    if (*method_opt) flags.method = method_value;
    if (*attempts_opt) flags.max_attempts = max_attempts_value;
    if (*concurrency_opt) flags.concurrency = concurrency_value;

    try {
        if (geocode->parsed()) return cmd_geocode(flags, article_path);
        if (run_batch->parsed()) return cmd_run_batch(flags, corpus_path, methods_csv, out_dir);
        if (report->parsed()) return cmd_report(flags, report_dir);
        if (dataset_stats->parsed()) return cmd_dataset_stats(flags, manifest_path);
        if (gazetteer_validate->parsed()) return cmd_gazetteer_validate(flags, gazetteer_path);
    } catch (const skygeo::TransportError& e) {
        std::cerr << "transport error: " << e.what() << "\n";
        return kExitInfrastructure;
    } catch (const skygeo::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
