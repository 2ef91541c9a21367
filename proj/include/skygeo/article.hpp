#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "skygeo/datetime.hpp"

namespace skygeo {

/// One news article as ingested from the corpus.
struct ArticleRecord {
    std::string id;
    std::string text;
    Date published;
    std::string source_url;  // optional, may be empty

    nlohmann::json to_json() const;
    static ArticleRecord from_json(const nlohmann::json& j);
};

struct CorpusLineError {
    std::size_t line = 0;  // 1-based
    std::string message;
};

struct CorpusLoadResult {
    std::vector<ArticleRecord> articles;
    std::vector<CorpusLineError> errors;
};

/// Line-delimited JSON corpus. Bad lines (parse failures, invariant
/// violations, duplicate ids) are reported per line and skipped; loading
/// continues.
CorpusLoadResult load_corpus(const std::filesystem::path& path);

/// Reads a single article from a file holding one JSON object.
ArticleRecord load_article(const std::filesystem::path& path);

}  // namespace skygeo
