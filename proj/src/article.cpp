#include "skygeo/article.hpp"

#include <fstream>
#include <unordered_set>

#include "skygeo/errors.hpp"

namespace skygeo {

nlohmann::json ArticleRecord::to_json() const {
    nlohmann::json j{{"id", id}, {"text", text}, {"published", published.to_string()}};
    if (!source_url.empty()) j["source_url"] = source_url;
    return j;
}

ArticleRecord ArticleRecord::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("article record is not a JSON object");
    ArticleRecord a;
    if (!j.contains("id") || !j.at("id").is_string()) {
        throw ParseError("article record missing string field 'id'");
    }
    a.id = j.at("id").get<std::string>();
    if (a.id.empty()) throw ValidationError("article 'id' is empty");
    if (!j.contains("text") || !j.at("text").is_string()) {
        throw ParseError("article record missing string field 'text'");
    }
    a.text = j.at("text").get<std::string>();
    if (a.text.empty()) throw ValidationError("article 'text' is empty");
    if (!j.contains("published") || !j.at("published").is_string()) {
        throw ParseError("article record missing string field 'published'");
    }
    a.published = Date::parse(j.at("published").get<std::string>());
    if (j.contains("source_url") && !j.at("source_url").is_null()) {
        a.source_url = j.at("source_url").get<std::string>();
    }
    return a;
}

CorpusLoadResult load_corpus(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open corpus file: " + path.string());
    }
    CorpusLoadResult result;
    std::unordered_set<std::string> ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        try {
            auto a = ArticleRecord::from_json(nlohmann::json::parse(line));
            if (!ids.insert(a.id).second) {
                throw ValidationError("duplicate article id '" + a.id + "'");
            }
            result.articles.push_back(std::move(a));
        } catch (const std::exception& e) {
            result.errors.push_back({line_no, e.what()});
        }
    }
    return result;
}

ArticleRecord load_article(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open article file: " + path.string());
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("article file " + path.string() + ": " + e.what());
    }
    return ArticleRecord::from_json(j);
}

}  // namespace skygeo
