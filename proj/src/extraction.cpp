#include "skygeo/extraction.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <unordered_map>

namespace skygeo {

namespace {

// Word characters: ASCII alphanumerics plus any non-ASCII byte, so UTF-8
// sequences stay inside one token. Everything else separates tokens.
bool is_word_byte(unsigned char c) { return c >= 0x80 || std::isalnum(c); }

struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;
};

std::vector<Span> tokenize(std::string_view s) {
    std::vector<Span> tokens;
    std::size_t i = 0;
    while (i < s.size()) {
        if (!is_word_byte(static_cast<unsigned char>(s[i]))) {
            ++i;
            continue;
        }
        std::size_t j = i + 1;
        while (j < s.size() && is_word_byte(static_cast<unsigned char>(s[j]))) ++j;
        tokens.push_back({i, j});
        i = j;
    }
    return tokens;
}

struct NamePattern {
    std::vector<std::string> tokens;  // folded
    std::size_t entry_index = 0;
};

}  // namespace

std::vector<WeightedPlace> extract_weighted_places(std::string_view text, const Gazetteer& g) {
    if (text.empty() || g.empty()) return {};

    // Patterns grouped by first token; longer token sequences first so the
    // longest name wins at overlapping spans.
    std::unordered_map<std::string, std::vector<NamePattern>> by_first;
    for (std::size_t idx = 0; idx < g.entries().size(); ++idx) {
        const std::string folded = fold_case(g.entries()[idx].name);
        const auto spans = tokenize(folded);
        if (spans.empty()) continue;
        NamePattern p;
        p.entry_index = idx;
        p.tokens.reserve(spans.size());
        for (const auto& sp : spans) p.tokens.push_back(folded.substr(sp.begin, sp.end - sp.begin));
        by_first[p.tokens.front()].push_back(std::move(p));
    }
    for (auto& [first, patterns] : by_first) {
        std::sort(patterns.begin(), patterns.end(), [&](const NamePattern& a, const NamePattern& b) {
            if (a.tokens.size() != b.tokens.size()) return a.tokens.size() > b.tokens.size();
            const auto& an = g.entries()[a.entry_index].name;
            const auto& bn = g.entries()[b.entry_index].name;
            if (an.size() != bn.size()) return an.size() > bn.size();
            return an < bn;
        });
    }

    const std::string folded_text = fold_case(text);
    const auto tokens = tokenize(folded_text);
    const auto token_at = [&](std::size_t i) {
        return std::string_view(folded_text).substr(tokens[i].begin, tokens[i].end - tokens[i].begin);
    };

    std::unordered_map<std::size_t, int> counts;  // entry index -> weight
    std::size_t i = 0;
    while (i < tokens.size()) {
        const auto it = by_first.find(std::string(token_at(i)));
        std::size_t advance = 1;
        if (it != by_first.end()) {
            for (const auto& p : it->second) {
                if (i + p.tokens.size() > tokens.size()) continue;
                bool match = true;
                for (std::size_t k = 1; k < p.tokens.size(); ++k) {
                    if (token_at(i + k) != p.tokens[k]) {
                        match = false;
                        break;
                    }
                }
                if (match) {
                    ++counts[p.entry_index];
                    advance = p.tokens.size();
                    break;
                }
            }
        }
        i += advance;
    }

    std::vector<WeightedPlace> places;
    places.reserve(counts.size());
    for (const auto& [idx, weight] : counts) {
        const auto& e = g.entries()[idx];
        places.push_back(WeightedPlace{e.name, e.coordinate, e.bbox, weight});
    }
    std::sort(places.begin(), places.end(), [](const WeightedPlace& a, const WeightedPlace& b) {
        if (a.weight != b.weight) return a.weight > b.weight;
        return a.name < b.name;
    });
    return places;
}

}  // namespace skygeo
