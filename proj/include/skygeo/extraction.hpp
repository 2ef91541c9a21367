#pragma once

#include <string_view>
#include <vector>

#include "skygeo/article.hpp"
#include "skygeo/gazetteer.hpp"

namespace skygeo {

/// Counts gazetteer-name mentions in free text. Matching is
/// case-insensitive on word boundaries; at a given position the longest
/// name wins and matched spans never overlap. Output is ordered by
/// descending weight, ties by name.
std::vector<WeightedPlace> extract_weighted_places(std::string_view text, const Gazetteer& g);

inline std::vector<WeightedPlace> extract_weighted_places(const ArticleRecord& article,
                                                          const Gazetteer& g) {
    return extract_weighted_places(article.text, g);
}

}  // namespace skygeo
