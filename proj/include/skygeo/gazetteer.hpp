#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "skygeo/geo.hpp"

namespace skygeo {

struct GazetteerEntry {
    std::string name;  // canonical spelling as loaded
    GeoCoordinate coordinate;
    GeoBoundingBox bbox;
};

/// ASCII-lowercased copy; bytes >= 0x80 pass through untouched.
std::string fold_case(std::string_view s);

/// Immutable place-name dictionary. Names are unique after case folding
/// and every entry's coordinate lies inside its bounding box.
class Gazetteer {
public:
    Gazetteer() = default;
    explicit Gazetteer(std::vector<GazetteerEntry> entries);

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const std::vector<GazetteerEntry>& entries() const { return entries_; }

    /// Case-insensitive lookup; nullptr when unknown.
    const GazetteerEntry* lookup(std::string_view name) const;

private:
    std::vector<GazetteerEntry> entries_;
    std::unordered_map<std::string, std::size_t> index_;  // folded name -> entries_ index
};

/// Loads the tab-separated gazetteer format:
///   name <TAB> lat <TAB> lon <TAB> south <TAB> north <TAB> west <TAB> east
/// Lines starting with '#' and blank lines are skipped. Throws ParseError /
/// ValidationError with the offending line number and field.
Gazetteer load_gazetteer(const std::filesystem::path& path);

/// Parses gazetteer rows from an in-memory string (same format/errors).
Gazetteer parse_gazetteer(std::string_view content);

}  // namespace skygeo
