#include "skygeo/gazetteer.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "skygeo/errors.hpp"

namespace skygeo {

std::string fold_case(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (unsigned char c : s) {
        out.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : static_cast<char>(c));
    }
    return out;
}

Gazetteer::Gazetteer(std::vector<GazetteerEntry> entries) : entries_(std::move(entries)) {
    index_.reserve(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& e = entries_[i];
        if (e.name.empty()) {
            throw ValidationError("gazetteer entry with empty name");
        }
        if (!e.bbox.contains(e.coordinate)) {
            throw ValidationError("gazetteer entry '" + e.name +
                                  "': coordinate outside its bounding box");
        }
        if (!index_.emplace(fold_case(e.name), i).second) {
            throw ValidationError("duplicate gazetteer name after case folding: '" + e.name + "'");
        }
    }
}

const GazetteerEntry* Gazetteer::lookup(std::string_view name) const {
    const auto it = index_.find(fold_case(name));
    return it == index_.end() ? nullptr : &entries_[it->second];
}

namespace {

double parse_field(std::string_view raw, const char* field, std::size_t line) {
    double v = 0.0;
    const char* begin = raw.data();
    const char* end = raw.data() + raw.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc{} || res.ptr != end || !std::isfinite(v)) {
        throw ParseError("line " + std::to_string(line) + ": field '" + field +
                         "' is not a number: '" + std::string(raw) + "'");
    }
    return v;
}

void check_lat(double v, const char* field, std::size_t line) {
    if (v < -90.0 || v > 90.0) {
        throw ValidationError("line " + std::to_string(line) + ": field '" + field +
                              "' out of range [-90, 90]: " + std::to_string(v));
    }
}

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
        const std::size_t tab = line.find('\t', pos);
        if (tab == std::string_view::npos) {
            fields.push_back(line.substr(pos));
            break;
        }
        fields.push_back(line.substr(pos, tab - pos));
        pos = tab + 1;
    }
    return fields;
}

}  // namespace

Gazetteer parse_gazetteer(std::string_view content) {
    std::vector<GazetteerEntry> entries;
    std::unordered_map<std::string, std::size_t> seen;  // folded name -> line
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= content.size()) {
        const std::size_t nl = content.find('\n', pos);
        std::string_view line =
            content.substr(pos, nl == std::string_view::npos ? content.size() - pos : nl - pos);
        const bool last = nl == std::string_view::npos;
        pos = last ? content.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line.front() == '#') continue;

        const auto fields = split_tabs(line);
        if (fields.size() != 7) {
            throw ParseError("line " + std::to_string(line_no) +
                             ": expected 7 tab-separated fields, got " +
                             std::to_string(fields.size()));
        }
        GazetteerEntry e;
        e.name = std::string(fields[0]);
        if (e.name.empty()) {
            throw ValidationError("line " + std::to_string(line_no) + ": field 'name' is empty");
        }
        const auto [it, inserted] = seen.emplace(fold_case(e.name), line_no);
        if (!inserted) {
            throw ValidationError("line " + std::to_string(line_no) +
                                  ": duplicate name after case folding (first at line " +
                                  std::to_string(it->second) + "): '" + e.name + "'");
        }
        const double lat = parse_field(fields[1], "lat", line_no);
        const double lon = parse_field(fields[2], "lon", line_no);
        check_lat(lat, "lat", line_no);
        e.coordinate = GeoCoordinate{lat, normalize_longitude(lon)};
        e.bbox.south = parse_field(fields[3], "south", line_no);
        e.bbox.north = parse_field(fields[4], "north", line_no);
        e.bbox.west = normalize_longitude(parse_field(fields[5], "west", line_no));
        e.bbox.east = normalize_longitude(parse_field(fields[6], "east", line_no));
        check_lat(e.bbox.south, "south", line_no);
        check_lat(e.bbox.north, "north", line_no);
        if (e.bbox.south > e.bbox.north) {
            throw ValidationError("line " + std::to_string(line_no) +
                                  ": field 'south' exceeds 'north'");
        }
        if (!e.bbox.contains(e.coordinate)) {
            throw ValidationError("line " + std::to_string(line_no) +
                                  ": coordinate lies outside the bounding box");
        }
        entries.push_back(std::move(e));
    }
    return Gazetteer(std::move(entries));
}

Gazetteer load_gazetteer(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open gazetteer file: " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_gazetteer(buf.str());
}

}  // namespace skygeo
