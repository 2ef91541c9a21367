#include "skygeo/datetime.hpp"

#include <chrono>
#include <cstdio>

#include "skygeo/errors.hpp"

namespace skygeo {

namespace {

bool all_digits(std::string_view s) {
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return !s.empty();
}

int to_int(std::string_view s) {
    int v = 0;
    for (char c : s) v = v * 10 + (c - '0');
    return v;
}

}  // namespace

Date Date::from_ymd(int year, int month, int day) {
    namespace chr = std::chrono;
    const chr::year_month_day ymd{chr::year{year}, chr::month{unsigned(month)},
                                  chr::day{unsigned(day)}};
    if (!ymd.ok()) {
        char buf[48];
        std::snprintf(buf, sizeof(buf), "invalid calendar date %04d-%02d-%02d", year, month, day);
        throw ParseError(buf);
    }
    return Date(chr::sys_days{ymd}.time_since_epoch().count());
}

Date Date::parse(std::string_view iso) {
    if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-' || !all_digits(iso.substr(0, 4)) ||
        !all_digits(iso.substr(5, 2)) || !all_digits(iso.substr(8, 2))) {
        throw ParseError("expected ISO date YYYY-MM-DD, got '" + std::string(iso) + "'");
    }
    return from_ymd(to_int(iso.substr(0, 4)), to_int(iso.substr(5, 2)), to_int(iso.substr(8, 2)));
}

std::string Date::to_string() const {
    namespace chr = std::chrono;
    const chr::year_month_day ymd{chr::sys_days{chr::days{days_}}};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(ymd.year()), unsigned(ymd.month()),
                  unsigned(ymd.day()));
    return buf;
}

Timestamp Timestamp::from_date(Date d, int hour, int minute, int second) {
    return Timestamp(d.days_since_epoch() * 86400 + hour * 3600 + minute * 60 + second);
}

Timestamp Timestamp::parse(std::string_view iso) {
    if (iso.size() == 10) {
        return from_date(Date::parse(iso));
    }
    if (iso.size() == 20 && iso[10] == 'T' && iso[19] == 'Z' && iso[13] == ':' && iso[16] == ':' &&
        all_digits(iso.substr(11, 2)) && all_digits(iso.substr(14, 2)) &&
        all_digits(iso.substr(17, 2))) {
        const Date d = Date::parse(iso.substr(0, 10));
        const int h = to_int(iso.substr(11, 2));
        const int m = to_int(iso.substr(14, 2));
        const int s = to_int(iso.substr(17, 2));
        if (h > 23 || m > 59 || s > 60) {
            throw ParseError("time of day out of range in '" + std::string(iso) + "'");
        }
        return from_date(d, h, m, s);
    }
    throw ParseError("expected ISO timestamp YYYY-MM-DDTHH:MM:SSZ, got '" + std::string(iso) + "'");
}

Date Timestamp::date() const {
    std::int64_t days = seconds_ / 86400;
    if (seconds_ < 0 && seconds_ % 86400 != 0) --days;
    return Date(days);
}

std::string Timestamp::to_string() const {
    const Date d = date();
    std::int64_t rem = seconds_ - d.days_since_epoch() * 86400;
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%sT%02d:%02d:%02dZ", d.to_string().c_str(), int(rem / 3600),
                  int((rem / 60) % 60), int(rem % 60));
    return buf;
}

}  // namespace skygeo
