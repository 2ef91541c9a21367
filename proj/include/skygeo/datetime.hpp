#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace skygeo {

/// Calendar date as days since 1970-01-01 (proleptic Gregorian).
class Date {
public:
    Date() = default;
    explicit Date(std::int64_t days_since_epoch) : days_(days_since_epoch) {}

    static Date from_ymd(int year, int month, int day);

    /// Parses "YYYY-MM-DD". Throws ParseError on anything else.
    static Date parse(std::string_view iso);

    std::int64_t days_since_epoch() const { return days_; }
    Date plus_days(std::int64_t n) const { return Date(days_ + n); }

    /// "YYYY-MM-DD"
    std::string to_string() const;

    auto operator<=>(const Date&) const = default;

private:
    std::int64_t days_ = 0;
};

/// Instant as seconds since 1970-01-01T00:00:00Z.
class Timestamp {
public:
    Timestamp() = default;
    explicit Timestamp(std::int64_t seconds_since_epoch) : seconds_(seconds_since_epoch) {}

    static Timestamp from_date(Date d, int hour = 0, int minute = 0, int second = 0);

    /// Parses "YYYY-MM-DDTHH:MM:SSZ" (also accepts a bare date, midnight UTC).
    static Timestamp parse(std::string_view iso);

    std::int64_t seconds_since_epoch() const { return seconds_; }
    Date date() const;

    /// "YYYY-MM-DDTHH:MM:SSZ"
    std::string to_string() const;

    auto operator<=>(const Timestamp&) const = default;

private:
    std::int64_t seconds_ = 0;
};

/// Inclusive date range an event is searched over.
struct EventTimeline {
    Date start;
    Date end;

    bool valid() const { return start <= end; }
    bool contains(Date d) const { return start <= d && d <= end; }
    bool overlaps(const EventTimeline& other) const {
        return start <= other.end && other.start <= end;
    }
    bool operator==(const EventTimeline&) const = default;
};

}  // namespace skygeo
