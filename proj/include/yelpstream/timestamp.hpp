#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace yelpstream {

// Calendar timestamp at second resolution, no timezone. Dataset dates are
// local times in "YYYY-MM-DD HH:MM:SS" form; a bare "YYYY-MM-DD" reads as
// midnight of that day.
struct Timestamp {
    int year = 0;
    int month = 1;
    int day = 1;
    int hour = 0;
    int minute = 0;
    int second = 0;

    friend auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

// A calendar day, also used for month buckets (day pinned to 1).
struct Date {
    int year = 0;
    int month = 1;
    int day = 1;

    friend auto operator<=>(const Date&, const Date&) = default;
};

bool is_valid_date(int year, int month, int day);

// Strict parse of "YYYY-MM-DD HH:MM:SS" or "YYYY-MM-DD"; rejects anything
// else, including out-of-range fields and impossible calendar days.
std::optional<Timestamp> parse_timestamp(std::string_view text);

std::string format_timestamp(const Timestamp& ts);
std::string format_date(const Date& d);

inline Date to_date(const Timestamp& ts) {
    return Date{ts.year, ts.month, ts.day};
}

}  // namespace yelpstream
