#include "yelpstream/timestamp.hpp"

#include <array>
#include <cstdio>

namespace yelpstream {

namespace {

bool is_leap(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
    static constexpr std::array<int, 13> kDays = {0, 31, 28, 31, 30, 31, 30,
                                                  31, 31, 30, 31, 30, 31};
    if (month == 2 && is_leap(year)) return 29;
    return kDays[static_cast<size_t>(month)];
}

// Parses exactly `n` ASCII digits starting at `pos`; -1 on any non-digit.
int read_digits(std::string_view s, size_t pos, size_t n) {
    int value = 0;
    for (size_t i = pos; i < pos + n; ++i) {
        char c = s[i];
        if (c < '0' || c > '9') return -1;
        value = value * 10 + (c - '0');
    }
    return value;
}

}  // namespace

bool is_valid_date(int year, int month, int day) {
    if (year < 1000 || year > 9999) return false;
    if (month < 1 || month > 12) return false;
    return day >= 1 && day <= days_in_month(year, month);
}

std::optional<Timestamp> parse_timestamp(std::string_view text) {
    if (text.size() != 10 && text.size() != 19) return std::nullopt;
    if (text[4] != '-' || text[7] != '-') return std::nullopt;

    Timestamp ts;
    ts.year = read_digits(text, 0, 4);
    ts.month = read_digits(text, 5, 2);
    ts.day = read_digits(text, 8, 2);
    if (ts.year < 0 || ts.month < 0 || ts.day < 0) return std::nullopt;
    if (!is_valid_date(ts.year, ts.month, ts.day)) return std::nullopt;

    if (text.size() == 19) {
        if (text[10] != ' ' || text[13] != ':' || text[16] != ':') return std::nullopt;
        ts.hour = read_digits(text, 11, 2);
        ts.minute = read_digits(text, 14, 2);
        ts.second = read_digits(text, 17, 2);
        if (ts.hour < 0 || ts.hour > 23) return std::nullopt;
        if (ts.minute < 0 || ts.minute > 59) return std::nullopt;
        if (ts.second < 0 || ts.second > 59) return std::nullopt;
    }
    return ts;
}

std::string format_timestamp(const Timestamp& ts) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d %02d:%02d:%02d", ts.year,
                  ts.month, ts.day, ts.hour, ts.minute, ts.second);
    return std::string(buf);
}

std::string format_date(const Date& d) {
    char buf[11];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
    return std::string(buf);
}

}  // namespace yelpstream
