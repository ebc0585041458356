#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "yelpstream/errors.hpp"
#include "yelpstream/timestamp.hpp"

namespace yelpstream {

enum class RecordKind { business, review, user, tip, checkin };

inline constexpr RecordKind kAllRecordKinds[] = {
    RecordKind::business, RecordKind::review, RecordKind::user,
    RecordKind::tip, RecordKind::checkin};

std::string_view to_string(RecordKind kind);
std::optional<RecordKind> record_kind_from_string(std::string_view name);

struct BusinessRecord {
    std::string business_id;
    std::string name;
    std::string state_abbrev;
    std::string city;
    std::optional<double> stars;  // average rating, {1.0, 1.5, ..., 5.0}
    std::vector<std::string> categories;

    friend bool operator==(const BusinessRecord&, const BusinessRecord&) = default;
};

struct ReviewRecord {
    std::string review_id;
    std::string user_id;
    std::string business_id;
    int stars = 0;  // 1..5
    Timestamp date;
    std::string text;

    friend bool operator==(const ReviewRecord&, const ReviewRecord&) = default;
};

struct UserRecord {
    std::string user_id;
    Timestamp yelping_since;
    std::set<int> elite_years;

    friend bool operator==(const UserRecord&, const UserRecord&) = default;
};

struct TipRecord {
    std::string user_id;
    std::string business_id;
    Timestamp date;
    std::string text;  // may be empty

    friend bool operator==(const TipRecord&, const TipRecord&) = default;
};

struct CheckinRecord {
    std::string business_id;
    std::vector<Timestamp> timestamps;  // expanded from the comma-separated field

    friend bool operator==(const CheckinRecord&, const CheckinRecord&) = default;
};

using Record =
    std::variant<BusinessRecord, ReviewRecord, UserRecord, TipRecord, CheckinRecord>;

RecordKind kind_of(const Record& record);

// Per-line parse outcome. Parse failures are values, not exceptions: a
// malformed line must never abort a multi-gigabyte stream.
template <typename T>
using Parsed = std::variant<T, ParseError>;

template <typename T>
bool ok(const Parsed<T>& p) {
    return std::holds_alternative<T>(p);
}

template <typename T>
const T& value(const Parsed<T>& p) {
    return std::get<T>(p);
}

template <typename T>
const ParseError& error(const Parsed<T>& p) {
    return std::get<ParseError>(p);
}

// One NDJSON row -> one validated record. Pure: same line, same result,
// any thread. Unknown JSON keys are ignored (dataset versions add fields).
Parsed<BusinessRecord> parse_business(std::string_view line);
Parsed<ReviewRecord> parse_review(std::string_view line);
Parsed<UserRecord> parse_user(std::string_view line);
Parsed<TipRecord> parse_tip(std::string_view line);
Parsed<CheckinRecord> parse_checkin(std::string_view line);

Parsed<Record> parse_record(RecordKind kind, std::string_view line);

// The user "elite" field: comma-separated 4-digit years, or empty. Years
// outside [2004, 2030] are rejected.
Parsed<std::set<int>> parse_elite_years(std::string_view field);

// Canonical single-line JSON form; parse_record(kind_of(r), to_ndjson(r))
// round-trips to an equal record.
std::string to_ndjson(const BusinessRecord& r);
std::string to_ndjson(const ReviewRecord& r);
std::string to_ndjson(const UserRecord& r);
std::string to_ndjson(const TipRecord& r);
std::string to_ndjson(const CheckinRecord& r);
std::string to_ndjson(const Record& r);

struct IngestStats {
    std::string file;
    RecordKind kind = RecordKind::business;
    std::uint64_t lines_read = 0;
    std::uint64_t records_ok = 0;
    std::uint64_t records_malformed = 0;
    std::uint64_t bytes_read = 0;
    double wall_seconds = 0.0;
};

struct DatasetSummary {
    std::uint64_t businesses = 0;
    std::uint64_t reviews = 0;
    std::uint64_t users = 0;
    std::uint64_t tips = 0;
    std::uint64_t checkins = 0;
    std::uint64_t lines_read = 0;
    std::uint64_t records_malformed = 0;
    std::uint64_t bytes_read = 0;
    double wall_seconds = 0.0;
};

// Folds per-file ingest stats into per-kind totals. Stats for the same
// kind (e.g. chunked ingestion) accumulate.
DatasetSummary summarize(const std::vector<IngestStats>& stats);

// Sequential record iterator over one NDJSON file. Malformed lines are
// counted (and reported through the error callback, if set), never thrown.
class RecordStream {
  public:
    using ErrorFn = std::function<void(std::uint64_t line_no, const ParseError&)>;

    RecordStream(std::filesystem::path path, RecordKind kind);  // throws IoError

    std::optional<Record> next();

    // Finalized once next() has returned nullopt.
    const IngestStats& stats() const { return stats_; }

    void set_error_fn(ErrorFn fn) { on_error_ = std::move(fn); }

  private:
    class LineSource;
    std::shared_ptr<LineSource> source_;
    RecordKind kind_;
    IngestStats stats_;
    ErrorFn on_error_;
    std::string line_;
    double start_seconds_ = 0.0;
    bool done_ = false;
};

}  // namespace yelpstream
