#include "yelpstream/records.hpp"

#include <nlohmann/json.hpp>

#include <chrono>

#include "yelpstream/line_reader.hpp"

namespace yelpstream {

using json = nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
    size_t b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

ParseError missing_key(const char* key) {
    return ParseError{std::string("missing key: ") + key};
}

ParseError bad_type(const char* key) {
    return ParseError{std::string("expected string for key: ") + key};
}

// Required non-empty string field.
bool get_key(const json& j, const char* key, std::string& out, ParseError& err) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) {
        err = missing_key(key);
        return false;
    }
    if (!it->is_string()) {
        err = bad_type(key);
        return false;
    }
    out = it->get<std::string>();
    if (out.empty()) {
        err = ParseError{std::string("empty key: ") + key};
        return false;
    }
    return true;
}

// Optional string field; missing or null reads as empty.
bool get_text(const json& j, const char* key, std::string& out, ParseError& err) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) {
        out.clear();
        return true;
    }
    if (!it->is_string()) {
        err = bad_type(key);
        return false;
    }
    out = it->get<std::string>();
    return true;
}

bool get_timestamp(const json& j, const char* key, Timestamp& out, ParseError& err) {
    std::string raw;
    if (!get_key(j, key, raw, err)) return false;
    auto ts = parse_timestamp(raw);
    if (!ts) {
        err = ParseError{"bad timestamp: '" + raw + "'"};
        return false;
    }
    out = *ts;
    return true;
}

std::optional<json> parse_json_line(std::string_view line, ParseError& err) {
    json j = json::parse(line.begin(), line.end(), nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) {
        err = ParseError{"invalid json"};
        return std::nullopt;
    }
    if (!j.is_object()) {
        err = ParseError{"not a json object"};
        return std::nullopt;
    }
    return j;
}

void append_json_string(std::string& out, std::string_view s) {
    out += json(s).dump();
}

}  // namespace

std::string_view to_string(RecordKind kind) {
    switch (kind) {
        case RecordKind::business: return "business";
        case RecordKind::review: return "review";
        case RecordKind::user: return "user";
        case RecordKind::tip: return "tip";
        case RecordKind::checkin: return "checkin";
    }
    return "?";
}

std::optional<RecordKind> record_kind_from_string(std::string_view name) {
    for (RecordKind kind : kAllRecordKinds) {
        if (to_string(kind) == name) return kind;
    }
    return std::nullopt;
}

RecordKind kind_of(const Record& record) {
    return static_cast<RecordKind>(record.index());
}

Parsed<BusinessRecord> parse_business(std::string_view line) {
    ParseError err;
    auto j = parse_json_line(line, err);
    if (!j) return err;

    BusinessRecord r;
    if (!get_key(*j, "business_id", r.business_id, err)) return err;
    if (!get_text(*j, "name", r.name, err)) return err;
    if (!get_text(*j, "state", r.state_abbrev, err)) return err;
    if (!get_text(*j, "city", r.city, err)) return err;

    if (auto it = j->find("stars"); it != j->end() && !it->is_null()) {
        if (!it->is_number()) return ParseError{"expected number for key: stars"};
        double stars = it->get<double>();
        double half_steps = stars * 2.0;
        if (stars < 1.0 || stars > 5.0 || half_steps != static_cast<long>(half_steps)) {
            return ParseError{"stars out of range: " + it->dump()};
        }
        r.stars = stars;
    }

    if (auto it = j->find("categories"); it != j->end() && !it->is_null()) {
        if (it->is_string()) {
            // Newer snapshots store categories as one comma-separated string.
            std::string_view all = it->get_ref<const std::string&>();
            size_t pos = 0;
            while (pos <= all.size()) {
                size_t comma = all.find(',', pos);
                if (comma == std::string_view::npos) comma = all.size();
                auto tag = trim(all.substr(pos, comma - pos));
                if (!tag.empty()) r.categories.emplace_back(tag);
                pos = comma + 1;
            }
        } else if (it->is_array()) {
            for (const auto& tag : *it) {
                if (!tag.is_string()) return ParseError{"non-string category entry"};
                auto t = trim(tag.get_ref<const std::string&>());
                if (!t.empty()) r.categories.emplace_back(t);
            }
        } else {
            return ParseError{"expected string or array for key: categories"};
        }
    }
    return r;
}

Parsed<ReviewRecord> parse_review(std::string_view line) {
    ParseError err;
    auto j = parse_json_line(line, err);
    if (!j) return err;

    ReviewRecord r;
    if (!get_key(*j, "review_id", r.review_id, err)) return err;
    if (!get_key(*j, "user_id", r.user_id, err)) return err;
    if (!get_key(*j, "business_id", r.business_id, err)) return err;
    if (!get_timestamp(*j, "date", r.date, err)) return err;
    if (!get_text(*j, "text", r.text, err)) return err;

    auto it = j->find("stars");
    if (it == j->end() || it->is_null()) return missing_key("stars");
    if (!it->is_number()) return ParseError{"expected number for key: stars"};
    // The dataset serializes review stars as 1.0 .. 5.0; only whole values
    // are valid.
    double stars = it->get<double>();
    int whole = static_cast<int>(stars);
    if (stars != whole || whole < 1 || whole > 5) {
        return ParseError{"stars out of range: " + it->dump()};
    }
    r.stars = whole;
    return r;
}

Parsed<std::set<int>> parse_elite_years(std::string_view field) {
    std::set<int> years;
    if (trim(field).empty()) return years;
    size_t pos = 0;
    while (pos <= field.size()) {
        size_t comma = field.find(',', pos);
        if (comma == std::string_view::npos) comma = field.size();
        auto tok = trim(field.substr(pos, comma - pos));
        if (tok.size() != 4) return ParseError{"bad elite year: '" + std::string(tok) + "'"};
        int year = 0;
        for (char c : tok) {
            if (c < '0' || c > '9') return ParseError{"bad elite year: '" + std::string(tok) + "'"};
            year = year * 10 + (c - '0');
        }
        if (year < 2004 || year > 2030) {
            return ParseError{"elite year out of range: " + std::to_string(year)};
        }
        years.insert(year);
        pos = comma + 1;
    }
    return years;
}

Parsed<UserRecord> parse_user(std::string_view line) {
    ParseError err;
    auto j = parse_json_line(line, err);
    if (!j) return err;

    UserRecord r;
    if (!get_key(*j, "user_id", r.user_id, err)) return err;
    if (!get_timestamp(*j, "yelping_since", r.yelping_since, err)) return err;

    std::string elite;
    if (!get_text(*j, "elite", elite, err)) return err;
    auto years = parse_elite_years(elite);
    if (!ok(years)) return error(years);
    r.elite_years = value(years);
    return r;
}

Parsed<TipRecord> parse_tip(std::string_view line) {
    ParseError err;
    auto j = parse_json_line(line, err);
    if (!j) return err;

    TipRecord r;
    if (!get_key(*j, "user_id", r.user_id, err)) return err;
    if (!get_key(*j, "business_id", r.business_id, err)) return err;
    if (!get_timestamp(*j, "date", r.date, err)) return err;
    if (!get_text(*j, "text", r.text, err)) return err;
    return r;
}

Parsed<CheckinRecord> parse_checkin(std::string_view line) {
    ParseError err;
    auto j = parse_json_line(line, err);
    if (!j) return err;

    CheckinRecord r;
    if (!get_key(*j, "business_id", r.business_id, err)) return err;

    std::string dates;
    if (!get_text(*j, "date", dates, err)) return err;
    if (trim(dates).empty()) return r;

    std::string_view all = dates;
    size_t pos = 0;
    while (pos <= all.size()) {
        size_t comma = all.find(',', pos);
        if (comma == std::string_view::npos) comma = all.size();
        auto tok = trim(all.substr(pos, comma - pos));
        auto ts = parse_timestamp(tok);
        if (!ts) return ParseError{"bad timestamp: '" + std::string(tok) + "'"};
        r.timestamps.push_back(*ts);
        pos = comma + 1;
    }
    return r;
}

Parsed<Record> parse_record(RecordKind kind, std::string_view line) {
    auto lift = [](auto parsed) -> Parsed<Record> {
        if (!ok(parsed)) return error(parsed);
        return Record{std::move(std::get<0>(parsed))};
    };
    switch (kind) {
        case RecordKind::business: return lift(parse_business(line));
        case RecordKind::review: return lift(parse_review(line));
        case RecordKind::user: return lift(parse_user(line));
        case RecordKind::tip: return lift(parse_tip(line));
        case RecordKind::checkin: return lift(parse_checkin(line));
    }
    return ParseError{"unknown record kind"};
}

std::string to_ndjson(const BusinessRecord& r) {
    std::string out = "{\"business_id\":";
    append_json_string(out, r.business_id);
    out += ",\"name\":";
    append_json_string(out, r.name);
    out += ",\"state\":";
    append_json_string(out, r.state_abbrev);
    out += ",\"city\":";
    append_json_string(out, r.city);
    out += ",\"stars\":";
    if (r.stars) {
        char buf[8];
        std::snprintf(buf, sizeof(buf), "%.1f", *r.stars);
        out += buf;
    } else {
        out += "null";
    }
    out += ",\"categories\":";
    std::string joined;
    for (const auto& tag : r.categories) {
        if (!joined.empty()) joined += ", ";
        joined += tag;
    }
    append_json_string(out, joined);
    out += "}";
    return out;
}

std::string to_ndjson(const ReviewRecord& r) {
    std::string out = "{\"review_id\":";
    append_json_string(out, r.review_id);
    out += ",\"user_id\":";
    append_json_string(out, r.user_id);
    out += ",\"business_id\":";
    append_json_string(out, r.business_id);
    out += ",\"stars\":" + std::to_string(r.stars) + ",\"date\":";
    append_json_string(out, format_timestamp(r.date));
    out += ",\"text\":";
    append_json_string(out, r.text);
    out += "}";
    return out;
}

std::string to_ndjson(const UserRecord& r) {
    std::string out = "{\"user_id\":";
    append_json_string(out, r.user_id);
    out += ",\"yelping_since\":";
    append_json_string(out, format_timestamp(r.yelping_since));
    out += ",\"elite\":";
    std::string joined;
    for (int year : r.elite_years) {
        if (!joined.empty()) joined += ",";
        joined += std::to_string(year);
    }
    append_json_string(out, joined);
    out += "}";
    return out;
}

std::string to_ndjson(const TipRecord& r) {
    std::string out = "{\"user_id\":";
    append_json_string(out, r.user_id);
    out += ",\"business_id\":";
    append_json_string(out, r.business_id);
    out += ",\"date\":";
    append_json_string(out, format_timestamp(r.date));
    out += ",\"text\":";
    append_json_string(out, r.text);
    out += "}";
    return out;
}

std::string to_ndjson(const CheckinRecord& r) {
    std::string out = "{\"business_id\":";
    append_json_string(out, r.business_id);
    out += ",\"date\":";
    std::string joined;
    for (const auto& ts : r.timestamps) {
        if (!joined.empty()) joined += ", ";
        joined += format_timestamp(ts);
    }
    append_json_string(out, joined);
    out += "}";
    return out;
}

std::string to_ndjson(const Record& r) {
    return std::visit([](const auto& rec) { return to_ndjson(rec); }, r);
}

DatasetSummary summarize(const std::vector<IngestStats>& stats) {
    DatasetSummary s;
    for (const auto& st : stats) {
        switch (st.kind) {
            case RecordKind::business: s.businesses += st.records_ok; break;
            case RecordKind::review: s.reviews += st.records_ok; break;
            case RecordKind::user: s.users += st.records_ok; break;
            case RecordKind::tip: s.tips += st.records_ok; break;
            case RecordKind::checkin: s.checkins += st.records_ok; break;
        }
        s.lines_read += st.lines_read;
        s.records_malformed += st.records_malformed;
        s.bytes_read += st.bytes_read;
        s.wall_seconds += st.wall_seconds;
    }
    return s;
}

class RecordStream::LineSource {
  public:
    explicit LineSource(const std::filesystem::path& path) : reader_(path) {}
    LineReader reader_;
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

RecordStream::RecordStream(std::filesystem::path path, RecordKind kind)
    : source_(std::make_shared<LineSource>(path)), kind_(kind) {
    stats_.file = path.string();
    stats_.kind = kind;
}

std::optional<Record> RecordStream::next() {
    if (done_) return std::nullopt;
    while (source_->reader_.next(line_)) {
        ++stats_.lines_read;
        auto parsed = parse_record(kind_, line_);
        if (ok(parsed)) {
            ++stats_.records_ok;
            return value(parsed);
        }
        ++stats_.records_malformed;
        if (on_error_) on_error_(stats_.lines_read, error(parsed));
    }
    done_ = true;
    stats_.bytes_read = source_->reader_.bytes_consumed();
    stats_.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - source_->start_)
            .count();
    return std::nullopt;
}

}  // namespace yelpstream
