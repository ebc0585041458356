#include "yelpstream/report.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

#include "yelpstream/errors.hpp"

namespace yelpstream {

namespace {

constexpr const char* kMeasureNames[] = {"New Users", "Reviews", "Elite Users", "Tips",
                                         "Check-Ins"};

void validate(const CsvSpec& spec) {
    std::set<std::string> seen;
    for (const auto& name : spec.header) {
        if (!seen.insert(name).second) {
            throw std::invalid_argument("duplicate csv header name: " + name);
        }
    }
    if (spec.null_marker.find(spec.delimiter) != std::string::npos) {
        throw std::invalid_argument("csv null marker contains the delimiter");
    }
}

bool needs_quoting(const std::string& field, char delimiter) {
    return field.find_first_of({delimiter, '"', '\n', '\r'}) != std::string::npos;
}

void append_field(std::string& out, const std::string& field, char delimiter) {
    if (!needs_quoting(field, delimiter)) {
        out += field;
        return;
    }
    out += '"';
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
}

std::uint64_t write_file(const std::filesystem::path& path, const CsvSpec& spec,
                         const std::vector<CsvRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path.string());
    std::uint64_t bytes = write_csv(out, spec, rows);
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
    return bytes;
}

template <class Row>
std::vector<CsvRow> to_rows(const std::vector<Row>& rows) {
    std::vector<CsvRow> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(to_csv_row(row));
    return out;
}

}  // namespace

CsvSpec features_csv_spec(std::string null_marker) {
    return CsvSpec{{"year", "new_users", "reviews", "elite_users", "tips", "checkins"},
                   std::move(null_marker), ','};
}

CsvSpec sentiment_csv_spec() {
    return CsvSpec{{"country", "state", "date", "sentiment", "count"}, "\\N", ','};
}

CsvSpec stars_csv_spec() {
    return CsvSpec{{"country", "state", "month", "stars", "count"}, "\\N", ','};
}

CsvSpec chart_series_csv_spec() {
    return CsvSpec{{"measure", "year", "value"}, "\\N", ','};
}

CsvSpec summary_csv_spec() {
    return CsvSpec{{"kind", "records", "lines_read", "records_malformed", "bytes_read",
                    "seconds"},
                   "\\N", ','};
}

std::uint64_t write_csv(std::ostream& os, const CsvSpec& spec,
                        const std::vector<CsvRow>& rows) {
    validate(spec);
    std::string line;
    std::uint64_t bytes = 0;

    auto flush_line = [&] {
        line += '\n';
        os.write(line.data(), static_cast<std::streamsize>(line.size()));
        bytes += line.size();
        line.clear();
    };

    for (size_t i = 0; i < spec.header.size(); ++i) {
        if (i > 0) line += spec.delimiter;
        append_field(line, spec.header[i], spec.delimiter);
    }
    flush_line();

    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i > 0) line += spec.delimiter;
            if (row[i]) {
                append_field(line, *row[i], spec.delimiter);
            } else {
                line += spec.null_marker;
            }
        }
        flush_line();
    }
    return bytes;
}

CsvRow to_csv_row(const YearlyFeatureCounts& row) {
    auto cell = [](const std::optional<std::uint64_t>& v) -> CsvCell {
        if (!v) return std::nullopt;
        return std::to_string(*v);
    };
    return CsvRow{std::to_string(row.year), cell(row.new_users), cell(row.reviews),
                  cell(row.elite_users), cell(row.tips), cell(row.checkins)};
}

CsvRow to_csv_row(const SentimentRow& row) {
    return CsvRow{row.country, row.state, format_date(row.date),
                  std::string(to_string(row.label)), std::to_string(row.count)};
}

CsvRow to_csv_row(const StarRow& row) {
    return CsvRow{row.country, row.state, format_date(row.month), std::to_string(row.stars),
                  std::to_string(row.count)};
}

std::uint64_t write_table(const std::vector<YearlyFeatureCounts>& rows, const CsvSpec& spec,
                          const std::filesystem::path& path) {
    return write_file(path, spec, to_rows(rows));
}

std::uint64_t write_table(const std::vector<SentimentRow>& rows, const CsvSpec& spec,
                          const std::filesystem::path& path) {
    return write_file(path, spec, to_rows(rows));
}

std::uint64_t write_table(const std::vector<StarRow>& rows, const CsvSpec& spec,
                          const std::filesystem::path& path) {
    return write_file(path, spec, to_rows(rows));
}

std::vector<ChartPoint> emit_chart_series(const std::vector<YearlyFeatureCounts>& rows) {
    auto cell_of = [](const YearlyFeatureCounts& row, size_t measure) {
        switch (measure) {
            case 0: return row.new_users;
            case 1: return row.reviews;
            case 2: return row.elite_users;
            case 3: return row.tips;
            default: return row.checkins;
        }
    };

    std::vector<ChartPoint> series;
    for (size_t measure = 0; measure < 5; ++measure) {
        for (const auto& row : rows) {
            if (auto v = cell_of(row, measure)) {
                series.push_back(ChartPoint{kMeasureNames[measure], row.year, *v});
            }
        }
    }
    return series;
}

std::uint64_t write_table(const std::vector<ChartPoint>& series, const CsvSpec& spec,
                          const std::filesystem::path& path) {
    std::vector<CsvRow> rows;
    rows.reserve(series.size());
    for (const auto& point : series) {
        rows.push_back(CsvRow{point.measure, std::to_string(point.year),
                              std::to_string(point.value)});
    }
    return write_file(path, spec, rows);
}

}  // namespace yelpstream
