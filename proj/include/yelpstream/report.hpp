#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "yelpstream/analytics.hpp"

namespace yelpstream {

// Output CSV shape: UTF-8, LF line endings, RFC 4180 quoting. The null
// marker renders absent counts (Hive-style "\N" by default).
struct CsvSpec {
    std::vector<std::string> header;
    std::string null_marker = "\\N";
    char delimiter = ',';
};

CsvSpec features_csv_spec(std::string null_marker = "\\N");
CsvSpec sentiment_csv_spec();
CsvSpec stars_csv_spec();
CsvSpec chart_series_csv_spec();
CsvSpec summary_csv_spec();

using CsvCell = std::optional<std::string>;
using CsvRow = std::vector<CsvCell>;

// Header plus rows; returns bytes written. Throws std::invalid_argument on
// a malformed spec (duplicate header names, delimiter inside null marker)
// and IoError on an unwritable path.
std::uint64_t write_csv(std::ostream& os, const CsvSpec& spec,
                        const std::vector<CsvRow>& rows);

std::uint64_t write_table(const std::vector<YearlyFeatureCounts>& rows, const CsvSpec& spec,
                          const std::filesystem::path& path);
std::uint64_t write_table(const std::vector<SentimentRow>& rows, const CsvSpec& spec,
                          const std::filesystem::path& path);
std::uint64_t write_table(const std::vector<StarRow>& rows, const CsvSpec& spec,
                          const std::filesystem::path& path);

CsvRow to_csv_row(const YearlyFeatureCounts& row);
CsvRow to_csv_row(const SentimentRow& row);
CsvRow to_csv_row(const StarRow& row);

// One point of a chart-ready long-format series.
struct ChartPoint {
    std::string measure;
    int year = 0;
    std::uint64_t value = 0;

    friend bool operator==(const ChartPoint&, const ChartPoint&) = default;
};

// Long-format series for the five feature trend lines: one triple per
// non-null cell, ordered by measure (column order) then year.
std::vector<ChartPoint> emit_chart_series(const std::vector<YearlyFeatureCounts>& rows);

std::uint64_t write_table(const std::vector<ChartPoint>& series, const CsvSpec& spec,
                          const std::filesystem::path& path);

}  // namespace yelpstream
