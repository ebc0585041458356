#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "yelpstream/analytics.hpp"
#include "yelpstream/records.hpp"
#include "yelpstream/regionmap.hpp"

namespace yelpstream {

enum class Subcommand { summarize, features, sentiment, stars, all };

std::string_view to_string(Subcommand cmd);
std::optional<Subcommand> subcommand_from_string(std::string_view name);

struct RunConfig {
    std::filesystem::path dataset_dir;
    std::filesystem::path mapper_path;   // empty -> bundled mapper
    std::filesystem::path lexicon_path;  // empty -> bundled lexicon
    std::filesystem::path output_dir = "out";
    unsigned workers = 1;
    UnknownPolicy unknown_policy = UnknownPolicy::emit_as_unknown;
    std::string null_marker = "\\N";
    std::filesystem::path error_log;  // empty -> <output_dir>/errors.ndjson
};

// Expected dataset file for a record kind, probing the common layouts
// (business.json, business.json.gz, yelp_academic_dataset_business.json, ...).
std::optional<std::filesystem::path> find_dataset_file(const std::filesystem::path& dir,
                                                       RecordKind kind);

struct StageTime {
    std::string name;
    double seconds = 0.0;
};

struct OutputFile {
    std::string name;
    std::string path;
    std::uint64_t rows = 0;
    std::uint64_t bytes = 0;
};

struct PassIngest {
    std::string stage;
    IngestStats stats;
};

struct GeoAnalysisReport {
    std::uint64_t rows = 0;
    std::uint64_t records_aggregated = 0;  // sum of row counts
    std::uint64_t join_misses = 0;
    std::uint64_t unknown_region_drops = 0;
};

struct RunReport {
    std::string subcommand;
    unsigned workers = 1;
    std::string unknown_policy;
    std::vector<StageTime> stages;
    std::vector<PassIngest> ingest;

    std::uint64_t businesses = 0;
    std::uint64_t users = 0;
    std::uint64_t reviews = 0;
    std::uint64_t tips = 0;
    std::uint64_t checkins = 0;
    std::uint64_t checkin_timestamps = 0;
    std::uint64_t records_malformed = 0;

    std::optional<GeoAnalysisReport> sentiment;
    std::optional<GeoAnalysisReport> stars;
    std::map<std::string, std::uint64_t> unknown_codes;
    std::map<std::string, double> sentiment_breakdown_pct;

    std::vector<OutputFile> outputs;
    double total_seconds = 0.0;
};

std::string to_json(const RunReport& report);
std::string to_text(const RunReport& report);

struct RunOutcome {
    int exit_code = 0;
    RunReport report;
};

// Executes the requested pipeline(s): validates the config up front, streams
// the needed dataset files with `workers` parsers, writes the output CSVs,
// the NDJSON error sidecar, and <output_dir>/run_report.json. Per-record
// failures are counted, never fatal; exit_code is 0 iff every requested
// output was written.
RunOutcome run(Subcommand cmd, const RunConfig& config, std::ostream* diagnostics = nullptr);

}  // namespace yelpstream
