#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "yelpstream/pipeline.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Streaming analytics over Yelp-format NDJSON datasets: yearly feature "
        "performance, geo-temporal tip sentiment, and geo-temporal star ratings."};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();

    yelpstream::RunConfig config;
    std::string dataset_dir;
    std::string mapper_path;
    std::string lexicon_path;
    std::string output_dir = "out";
    std::string unknown_policy = "emit-as-unknown";
    std::string error_log;

    app.add_option("--dataset-dir", dataset_dir, "Directory holding the five NDJSON files")
        ->envname("YELPSTREAM_DATASET_DIR")
        ->required();
    app.add_option("--mapper", mapper_path,
                   "State-abbreviation mapper TSV (default: bundled mapper)")
        ->envname("YELPSTREAM_MAPPER");
    app.add_option("--lexicon", lexicon_path, "Sentiment lexicon TSV (default: bundled lexicon)")
        ->envname("YELPSTREAM_LEXICON");
    app.add_option("--out", output_dir, "Output directory (default: out)")
        ->envname("YELPSTREAM_OUT");
    app.add_option("--workers", config.workers, "Parser worker threads (default: 1)")
        ->envname("YELPSTREAM_WORKERS")
        ->check(CLI::PositiveNumber);
    app.add_option("--unknown-policy", unknown_policy,
                   "Unmapped state codes: emit-as-unknown | drop")
        ->envname("YELPSTREAM_UNKNOWN_POLICY")
        ->check(CLI::IsMember({"emit-as-unknown", "drop"}));
    app.add_option("--null-marker", config.null_marker,
                   "Marker for absent counts in features.csv (default: \\N)")
        ->envname("YELPSTREAM_NULL_MARKER");
    app.add_option("--error-log", error_log,
                   "Malformed-line sidecar path (default: <out>/errors.ndjson)")
        ->envname("YELPSTREAM_ERROR_LOG");

    auto* summarize = app.add_subcommand("summarize", "Count records per dataset file");
    auto* features = app.add_subcommand("features", "Yearly feature performance table");
    auto* sentiment =
        app.add_subcommand("sentiment", "Tip sentiment by country, state, day and label");
    auto* stars = app.add_subcommand("stars", "Star ratings by country, state and month");
    auto* all = app.add_subcommand("all", "Run every analysis");

    CLI11_PARSE(app, argc, argv);

    config.dataset_dir = dataset_dir;
    config.mapper_path = mapper_path;
    config.lexicon_path = lexicon_path;
    config.output_dir = output_dir;
    config.unknown_policy = *yelpstream::unknown_policy_from_string(unknown_policy);
    config.error_log = error_log;

    yelpstream::Subcommand cmd = yelpstream::Subcommand::all;
    if (summarize->parsed()) cmd = yelpstream::Subcommand::summarize;
    if (features->parsed()) cmd = yelpstream::Subcommand::features;
    if (sentiment->parsed()) cmd = yelpstream::Subcommand::sentiment;
    if (stars->parsed()) cmd = yelpstream::Subcommand::stars;
    if (all->parsed()) cmd = yelpstream::Subcommand::all;

    yelpstream::RunOutcome outcome = yelpstream::run(cmd, config, &std::cerr);
    if (outcome.exit_code == 0) {
        std::cout << yelpstream::to_text(outcome.report);
    }
    return outcome.exit_code;
}
