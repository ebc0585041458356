#include "yelpstream/pipeline.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <set>
#include <sstream>

#include "yelpstream/engine.hpp"
#include "yelpstream/errors.hpp"
#include "yelpstream/report.hpp"
#include "yelpstream/sentiment.hpp"

namespace yelpstream {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string_view to_string(Subcommand cmd) {
    switch (cmd) {
        case Subcommand::summarize: return "summarize";
        case Subcommand::features: return "features";
        case Subcommand::sentiment: return "sentiment";
        case Subcommand::stars: return "stars";
        case Subcommand::all: return "all";
    }
    return "?";
}

std::optional<Subcommand> subcommand_from_string(std::string_view name) {
    for (auto cmd : {Subcommand::summarize, Subcommand::features, Subcommand::sentiment,
                     Subcommand::stars, Subcommand::all}) {
        if (to_string(cmd) == name) return cmd;
    }
    return std::nullopt;
}

std::optional<fs::path> find_dataset_file(const fs::path& dir, RecordKind kind) {
    std::vector<std::string> stems;
    switch (kind) {
        case RecordKind::business: stems = {"business"}; break;
        case RecordKind::review: stems = {"review"}; break;
        case RecordKind::user: stems = {"user"}; break;
        case RecordKind::tip: stems = {"tip", "tips"}; break;
        case RecordKind::checkin: stems = {"checkin", "checkins", "check-in"}; break;
    }
    for (const auto& stem : stems) {
        for (const auto& name :
             {stem + ".json", stem + ".json.gz", "yelp_academic_dataset_" + stem + ".json",
              "yelp_academic_dataset_" + stem + ".json.gz"}) {
            fs::path candidate = dir / name;
            std::error_code ec;
            if (fs::is_regular_file(candidate, ec)) return candidate;
        }
    }
    return std::nullopt;
}

namespace {

struct ErrorEntry {
    std::string file;
    std::uint64_t line = 0;
    std::string reason;
};

class Stopwatch {
  public:
    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// One parallel parse pass over a dataset file. parse_fn(line) -> Parsed<T>;
// add_fn(worker, line_no, record) must be safe for concurrent calls with
// distinct worker indices.
template <class ParseFn, class AddFn>
IngestStats parse_pass(const fs::path& path, RecordKind kind, unsigned workers,
                       ParseFn&& parse_fn, AddFn&& add_fn,
                       std::vector<ErrorEntry>& errors_out) {
    struct WorkerState {
        std::uint64_t ok = 0;
        std::uint64_t malformed = 0;
        std::vector<ErrorEntry> errors;
    };
    std::vector<WorkerState> states(workers);
    std::string file_name = path.string();

    StreamStats stream = process_file_lines(
        path, workers, [&](unsigned worker, std::uint64_t line_no, std::string_view line) {
            auto parsed = parse_fn(line);
            if (ok(parsed)) {
                ++states[worker].ok;
                add_fn(worker, line_no, std::move(std::get<0>(parsed)));
            } else {
                ++states[worker].malformed;
                states[worker].errors.push_back(
                    ErrorEntry{file_name, line_no, error(parsed).reason});
            }
        });

    IngestStats stats;
    stats.file = file_name;
    stats.kind = kind;
    stats.lines_read = stream.lines_read;
    stats.bytes_read = stream.bytes_read;
    stats.wall_seconds = stream.wall_seconds;
    std::vector<ErrorEntry> errors;
    for (auto& state : states) {
        stats.records_ok += state.ok;
        stats.records_malformed += state.malformed;
        errors.insert(errors.end(), std::make_move_iterator(state.errors.begin()),
                      std::make_move_iterator(state.errors.end()));
    }
    std::sort(errors.begin(), errors.end(),
              [](const ErrorEntry& a, const ErrorEntry& b) { return a.line < b.line; });
    errors_out.insert(errors_out.end(), std::make_move_iterator(errors.begin()),
                      std::make_move_iterator(errors.end()));
    return stats;
}

struct PipelinePlan {
    bool needs_business = false;
    bool needs_review = false;
    bool needs_user = false;
    bool needs_tip = false;
    bool needs_checkin = false;
    bool run_features = false;
    bool run_sentiment = false;
    bool run_stars = false;
    bool run_summarize = false;
};

PipelinePlan plan_for(Subcommand cmd) {
    PipelinePlan plan;
    switch (cmd) {
        case Subcommand::summarize:
            plan.run_summarize = true;
            plan.needs_business = plan.needs_review = plan.needs_user = plan.needs_tip =
                plan.needs_checkin = true;
            break;
        case Subcommand::features:
            plan.run_features = true;
            plan.needs_user = plan.needs_review = plan.needs_tip = plan.needs_checkin = true;
            break;
        case Subcommand::sentiment:
            plan.run_sentiment = true;
            plan.needs_business = plan.needs_tip = true;
            break;
        case Subcommand::stars:
            plan.run_stars = true;
            plan.needs_business = plan.needs_review = true;
            break;
        case Subcommand::all:
            plan.run_features = plan.run_sentiment = plan.run_stars = true;
            plan.needs_business = plan.needs_review = plan.needs_user = plan.needs_tip =
                plan.needs_checkin = true;
            break;
    }
    return plan;
}

std::string format_seconds(double seconds) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", seconds);
    return buf;
}

bool needs_kind(const PipelinePlan& plan, RecordKind kind) {
    switch (kind) {
        case RecordKind::business: return plan.needs_business;
        case RecordKind::review: return plan.needs_review;
        case RecordKind::user: return plan.needs_user;
        case RecordKind::tip: return plan.needs_tip;
        case RecordKind::checkin: return plan.needs_checkin;
    }
    return false;
}

}  // namespace

std::string to_json(const RunReport& report) {
    ordered_json j;
    j["subcommand"] = report.subcommand;
    j["workers"] = report.workers;
    j["unknown_policy"] = report.unknown_policy;

    ordered_json stages = ordered_json::object();
    for (const auto& stage : report.stages) stages[stage.name] = stage.seconds;
    stages["total"] = report.total_seconds;
    j["stages_seconds"] = stages;

    ordered_json ingest = ordered_json::array();
    for (const auto& pass : report.ingest) {
        ingest.push_back({{"stage", pass.stage},
                          {"file", pass.stats.file},
                          {"kind", std::string(to_string(pass.stats.kind))},
                          {"lines_read", pass.stats.lines_read},
                          {"records_ok", pass.stats.records_ok},
                          {"records_malformed", pass.stats.records_malformed},
                          {"bytes_read", pass.stats.bytes_read},
                          {"seconds", pass.stats.wall_seconds}});
    }
    j["ingest"] = ingest;

    j["counts"] = {{"businesses", report.businesses},
                   {"users", report.users},
                   {"reviews", report.reviews},
                   {"tips", report.tips},
                   {"checkins", report.checkins},
                   {"checkin_timestamps", report.checkin_timestamps},
                   {"records_malformed", report.records_malformed}};

    auto geo = [](const GeoAnalysisReport& g) {
        return ordered_json{{"rows", g.rows},
                            {"records_aggregated", g.records_aggregated},
                            {"join_misses", g.join_misses},
                            {"unknown_region_drops", g.unknown_region_drops}};
    };
    if (report.sentiment) j["sentiment"] = geo(*report.sentiment);
    if (report.stars) j["stars"] = geo(*report.stars);

    if (!report.sentiment_breakdown_pct.empty()) {
        ordered_json breakdown = ordered_json::object();
        for (const auto& [label, pct] : report.sentiment_breakdown_pct) breakdown[label] = pct;
        j["sentiment_breakdown_pct"] = breakdown;
    }

    if (!report.unknown_codes.empty()) {
        ordered_json codes = ordered_json::object();
        for (const auto& [code, count] : report.unknown_codes) codes[code] = count;
        j["unknown_region_codes"] = codes;
    }

    ordered_json outputs = ordered_json::object();
    for (const auto& out : report.outputs) {
        outputs[out.name] = {{"path", out.path}, {"rows", out.rows}, {"bytes", out.bytes}};
    }
    j["outputs"] = outputs;
    return j.dump(2);
}

std::string to_text(const RunReport& report) {
    std::ostringstream out;
    out << "run: " << report.subcommand << " (workers=" << report.workers
        << ", unknown-policy=" << report.unknown_policy << ")\n";
    out << "records: businesses=" << report.businesses << " users=" << report.users
        << " reviews=" << report.reviews << " tips=" << report.tips
        << " checkins=" << report.checkins << " (timestamps=" << report.checkin_timestamps
        << ") malformed=" << report.records_malformed << "\n";
    for (const auto& stage : report.stages) {
        out << "stage " << stage.name << ": " << format_seconds(stage.seconds) << " s\n";
    }
    if (report.sentiment) {
        out << "sentiment: rows=" << report.sentiment->rows
            << " tips_aggregated=" << report.sentiment->records_aggregated
            << " join_misses=" << report.sentiment->join_misses
            << " unknown_drops=" << report.sentiment->unknown_region_drops << "\n";
    }
    if (!report.sentiment_breakdown_pct.empty()) {
        out << "sentiment breakdown:";
        for (const auto& [label, pct] : report.sentiment_breakdown_pct) {
            char buf[40];
            std::snprintf(buf, sizeof(buf), " %s=%.2f%%", label.c_str(), pct);
            out << buf;
        }
        out << "\n";
    }
    if (report.stars) {
        out << "stars: rows=" << report.stars->rows
            << " reviews_aggregated=" << report.stars->records_aggregated
            << " join_misses=" << report.stars->join_misses
            << " unknown_drops=" << report.stars->unknown_region_drops << "\n";
    }
    for (const auto& file : report.outputs) {
        out << "wrote " << file.path << " (" << file.rows << " rows, " << file.bytes
            << " bytes)\n";
    }
    out << "total: " << format_seconds(report.total_seconds) << " s\n";
    return out.str();
}

RunOutcome run(Subcommand cmd, const RunConfig& config, std::ostream* diagnostics) {
    RunOutcome outcome;
    RunReport& report = outcome.report;
    report.subcommand = std::string(to_string(cmd));
    report.workers = config.workers;
    report.unknown_policy = std::string(to_string(config.unknown_policy));

    auto fail = [&](const std::string& message) -> RunOutcome& {
        if (diagnostics) *diagnostics << "error: " << message << "\n";
        outcome.exit_code = 1;
        return outcome;
    };

    // Config validation happens before any work starts.
    if (config.workers < 1) return fail("workers must be >= 1");
    if (config.null_marker.find(',') != std::string::npos) {
        return fail("null marker must not contain the CSV delimiter");
    }
    std::error_code ec;
    if (!fs::is_directory(config.dataset_dir, ec)) {
        return fail("dataset directory not found: " + config.dataset_dir.string());
    }

    PipelinePlan plan = plan_for(cmd);
    std::map<RecordKind, fs::path> files;
    for (RecordKind kind : kAllRecordKinds) {
        if (!needs_kind(plan, kind)) continue;
        auto path = find_dataset_file(config.dataset_dir, kind);
        if (!path) {
            return fail(std::string("no ") + std::string(to_string(kind)) +
                        " file found under " + config.dataset_dir.string() +
                        " (tried <kind>.json[.gz] and yelp_academic_dataset_<kind>.json[.gz])");
        }
        files[kind] = *path;
    }

    RegionMapper mapper;
    Lexicon lexicon;
    try {
        if (plan.run_sentiment || plan.run_stars) {
            mapper = config.mapper_path.empty() ? RegionMapper::bundled()
                                                : RegionMapper::load(config.mapper_path);
        }
        if (plan.run_sentiment) {
            lexicon = config.lexicon_path.empty() ? Lexicon::bundled()
                                                  : Lexicon::load(config.lexicon_path);
        }
    } catch (const std::exception& e) {
        return fail(e.what());
    }

    fs::create_directories(config.output_dir, ec);
    if (ec) return fail("cannot create output directory: " + config.output_dir.string());
    fs::path error_log_path =
        config.error_log.empty() ? config.output_dir / "errors.ndjson" : config.error_log;

    Stopwatch total_clock;
    std::vector<ErrorEntry> errors;
    const unsigned workers = config.workers;

    // `all` streams the review and tip files once per analysis; only the
    // first pass over a file feeds the error sidecar so entries are not
    // duplicated.
    std::set<std::string> error_logged_files;
    std::vector<ErrorEntry> error_scratch;
    auto error_sink = [&](const fs::path& path) -> std::vector<ErrorEntry>& {
        if (error_logged_files.insert(path.string()).second) return errors;
        error_scratch.clear();
        return error_scratch;
    };

    try {
        // --- ingestion + aggregation passes -----------------------------
        BusinessIndex index;
        if (plan.run_sentiment || plan.run_stars) {
            Stopwatch clock;
            std::vector<BusinessIndex> partials(workers);
            IngestStats stats = parse_pass(
                files[RecordKind::business], RecordKind::business, workers,
                [](std::string_view line) { return parse_business(line); },
                [&](unsigned worker, std::uint64_t line_no, BusinessRecord&& record) {
                    partials[worker].add(record, line_no);
                },
                error_sink(files[RecordKind::business]));
            for (auto& partial : partials) index.merge(std::move(partial));
            report.businesses = stats.records_ok;
            report.ingest.push_back(PassIngest{"index_build", stats});
            report.stages.push_back(StageTime{"index_build", clock.elapsed()});
        }

        if (plan.run_features) {
            Stopwatch clock;
            std::vector<FeaturePartial> partials(workers);
            IngestStats user_stats = parse_pass(
                files[RecordKind::user], RecordKind::user, workers,
                [](std::string_view line) { return parse_user(line); },
                [&](unsigned worker, std::uint64_t, UserRecord&& record) {
                    partials[worker].add(record);
                },
                error_sink(files[RecordKind::user]));
            IngestStats review_stats = parse_pass(
                files[RecordKind::review], RecordKind::review, workers,
                [](std::string_view line) { return parse_review(line); },
                [&](unsigned worker, std::uint64_t, ReviewRecord&& record) {
                    partials[worker].add(record);
                },
                error_sink(files[RecordKind::review]));
            IngestStats tip_stats = parse_pass(
                files[RecordKind::tip], RecordKind::tip, workers,
                [](std::string_view line) { return parse_tip(line); },
                [&](unsigned worker, std::uint64_t, TipRecord&& record) {
                    partials[worker].add(record);
                },
                error_sink(files[RecordKind::tip]));
            IngestStats checkin_stats = parse_pass(
                files[RecordKind::checkin], RecordKind::checkin, workers,
                [](std::string_view line) { return parse_checkin(line); },
                [&](unsigned worker, std::uint64_t, CheckinRecord&& record) {
                    partials[worker].add(record);
                },
                error_sink(files[RecordKind::checkin]));

            FeaturePartial merged;
            for (const auto& partial : partials) merged.merge(partial);
            std::vector<YearlyFeatureCounts> rows = finalize_features(merged);

            report.users = user_stats.records_ok;
            report.reviews = review_stats.records_ok;
            report.tips = tip_stats.records_ok;
            report.checkins = checkin_stats.records_ok;
            report.checkin_timestamps = merged.checkin_timestamps_seen;
            for (auto& stats : {user_stats, review_stats, tip_stats, checkin_stats}) {
                report.ingest.push_back(PassIngest{"features", stats});
            }
            report.stages.push_back(StageTime{"features", clock.elapsed()});

            Stopwatch emit_clock;
            fs::path csv_path = config.output_dir / "features.csv";
            std::uint64_t bytes =
                write_table(rows, features_csv_spec(config.null_marker), csv_path);
            report.outputs.push_back(
                OutputFile{"features_csv", csv_path.string(), rows.size(), bytes});

            auto series = emit_chart_series(rows);
            fs::path series_path = config.output_dir / "features_series.csv";
            bytes = write_table(series, chart_series_csv_spec(), series_path);
            report.outputs.push_back(
                OutputFile{"features_series_csv", series_path.string(), series.size(), bytes});
            report.stages.push_back(StageTime{"features_emit", emit_clock.elapsed()});
        }

        if (plan.run_sentiment) {
            Stopwatch clock;
            std::vector<SentimentPartial> partials(workers);
            IngestStats stats = parse_pass(
                files[RecordKind::tip], RecordKind::tip, workers,
                [](std::string_view line) { return parse_tip(line); },
                [&](unsigned worker, std::uint64_t, TipRecord&& record) {
                    partials[worker].add(record, index, lexicon);
                },
                error_sink(files[RecordKind::tip]));
            SentimentPartial merged;
            for (const auto& partial : partials) merged.merge(partial);
            SentimentResult result = finalize_sentiment(merged, mapper, config.unknown_policy);

            report.tips = stats.records_ok;
            report.ingest.push_back(PassIngest{"sentiment", stats});
            GeoAnalysisReport geo;
            geo.rows = result.rows.size();
            for (const auto& row : result.rows) geo.records_aggregated += row.count;
            geo.join_misses = result.join_misses;
            geo.unknown_region_drops = result.unknown_region_drops;
            report.sentiment = geo;
            for (const auto& [code, count] : result.unknown_codes) {
                report.unknown_codes[code] += count;
            }
            auto breakdown = sentiment_breakdown(result.rows);
            for (const auto& [label, pct] : breakdown) {
                report.sentiment_breakdown_pct[std::string(to_string(label))] = pct;
            }
            report.stages.push_back(StageTime{"sentiment", clock.elapsed()});

            Stopwatch emit_clock;
            fs::path csv_path = config.output_dir / "sentiment.csv";
            std::uint64_t bytes = write_table(result.rows, sentiment_csv_spec(), csv_path);
            report.outputs.push_back(
                OutputFile{"sentiment_csv", csv_path.string(), result.rows.size(), bytes});
            report.stages.push_back(StageTime{"sentiment_emit", emit_clock.elapsed()});
        }

        if (plan.run_stars) {
            Stopwatch clock;
            std::vector<StarPartial> partials(workers);
            IngestStats stats = parse_pass(
                files[RecordKind::review], RecordKind::review, workers,
                [](std::string_view line) { return parse_review(line); },
                [&](unsigned worker, std::uint64_t, ReviewRecord&& record) {
                    partials[worker].add(record, index);
                },
                error_sink(files[RecordKind::review]));
            StarPartial merged;
            for (const auto& partial : partials) merged.merge(partial);
            StarResult result = finalize_stars(merged, mapper, config.unknown_policy);

            report.reviews = stats.records_ok;
            report.ingest.push_back(PassIngest{"stars", stats});
            GeoAnalysisReport geo;
            geo.rows = result.rows.size();
            for (const auto& row : result.rows) geo.records_aggregated += row.count;
            geo.join_misses = result.join_misses;
            geo.unknown_region_drops = result.unknown_region_drops;
            report.stars = geo;
            for (const auto& [code, count] : result.unknown_codes) {
                report.unknown_codes[code] += count;
            }
            report.stages.push_back(StageTime{"stars", clock.elapsed()});

            Stopwatch emit_clock;
            fs::path csv_path = config.output_dir / "stars.csv";
            std::uint64_t bytes = write_table(result.rows, stars_csv_spec(), csv_path);
            report.outputs.push_back(
                OutputFile{"stars_csv", csv_path.string(), result.rows.size(), bytes});
            report.stages.push_back(StageTime{"stars_emit", emit_clock.elapsed()});
        }

        if (plan.run_summarize) {
            Stopwatch clock;
            std::vector<IngestStats> all_stats;
            for (RecordKind kind : kAllRecordKinds) {
                std::vector<std::uint64_t> checkin_ts(workers, 0);
                IngestStats stats = parse_pass(
                    files[kind], kind, workers,
                    [kind](std::string_view line) { return parse_record(kind, line); },
                    [&](unsigned worker, std::uint64_t, Record&& record) {
                        if (const auto* checkin = std::get_if<CheckinRecord>(&record)) {
                            checkin_ts[worker] += checkin->timestamps.size();
                        }
                    },
                    error_sink(files[kind]));
                for (std::uint64_t n : checkin_ts) report.checkin_timestamps += n;
                all_stats.push_back(stats);
                report.ingest.push_back(PassIngest{"summarize", stats});
            }
            DatasetSummary summary = summarize(all_stats);
            report.businesses = summary.businesses;
            report.reviews = summary.reviews;
            report.users = summary.users;
            report.tips = summary.tips;
            report.checkins = summary.checkins;
            report.stages.push_back(StageTime{"summarize", clock.elapsed()});

            Stopwatch emit_clock;
            std::vector<CsvRow> rows;
            for (const auto& stats : all_stats) {
                rows.push_back(CsvRow{std::string(to_string(stats.kind)),
                                      std::to_string(stats.records_ok),
                                      std::to_string(stats.lines_read),
                                      std::to_string(stats.records_malformed),
                                      std::to_string(stats.bytes_read),
                                      format_seconds(stats.wall_seconds)});
            }
            fs::path csv_path = config.output_dir / "summary.csv";
            std::ofstream out(csv_path, std::ios::binary);
            if (!out) throw IoError("cannot write file: " + csv_path.string());
            std::uint64_t bytes = write_csv(out, summary_csv_spec(), rows);
            report.outputs.push_back(
                OutputFile{"summary_csv", csv_path.string(), rows.size(), bytes});
            report.stages.push_back(StageTime{"summarize_emit", emit_clock.elapsed()});
        }

        // --- error sidecar + run report ----------------------------------
        {
            std::ofstream error_out(error_log_path, std::ios::binary);
            if (!error_out) throw IoError("cannot write error log: " + error_log_path.string());
            for (const auto& entry : errors) {
                ordered_json j{{"file", entry.file}, {"line", entry.line}, {"reason", entry.reason}};
                error_out << j.dump() << "\n";
            }
        }
        std::set<std::string> counted_files;
        for (const auto& pass : report.ingest) {
            if (counted_files.insert(pass.stats.file).second) {
                report.records_malformed += pass.stats.records_malformed;
            }
        }

        report.total_seconds = total_clock.elapsed();
        fs::path report_path = config.output_dir / "run_report.json";
        std::ofstream report_out(report_path, std::ios::binary);
        if (!report_out) throw IoError("cannot write run report: " + report_path.string());
        report_out << to_json(report) << "\n";
    } catch (const std::exception& e) {
        return fail(e.what());
    }

    return outcome;
}

}  // namespace yelpstream
