#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "yelpstream/analytics.hpp"
#include "yelpstream/records.hpp"
#include "yelpstream/regionmap.hpp"

namespace yelpstream::testsupport {

// Naive single-pass recomputation of the three analyses, kept deliberately
// independent of the engine: plain std::map aggregation, its own
// tokenizer/scorer and its own join. Only record parsing and the loaded
// mapper/lexicon *contents* are shared with the implementation under test.
struct OracleCounts {
    std::uint64_t users = 0;
    std::uint64_t reviews = 0;
    std::uint64_t tips = 0;
    std::uint64_t businesses = 0;
    std::uint64_t checkins = 0;
    std::uint64_t checkin_timestamps = 0;
};

std::vector<YearlyFeatureCounts> oracle_features(const std::vector<UserRecord>& users,
                                                 const std::vector<ReviewRecord>& reviews,
                                                 const std::vector<TipRecord>& tips,
                                                 const std::vector<CheckinRecord>& checkins);

SentimentResult oracle_sentiment(const std::vector<TipRecord>& tips,
                                 const std::vector<BusinessRecord>& businesses,
                                 const std::map<std::string, int>& lexicon_entries,
                                 const std::map<std::string, Region>& mapper_entries,
                                 UnknownPolicy policy);

StarResult oracle_stars(const std::vector<ReviewRecord>& reviews,
                        const std::vector<BusinessRecord>& businesses,
                        const std::map<std::string, Region>& mapper_entries,
                        UnknownPolicy policy);

// Re-reads a fixture directory with its own line loop, skipping lines that
// fail to parse, and returns the parsed records per kind.
struct ParsedDataset {
    std::vector<BusinessRecord> businesses;
    std::vector<ReviewRecord> reviews;
    std::vector<UserRecord> users;
    std::vector<TipRecord> tips;
    std::vector<CheckinRecord> checkins;
    OracleCounts counts;
};

ParsedDataset oracle_read_dataset(const std::filesystem::path& dir);

// Independent word-by-word scorer (loop + dictionary lookups).
int oracle_polarity_sum(const std::map<std::string, int>& lexicon_entries,
                        const std::string& text);

}  // namespace yelpstream::testsupport
