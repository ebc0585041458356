#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "yelpstream/records.hpp"
#include "yelpstream/regionmap.hpp"
#include "yelpstream/sentiment.hpp"
#include "yelpstream/timestamp.hpp"

namespace yelpstream {

// One output row of the yearly feature-performance analysis. Zero counts
// are absent (rendered as the null marker downstream).
struct YearlyFeatureCounts {
    int year = 0;
    std::optional<std::uint64_t> new_users;
    std::optional<std::uint64_t> reviews;
    std::optional<std::uint64_t> elite_users;
    std::optional<std::uint64_t> tips;
    std::optional<std::uint64_t> checkins;

    friend bool operator==(const YearlyFeatureCounts&, const YearlyFeatureCounts&) = default;
};

struct SentimentRow {
    std::string country;
    std::string state;
    Date date;
    SentimentLabel label = SentimentLabel::neutral;
    std::uint64_t count = 0;

    friend bool operator==(const SentimentRow&, const SentimentRow&) = default;
};

struct StarRow {
    std::string country;
    std::string state;
    Date month;  // first day of the YYYY-MM bucket
    int stars = 0;
    std::uint64_t count = 0;

    friend bool operator==(const StarRow&, const StarRow&) = default;
};

inline Date month_bucket(const Timestamp& ts) {
    return Date{ts.year, ts.month, 1};
}

// business_id -> state code lookup. When the same id appears on several
// input lines, the earliest line wins, keeping parallel ingestion
// order-independent.
class BusinessIndex {
  public:
    void add(const BusinessRecord& business, std::uint64_t line_no);
    void merge(BusinessIndex&& other);

    // nullptr for ids never seen (a join miss).
    const std::string* state_of(std::string_view business_id) const;

    std::size_t size() const { return entries_.size(); }

  private:
    struct Entry {
        std::string state_abbrev;
        std::uint64_t line_no = 0;
    };
    struct TransparentHash {
        using is_transparent = void;
        size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
    };
    std::unordered_map<std::string, Entry, TransparentHash, std::equal_to<>> entries_;
};

BusinessIndex build_business_index(std::span<const BusinessRecord> businesses);

// Keywise sum of two partial aggregates. Commutative and associative with
// the empty map as identity: the parallel merge contract.
template <class Map>
void merge_counts(Map& into, const Map& from) {
    for (const auto& [key, count] : from) into[key] += count;
}

// --- per-worker partial aggregates -------------------------------------

struct FeaturePartial {
    std::map<int, std::uint64_t> new_users;
    std::map<int, std::uint64_t> reviews;
    std::map<int, std::uint64_t> elite_users;
    std::map<int, std::uint64_t> tips;
    std::map<int, std::uint64_t> checkins;
    std::uint64_t users_seen = 0;
    std::uint64_t reviews_seen = 0;
    std::uint64_t tips_seen = 0;
    std::uint64_t checkin_records_seen = 0;
    std::uint64_t checkin_timestamps_seen = 0;

    void add(const UserRecord& user);
    void add(const ReviewRecord& review);
    void add(const TipRecord& tip);
    void add(const CheckinRecord& checkin);
    void merge(const FeaturePartial& other);
};

// One row per year, contiguous from the first to the last year observed
// across all five measures; zero counts become nullopt.
std::vector<YearlyFeatureCounts> finalize_features(const FeaturePartial& partial);

struct GeoDayLabelKey {
    std::string state_abbrev;
    Date day;
    SentimentLabel label = SentimentLabel::neutral;

    friend bool operator==(const GeoDayLabelKey&, const GeoDayLabelKey&) = default;
};

struct GeoMonthStarKey {
    std::string state_abbrev;
    Date month;
    int stars = 0;

    friend bool operator==(const GeoMonthStarKey&, const GeoMonthStarKey&) = default;
};

namespace detail {
inline size_t hash_mix(size_t seed, size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}
struct GeoKeyHash {
    size_t operator()(const GeoDayLabelKey& k) const {
        size_t h = std::hash<std::string>{}(k.state_abbrev);
        h = hash_mix(h, static_cast<size_t>(k.day.year * 10000 + k.day.month * 100 + k.day.day));
        return hash_mix(h, static_cast<size_t>(k.label));
    }
    size_t operator()(const GeoMonthStarKey& k) const {
        size_t h = std::hash<std::string>{}(k.state_abbrev);
        h = hash_mix(h, static_cast<size_t>(k.month.year * 10000 + k.month.month * 100));
        return hash_mix(h, static_cast<size_t>(k.stars));
    }
};
}  // namespace detail

struct SentimentPartial {
    std::unordered_map<GeoDayLabelKey, std::uint64_t, detail::GeoKeyHash> counts;
    std::uint64_t tips_seen = 0;
    std::uint64_t join_misses = 0;

    void add(const TipRecord& tip, const BusinessIndex& index, const Lexicon& lexicon);
    void merge(const SentimentPartial& other);
};

struct StarPartial {
    std::unordered_map<GeoMonthStarKey, std::uint64_t, detail::GeoKeyHash> counts;
    std::uint64_t reviews_seen = 0;
    std::uint64_t join_misses = 0;

    void add(const ReviewRecord& review, const BusinessIndex& index);
    void merge(const StarPartial& other);
};

struct SentimentResult {
    std::vector<SentimentRow> rows;  // sorted by (country, state, date, label)
    std::uint64_t tips_seen = 0;
    std::uint64_t join_misses = 0;
    std::uint64_t unknown_region_drops = 0;
    std::map<std::string, std::uint64_t> unknown_codes;  // unmapped code -> records
};

struct StarResult {
    std::vector<StarRow> rows;  // sorted by (country, state, month, stars)
    std::uint64_t reviews_seen = 0;
    std::uint64_t join_misses = 0;
    std::uint64_t unknown_region_drops = 0;
    std::map<std::string, std::uint64_t> unknown_codes;
};

// Resolve state codes, apply the unknown policy, re-key by qualified
// region, and sort. Codes mapping to the same region fold together.
SentimentResult finalize_sentiment(const SentimentPartial& partial,
                                   const RegionMapper& mapper, UnknownPolicy policy);
StarResult finalize_stars(const StarPartial& partial, const RegionMapper& mapper,
                          UnknownPolicy policy);

// --- whole-stream conveniences (single-threaded over parsed records) ----

std::vector<YearlyFeatureCounts> feature_performance(std::span<const UserRecord> users,
                                                     std::span<const ReviewRecord> reviews,
                                                     std::span<const TipRecord> tips,
                                                     std::span<const CheckinRecord> checkins);

SentimentResult tip_sentiment(std::span<const TipRecord> tips, const Lexicon& lexicon,
                              const BusinessIndex& index, const RegionMapper& mapper,
                              UnknownPolicy policy = UnknownPolicy::emit_as_unknown);

StarResult star_ratings(std::span<const ReviewRecord> reviews, const BusinessIndex& index,
                        const RegionMapper& mapper,
                        UnknownPolicy policy = UnknownPolicy::emit_as_unknown);

// Share of total tips per label, in percent. Empty input yields zeros.
std::map<SentimentLabel, double> sentiment_breakdown(const std::vector<SentimentRow>& rows);

}  // namespace yelpstream
