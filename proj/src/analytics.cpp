#include "yelpstream/analytics.hpp"

#include <algorithm>
#include <tuple>

namespace yelpstream {

void BusinessIndex::add(const BusinessRecord& business, std::uint64_t line_no) {
    auto it = entries_.find(business.business_id);
    if (it == entries_.end()) {
        entries_.emplace(business.business_id, Entry{business.state_abbrev, line_no});
    } else if (line_no < it->second.line_no) {
        it->second = Entry{business.state_abbrev, line_no};
    }
}

void BusinessIndex::merge(BusinessIndex&& other) {
    if (entries_.empty()) {
        entries_ = std::move(other.entries_);
        return;
    }
    for (auto& [id, entry] : other.entries_) {
        auto it = entries_.find(id);
        if (it == entries_.end()) {
            entries_.emplace(id, std::move(entry));
        } else if (entry.line_no < it->second.line_no) {
            it->second = std::move(entry);
        }
    }
}

const std::string* BusinessIndex::state_of(std::string_view business_id) const {
    auto it = entries_.find(business_id);
    return it == entries_.end() ? nullptr : &it->second.state_abbrev;
}

BusinessIndex build_business_index(std::span<const BusinessRecord> businesses) {
    BusinessIndex index;
    std::uint64_t line_no = 0;
    for (const auto& business : businesses) index.add(business, ++line_no);
    return index;
}

// --- feature performance ------------------------------------------------

void FeaturePartial::add(const UserRecord& user) {
    ++users_seen;
    ++new_users[user.yelping_since.year];
    for (int year : user.elite_years) ++elite_users[year];
}

void FeaturePartial::add(const ReviewRecord& review) {
    ++reviews_seen;
    ++reviews[review.date.year];
}

void FeaturePartial::add(const TipRecord& tip) {
    ++tips_seen;
    ++tips[tip.date.year];
}

void FeaturePartial::add(const CheckinRecord& checkin) {
    ++checkin_records_seen;
    checkin_timestamps_seen += checkin.timestamps.size();
    for (const auto& ts : checkin.timestamps) ++checkins[ts.year];
}

void FeaturePartial::merge(const FeaturePartial& other) {
    merge_counts(new_users, other.new_users);
    merge_counts(reviews, other.reviews);
    merge_counts(elite_users, other.elite_users);
    merge_counts(tips, other.tips);
    merge_counts(checkins, other.checkins);
    users_seen += other.users_seen;
    reviews_seen += other.reviews_seen;
    tips_seen += other.tips_seen;
    checkin_records_seen += other.checkin_records_seen;
    checkin_timestamps_seen += other.checkin_timestamps_seen;
}

std::vector<YearlyFeatureCounts> finalize_features(const FeaturePartial& partial) {
    const std::map<int, std::uint64_t>* measures[] = {
        &partial.new_users, &partial.reviews, &partial.elite_users, &partial.tips,
        &partial.checkins};

    bool any = false;
    int min_year = 0;
    int max_year = 0;
    for (const auto* measure : measures) {
        if (measure->empty()) continue;
        int lo = measure->begin()->first;
        int hi = measure->rbegin()->first;
        if (!any) {
            min_year = lo;
            max_year = hi;
            any = true;
        } else {
            min_year = std::min(min_year, lo);
            max_year = std::max(max_year, hi);
        }
    }
    if (!any) return {};

    auto cell = [](const std::map<int, std::uint64_t>& measure, int year) {
        auto it = measure.find(year);
        return it == measure.end() ? std::optional<std::uint64_t>{} : std::optional(it->second);
    };

    std::vector<YearlyFeatureCounts> rows;
    rows.reserve(static_cast<size_t>(max_year - min_year + 1));
    for (int year = min_year; year <= max_year; ++year) {
        rows.push_back(YearlyFeatureCounts{
            year,
            cell(partial.new_users, year),
            cell(partial.reviews, year),
            cell(partial.elite_users, year),
            cell(partial.tips, year),
            cell(partial.checkins, year),
        });
    }
    return rows;
}

// --- tip sentiment -------------------------------------------------------

void SentimentPartial::add(const TipRecord& tip, const BusinessIndex& index,
                           const Lexicon& lexicon) {
    ++tips_seen;
    const std::string* state = index.state_of(tip.business_id);
    if (!state) {
        ++join_misses;
        return;
    }
    TipScore score = score_tip(lexicon, tip.text);
    ++counts[GeoDayLabelKey{*state, to_date(tip.date), score.label}];
}

void SentimentPartial::merge(const SentimentPartial& other) {
    merge_counts(counts, other.counts);
    tips_seen += other.tips_seen;
    join_misses += other.join_misses;
}

void StarPartial::add(const ReviewRecord& review, const BusinessIndex& index) {
    ++reviews_seen;
    const std::string* state = index.state_of(review.business_id);
    if (!state) {
        ++join_misses;
        return;
    }
    ++counts[GeoMonthStarKey{*state, month_bucket(review.date), review.stars}];
}

void StarPartial::merge(const StarPartial& other) {
    merge_counts(counts, other.counts);
    reviews_seen += other.reviews_seen;
    join_misses += other.join_misses;
}

namespace {

// Region resolution shared by both geo finalizers. Returns nullptr when
// the record should be dropped.
const Region* resolve_for_output(const RegionMapper& mapper, UnknownPolicy policy,
                                 const std::string& abbrev, std::uint64_t count,
                                 Region& unknown_storage,
                                 std::map<std::string, std::uint64_t>& unknown_codes,
                                 std::uint64_t& drops) {
    if (const Region* region = mapper.find(abbrev)) return region;
    unknown_codes[abbrev] += count;
    if (policy == UnknownPolicy::drop) {
        drops += count;
        return nullptr;
    }
    unknown_storage = unknown_region(abbrev);
    return &unknown_storage;
}

}  // namespace

SentimentResult finalize_sentiment(const SentimentPartial& partial,
                                   const RegionMapper& mapper, UnknownPolicy policy) {
    SentimentResult result;
    result.tips_seen = partial.tips_seen;
    result.join_misses = partial.join_misses;

    using OutKey = std::tuple<std::string, std::string, Date, SentimentLabel>;
    std::map<OutKey, std::uint64_t> merged;
    for (const auto& [key, count] : partial.counts) {
        Region unknown_storage;
        const Region* region =
            resolve_for_output(mapper, policy, key.state_abbrev, count, unknown_storage,
                               result.unknown_codes, result.unknown_region_drops);
        if (!region) continue;
        merged[OutKey{region->country, region->region_name, key.day, key.label}] += count;
    }

    result.rows.reserve(merged.size());
    for (const auto& [key, count] : merged) {
        result.rows.push_back(SentimentRow{std::get<0>(key), std::get<1>(key),
                                           std::get<2>(key), std::get<3>(key), count});
    }
    return result;
}

StarResult finalize_stars(const StarPartial& partial, const RegionMapper& mapper,
                          UnknownPolicy policy) {
    StarResult result;
    result.reviews_seen = partial.reviews_seen;
    result.join_misses = partial.join_misses;

    using OutKey = std::tuple<std::string, std::string, Date, int>;
    std::map<OutKey, std::uint64_t> merged;
    for (const auto& [key, count] : partial.counts) {
        Region unknown_storage;
        const Region* region =
            resolve_for_output(mapper, policy, key.state_abbrev, count, unknown_storage,
                               result.unknown_codes, result.unknown_region_drops);
        if (!region) continue;
        merged[OutKey{region->country, region->region_name, key.month, key.stars}] += count;
    }

    result.rows.reserve(merged.size());
    for (const auto& [key, count] : merged) {
        result.rows.push_back(StarRow{std::get<0>(key), std::get<1>(key), std::get<2>(key),
                                      std::get<3>(key), count});
    }
    return result;
}

// --- whole-stream conveniences -------------------------------------------

std::vector<YearlyFeatureCounts> feature_performance(std::span<const UserRecord> users,
                                                     std::span<const ReviewRecord> reviews,
                                                     std::span<const TipRecord> tips,
                                                     std::span<const CheckinRecord> checkins) {
    FeaturePartial partial;
    for (const auto& user : users) partial.add(user);
    for (const auto& review : reviews) partial.add(review);
    for (const auto& tip : tips) partial.add(tip);
    for (const auto& checkin : checkins) partial.add(checkin);
    return finalize_features(partial);
}

SentimentResult tip_sentiment(std::span<const TipRecord> tips, const Lexicon& lexicon,
                              const BusinessIndex& index, const RegionMapper& mapper,
                              UnknownPolicy policy) {
    SentimentPartial partial;
    for (const auto& tip : tips) partial.add(tip, index, lexicon);
    return finalize_sentiment(partial, mapper, policy);
}

StarResult star_ratings(std::span<const ReviewRecord> reviews, const BusinessIndex& index,
                        const RegionMapper& mapper, UnknownPolicy policy) {
    StarPartial partial;
    for (const auto& review : reviews) partial.add(review, index);
    return finalize_stars(partial, mapper, policy);
}

std::map<SentimentLabel, double> sentiment_breakdown(const std::vector<SentimentRow>& rows) {
    std::map<SentimentLabel, double> breakdown;
    std::uint64_t total = 0;
    std::map<SentimentLabel, std::uint64_t> sums;
    for (SentimentLabel label : kAllSentimentLabels) sums[label] = 0;
    for (const auto& row : rows) {
        sums[row.label] += row.count;
        total += row.count;
    }
    for (SentimentLabel label : kAllSentimentLabels) {
        breakdown[label] =
            total == 0 ? 0.0 : 100.0 * static_cast<double>(sums[label]) / static_cast<double>(total);
    }
    return breakdown;
}

}  // namespace yelpstream
