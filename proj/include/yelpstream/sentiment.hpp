#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace yelpstream {

// Total order (negative < neutral < positive) fixes output sorting.
enum class SentimentLabel { negative = 0, neutral = 1, positive = 2 };

inline constexpr SentimentLabel kAllSentimentLabels[] = {
    SentimentLabel::negative, SentimentLabel::neutral, SentimentLabel::positive};

std::string_view to_string(SentimentLabel label);
std::optional<SentimentLabel> sentiment_label_from_string(std::string_view name);

// Sign-threshold classification of a tip's polarity sum.
inline SentimentLabel classify(long long polarity_sum) {
    if (polarity_sum > 0) return SentimentLabel::positive;
    if (polarity_sum < 0) return SentimentLabel::negative;
    return SentimentLabel::neutral;
}

struct TipScore {
    int polarity_sum = 0;
    SentimentLabel label = SentimentLabel::neutral;
    std::uint32_t scored_words = 0;   // tokens in the text
    std::uint32_t matched_words = 0;  // tokens present in the lexicon
};

// Word -> polarity (+1 or -1) table; absent words score 0. Immutable after
// load, shared read-only across scoring threads.
class Lexicon {
  public:
    // File lines are `word<TAB>positive` or `word<TAB>negative`, '#'
    // comments allowed; words are lowercased on load.
    static Lexicon load(const std::filesystem::path& path);  // throws LoadError/IoError
    static Lexicon load_from_string(std::string_view text, std::string_view origin = "<string>");

    // Small example lexicon shipped with the library.
    static Lexicon bundled();

    // For tests and fixtures; validates the same invariants as load().
    static Lexicon from_entries(const std::map<std::string, int>& entries);

    // +1, -1, or 0 for words not in the table.
    int polarity(std::string_view word) const {
        auto it = entries_.find(word);
        return it == entries_.end() ? 0 : it->second;
    }

    std::size_t size() const { return entries_.size(); }

    std::map<std::string, int> entries() const;

  private:
    struct TransparentHash {
        using is_transparent = void;
        size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
    };
    std::unordered_map<std::string, int, TransparentHash, std::equal_to<>> entries_;
};

inline bool is_token_char(unsigned char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

// Walks lowercase tokens split on any non-alphanumeric byte, in text order.
// ASCII-only by design; bytes >= 0x80 act as separators.
template <class Fn>
void for_each_token(std::string_view text, Fn&& fn) {
    std::string token;
    for (unsigned char c : text) {
        if (is_token_char(c)) {
            token.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c));
        } else if (!token.empty()) {
            fn(std::string_view(token));
            token.clear();
        }
    }
    if (!token.empty()) fn(std::string_view(token));
}

std::vector<std::string> tokenize(std::string_view text);

// polarity_sum over tokenize(text); label by sign threshold.
TipScore score_tip(const Lexicon& lexicon, std::string_view text);

}  // namespace yelpstream
