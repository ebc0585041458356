#include "yelpstream/sentiment.hpp"

#include <fstream>
#include <sstream>

#include "bundled_data.hpp"
#include "text_lines.hpp"
#include "yelpstream/errors.hpp"

namespace yelpstream {

std::string_view to_string(SentimentLabel label) {
    switch (label) {
        case SentimentLabel::negative: return "negative";
        case SentimentLabel::neutral: return "neutral";
        case SentimentLabel::positive: return "positive";
    }
    return "?";
}

std::optional<SentimentLabel> sentiment_label_from_string(std::string_view name) {
    for (SentimentLabel label : kAllSentimentLabels) {
        if (to_string(label) == name) return label;
    }
    return std::nullopt;
}

namespace {

std::string lowercase(std::string_view word) {
    std::string out;
    out.reserve(word.size());
    for (unsigned char c : word) {
        out.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a')
                                           : static_cast<char>(c));
    }
    return out;
}

bool has_whitespace(std::string_view word) {
    return word.find_first_of(" \t\v\f") != std::string_view::npos;
}

}  // namespace

Lexicon Lexicon::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open lexicon file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_from_string(buf.str(), path.string());
}

Lexicon Lexicon::load_from_string(std::string_view text, std::string_view origin) {
    Lexicon lex;
    detail::for_each_data_line(text, [&](size_t line_no, std::string_view line) {
        auto where = [&] {
            return std::string(origin) + ":" + std::to_string(line_no);
        };
        auto cols = detail::split_tabs(line);
        if (cols.size() != 2) {
            throw LoadError(where() + ": expected 2 tab-separated columns, got " +
                            std::to_string(cols.size()));
        }
        if (cols[0].empty()) throw LoadError(where() + ": empty word");
        if (has_whitespace(cols[0])) {
            throw LoadError(where() + ": word contains whitespace: '" +
                            std::string(cols[0]) + "'");
        }
        int polarity;
        if (cols[1] == "positive") {
            polarity = 1;
        } else if (cols[1] == "negative") {
            polarity = -1;
        } else {
            throw LoadError(where() + ": unknown polarity '" + std::string(cols[1]) +
                            "' (expected positive or negative)");
        }
        std::string word = lowercase(cols[0]);
        auto [it, inserted] = lex.entries_.emplace(std::move(word), polarity);
        if (!inserted && it->second != polarity) {
            throw LoadError(where() + ": conflicting polarity for word '" + it->first + "'");
        }
    });
    return lex;
}

Lexicon Lexicon::bundled() {
    return load_from_string(detail::kBundledLexiconTsv, "<bundled lexicon>");
}

Lexicon Lexicon::from_entries(const std::map<std::string, int>& entries) {
    Lexicon lex;
    for (const auto& [word, polarity] : entries) {
        if (word.empty()) throw LoadError("empty lexicon word");
        if (has_whitespace(word)) throw LoadError("lexicon word contains whitespace: '" + word + "'");
        if (polarity != 1 && polarity != -1) {
            throw LoadError("lexicon polarity must be +1 or -1 for word '" + word + "'");
        }
        std::string lower = lowercase(word);
        auto [it, inserted] = lex.entries_.emplace(std::move(lower), polarity);
        if (!inserted && it->second != polarity) {
            throw LoadError("conflicting polarity for word '" + it->first + "'");
        }
    }
    return lex;
}

std::map<std::string, int> Lexicon::entries() const {
    return {entries_.begin(), entries_.end()};
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    for_each_token(text, [&](std::string_view token) { tokens.emplace_back(token); });
    return tokens;
}

TipScore score_tip(const Lexicon& lexicon, std::string_view text) {
    TipScore score;
    for_each_token(text, [&](std::string_view token) {
        ++score.scored_words;
        int polarity = lexicon.polarity(token);
        if (polarity != 0) {
            ++score.matched_words;
            score.polarity_sum += polarity;
        }
    });
    score.label = classify(score.polarity_sum);
    return score;
}

}  // namespace yelpstream
