#include <doctest.h>

#include <algorithm>
#include <random>

#include "../support/oracle.hpp"
#include "yelpstream/errors.hpp"
#include "yelpstream/sentiment.hpp"

using namespace yelpstream;

TEST_CASE("classify thresholds on the sign of the sum") {
    CHECK(classify(3) == SentimentLabel::positive);
    CHECK(classify(-1) == SentimentLabel::negative);
    CHECK(classify(0) == SentimentLabel::neutral);
    for (int n = 1; n <= 100; ++n) {
        CHECK(classify(n) == SentimentLabel::positive);
        CHECK(classify(-n) == SentimentLabel::negative);
    }
}

TEST_CASE("label order is negative < neutral < positive") {
    CHECK(SentimentLabel::negative < SentimentLabel::neutral);
    CHECK(SentimentLabel::neutral < SentimentLabel::positive);
    CHECK(to_string(SentimentLabel::negative) == "negative");
    CHECK(sentiment_label_from_string("positive") == SentimentLabel::positive);
}

TEST_CASE("tokenize splits on non-alphanumeric and lowercases") {
    CHECK(tokenize("") == std::vector<std::string>{});
    CHECK(tokenize("Great food, GREAT staff!") ==
          std::vector<std::string>{"great", "food", "great", "staff"});
    CHECK(tokenize("5-star place") == std::vector<std::string>{"5", "star", "place"});
    CHECK(tokenize("...") == std::vector<std::string>{});
    CHECK(tokenize("don't") == std::vector<std::string>{"don", "t"});
    CHECK(tokenize("  spaced\tout\nwords ") == std::vector<std::string>{"spaced", "out", "words"});
}

TEST_CASE("score_tip sums token polarities") {
    auto lexicon = Lexicon::from_entries({{"good", 1}, {"bad", -1}});

    SUBCASE("positive overall") {
        TipScore score = score_tip(lexicon, "good good bad");
        CHECK(score.polarity_sum == 1);
        CHECK(score.label == SentimentLabel::positive);
        CHECK(score.scored_words == 3);
        CHECK(score.matched_words == 3);
    }

    SUBCASE("empty text is neutral") {
        TipScore score = score_tip(lexicon, "");
        CHECK(score.polarity_sum == 0);
        CHECK(score.label == SentimentLabel::neutral);
        CHECK(score.scored_words == 0);
    }

    SUBCASE("balanced sum is neutral") {
        TipScore score = score_tip(lexicon, "good bad");
        CHECK(score.polarity_sum == 0);
        CHECK(score.label == SentimentLabel::neutral);
    }

    SUBCASE("tokens score independently, no dedup") {
        CHECK(score_tip(lexicon, "good good good").polarity_sum == 3);
    }

    SUBCASE("case and punctuation do not matter") {
        CHECK(score_tip(lexicon, "GOOD, Bad!! good...").polarity_sum == 1);
    }

    SUBCASE("counts bound the sum") {
        TipScore score = score_tip(lexicon, "good bad place good");
        CHECK(std::abs(score.polarity_sum) <= score.matched_words);
        CHECK(score.matched_words <= score.scored_words);
    }
}

TEST_CASE("lexicon loading") {
    SUBCASE("direct mapping") {
        auto lexicon = Lexicon::load_from_string("good\tpositive\nbad\tnegative\n");
        CHECK(lexicon.size() == 2);
        CHECK(lexicon.polarity("good") == 1);
        CHECK(lexicon.polarity("bad") == -1);
        CHECK(lexicon.polarity("other") == 0);
    }

    SUBCASE("idempotent duplicate") {
        auto lexicon = Lexicon::load_from_string("good\tpositive\ngood\tpositive\n");
        CHECK(lexicon.size() == 1);
    }

    SUBCASE("conflicting duplicate is an error") {
        CHECK_THROWS_AS(Lexicon::load_from_string("good\tpositive\ngood\tnegative\n"),
                        LoadError);
    }

    SUBCASE("unknown polarity token is an error") {
        CHECK_THROWS_AS(Lexicon::load_from_string("good\tneutral\n"), LoadError);
        CHECK_THROWS_AS(Lexicon::load_from_string("good\t+1\n"), LoadError);
    }

    SUBCASE("column and word validation") {
        CHECK_THROWS_AS(Lexicon::load_from_string("good\n"), LoadError);
        CHECK_THROWS_AS(Lexicon::load_from_string("good\tpositive\textra\n"), LoadError);
        CHECK_THROWS_AS(Lexicon::load_from_string("\tpositive\n"), LoadError);
        CHECK_THROWS_AS(Lexicon::load_from_string("two words\tpositive\n"), LoadError);
    }

    SUBCASE("words are lowercased on load") {
        auto lexicon = Lexicon::load_from_string("GOOD\tpositive\n");
        CHECK(lexicon.polarity("good") == 1);
    }

    SUBCASE("bundled lexicon loads and scores") {
        auto lexicon = Lexicon::bundled();
        CHECK(lexicon.size() > 200);
        CHECK(lexicon.polarity("good") == 1);
        CHECK(lexicon.polarity("terrible") == -1);
        CHECK(score_tip(lexicon, "great tacos, terrible service").polarity_sum == 0);
    }
}

namespace {

// Random word pool: half lexicon words, half never-matched fillers.
std::vector<std::string> random_words(std::mt19937_64& rng, const Lexicon& lexicon) {
    static const std::vector<std::string> pool = [] {
        std::vector<std::string> words;
        for (const auto& [word, _] : Lexicon::bundled().entries()) words.push_back(word);
        words.resize(60);
        for (int i = 0; i < 60; ++i) words.push_back("zz" + std::to_string(i));
        return words;
    }();
    (void)lexicon;
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> len(0, 20);
    std::vector<std::string> words;
    int n = len(rng);
    for (int i = 0; i < n; ++i) words.push_back(pool[pick(rng)]);
    return words;
}

std::string join(const std::vector<std::string>& words) {
    std::string text;
    for (const auto& word : words) {
        if (!text.empty()) text += ' ';
        text += word;
    }
    return text;
}

}  // namespace

TEST_CASE("score_tip is invariant under word permutation") {
    auto lexicon = Lexicon::bundled();
    std::mt19937_64 rng(99);
    for (int i = 0; i < 1000; ++i) {
        auto words = random_words(rng, lexicon);
        TipScore before = score_tip(lexicon, join(words));
        std::shuffle(words.begin(), words.end(), rng);
        TipScore after = score_tip(lexicon, join(words));
        REQUIRE(before.polarity_sum == after.polarity_sum);
        REQUIRE(before.label == after.label);
        REQUIRE(before.matched_words == after.matched_words);
    }
}

TEST_CASE("appending a word outside the lexicon changes nothing") {
    auto lexicon = Lexicon::bundled();
    std::mt19937_64 rng(123);
    for (int i = 0; i < 1000; ++i) {
        auto words = random_words(rng, lexicon);
        std::string text = join(words);
        TipScore before = score_tip(lexicon, text);
        TipScore after = score_tip(lexicon, text.empty() ? "qqq" : text + " qqq");
        REQUIRE(before.polarity_sum == after.polarity_sum);
        REQUIRE(before.label == after.label);
    }
}

TEST_CASE("score_tip matches a brute-force loop on randomized texts") {
    auto lexicon = Lexicon::bundled();
    auto entries = lexicon.entries();
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 1000; ++i) {
        std::string text = join(random_words(rng, lexicon));
        TipScore score = score_tip(lexicon, text);
        int expected = testsupport::oracle_polarity_sum(entries, text);
        REQUIRE(score.polarity_sum == expected);
        SentimentLabel expected_label = expected > 0   ? SentimentLabel::positive
                                        : expected < 0 ? SentimentLabel::negative
                                                       : SentimentLabel::neutral;
        REQUIRE(score.label == expected_label);
    }
}
