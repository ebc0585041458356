#include "fixtures.hpp"

#include <nlohmann/json.hpp>
#include <zlib.h>

#include <array>
#include <atomic>
#include <fstream>

#include "yelpstream/errors.hpp"

namespace yelpstream::testsupport {

using json = nlohmann::json;

namespace {

// Mapper-known codes (US, Canada, UK) plus codes the bundled mapper lacks.
constexpr const char* kKnownStates[] = {"NV", "CA", "AZ", "NC", "PA", "OH", "WI",
                                        "IL", "ON", "QC", "AB", "EDH", "FIF"};
constexpr const char* kUnknownStates[] = {"ZZ", "XX", "QQ", "J5"};

constexpr const char* kNeutralWords[] = {
    "the",  "a",     "and",   "place", "food",  "service", "staff", "back",
    "menu", "table", "order", "time",  "again", "here",    "they",  "with",
    "was",  "were",  "some",  "just",  "very",  "really",  "so",    "ok"};

constexpr const char* kOpinionWords[] = {
    "good", "great", "excellent", "amazing", "love",  "best",   "delicious",
    "bad",  "awful", "terrible",  "worst",   "slow",  "dirty",  "bland",
    "rude", "gross", "friendly",  "clean",   "tasty", "perfect"};

constexpr const char* kSeparators[] = {" ", " ", " ", ", ", "! ", "... ", "-", "  "};

int rand_int(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool chance(std::mt19937_64& rng, double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

std::string maybe_shout(std::mt19937_64& rng, std::string word) {
    if (chance(rng, 0.15)) {
        for (char& c : word) {
            if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
        }
    } else if (chance(rng, 0.3) && !word.empty() && word[0] >= 'a' && word[0] <= 'z') {
        word[0] = static_cast<char>(word[0] - 'a' + 'A');
    }
    return word;
}

}  // namespace

std::size_t total_records(const FixtureSpec& spec) {
    return spec.businesses + spec.users + spec.reviews + spec.tips + spec.checkins;
}

RecordGen::RecordGen(const FixtureSpec& spec) : spec_(spec), rng_(spec.seed) {
    for (const char* w : kNeutralWords) tip_words_.push_back(w);
    for (const char* w : kOpinionWords) tip_words_.push_back(w);
}

Timestamp RecordGen::timestamp() {
    Timestamp ts;
    ts.year = rand_int(rng_, spec_.year_min, spec_.year_max);
    ts.month = rand_int(rng_, 1, 12);
    ts.day = rand_int(rng_, 1, 28);
    ts.hour = rand_int(rng_, 0, 23);
    ts.minute = rand_int(rng_, 0, 59);
    ts.second = rand_int(rng_, 0, 59);
    return ts;
}

std::string RecordGen::business_ref() {
    if (spec_.businesses > 0 && !chance(rng_, spec_.dangling_rate)) {
        return "b" + std::to_string(rand_int(rng_, 0, static_cast<int>(spec_.businesses) - 1));
    }
    return "ghost" + std::to_string(rand_int(rng_, 0, 999));
}

BusinessRecord RecordGen::business(std::size_t index) {
    BusinessRecord r;
    r.business_id = "b" + std::to_string(index);
    switch (rand_int(rng_, 0, 3)) {
        case 0: r.name = "Diner #" + std::to_string(index); break;
        case 1: r.name = "Joe's \"Best\" Grill on " + std::to_string(index) + "th"; break;
        case 2: r.name = "Cafe, Bar & Kitchen " + std::to_string(index); break;
        default: r.name = "Spot " + std::to_string(index); break;
    }
    bool unknown = chance(rng_, spec_.unknown_state_rate);
    if (unknown) {
        r.state_abbrev = kUnknownStates[rand_int(rng_, 0, std::size(kUnknownStates) - 1)];
    } else {
        r.state_abbrev = kKnownStates[rand_int(rng_, 0, std::size(kKnownStates) - 1)];
    }
    r.city = "City" + std::to_string(rand_int(rng_, 0, 9));
    if (chance(rng_, 0.9)) r.stars = rand_int(rng_, 2, 10) / 2.0;
    if (chance(rng_, 0.8)) {
        int n = rand_int(rng_, 1, 3);
        for (int i = 0; i < n; ++i) {
            r.categories.push_back(std::string("Tag") + std::to_string(rand_int(rng_, 0, 20)));
        }
    }
    return r;
}

UserRecord RecordGen::user(std::size_t index) {
    UserRecord r;
    r.user_id = "u" + std::to_string(index);
    r.yelping_since = timestamp();
    if (chance(rng_, 0.3)) {
        int n = rand_int(rng_, 1, 4);
        for (int i = 0; i < n; ++i) {
            r.elite_years.insert(rand_int(rng_, std::max(2004, spec_.year_min),
                                          std::min(2030, spec_.year_max)));
        }
    }
    return r;
}

ReviewRecord RecordGen::review(std::size_t index) {
    ReviewRecord r;
    r.review_id = "r" + std::to_string(index);
    r.user_id = "u" + std::to_string(rand_int(rng_, 0, std::max(1, static_cast<int>(spec_.users)) - 1));
    r.business_id = business_ref();
    r.stars = rand_int(rng_, 1, 5);
    r.date = timestamp();
    r.text = tip_text();
    return r;
}

std::string RecordGen::tip_text() {
    if (chance(rng_, 0.05)) return "";
    int n = rand_int(rng_, 1, 12);
    std::string text;
    for (int i = 0; i < n; ++i) {
        if (i > 0) text += kSeparators[rand_int(rng_, 0, std::size(kSeparators) - 1)];
        text += maybe_shout(rng_, tip_words_[rand_int(rng_, 0, static_cast<int>(tip_words_.size()) - 1)]);
    }
    if (chance(rng_, 0.2)) text += "!";
    return text;
}

TipRecord RecordGen::tip(std::size_t index) {
    TipRecord r;
    r.user_id = "u" + std::to_string(rand_int(rng_, 0, std::max(1, static_cast<int>(spec_.users)) - 1));
    r.business_id = business_ref();
    r.date = timestamp();
    r.text = tip_text();
    (void)index;
    return r;
}

CheckinRecord RecordGen::checkin(std::size_t index) {
    CheckinRecord r;
    r.business_id = spec_.businesses > 0
                        ? "b" + std::to_string(rand_int(rng_, 0, static_cast<int>(spec_.businesses) - 1))
                        : "b0";
    int n = rand_int(rng_, 0, 8);
    for (int i = 0; i < n; ++i) r.timestamps.push_back(timestamp());
    (void)index;
    return r;
}

std::string malformed_line(RecordKind kind, std::mt19937_64& rng) {
    switch (rand_int(rng, 0, 5)) {
        case 0: return "{not json";
        case 1: return "[1, 2, 3]";
        case 2: return "{}";
        case 3:
            switch (kind) {
                case RecordKind::business: return R"({"name":"no id"})";
                case RecordKind::review:
                    return R"({"review_id":"x","user_id":"u","business_id":"b","stars":7,"date":"2010-01-01 00:00:00"})";
                case RecordKind::user:
                    return R"({"user_id":"u","yelping_since":"2010-01-01 00:00:00","elite":"95"})";
                case RecordKind::tip:
                    return R"({"user_id":"u","business_id":"b","date":"2010-13-01 00:00:00"})";
                case RecordKind::checkin:
                    return R"({"business_id":"b","date":"2010-01-01 09:00:00,,"})";
            }
            return "{}";
        case 4:
            return R"({"business_id":"","name":"empty id","state":"NV","user_id":"","review_id":"","stars":3,"date":"2010-01-01","yelping_since":"2010-01-01"})";
        default: return "";
    }
}

namespace {

// Some lines go out canonical, some with extra keys and float stars, to
// exercise unknown-key tolerance the way real snapshots do.
std::string render_line(const Record& record, std::mt19937_64& rng) {
    if (chance(rng, 0.7)) return to_ndjson(record);
    json j = json::parse(to_ndjson(record));
    j["extra_field"] = rand_int(rng, 0, 100);
    j["useful"] = rand_int(rng, 0, 5);
    if (const auto* review = std::get_if<ReviewRecord>(&record)) {
        j["stars"] = static_cast<double>(review->stars);  // "5.0" form
    }
    return j.dump();
}

}  // namespace

void write_fixture(const std::filesystem::path& dir, const FixtureSpec& spec) {
    std::filesystem::create_directories(dir);
    RecordGen gen(spec);
    auto& rng = gen.rng();

    auto open = [&](const char* name) {
        std::ofstream out(dir / name, std::ios::binary);
        if (!out) throw IoError(std::string("cannot write fixture file ") + name);
        return out;
    };

    auto emit = [&](std::ofstream& out, RecordKind kind, const Record& record) {
        if (chance(rng, spec.malformed_rate)) {
            out << malformed_line(kind, rng) << "\n";
        }
        out << render_line(record, rng) << "\n";
    };

    {
        auto out = open("business.json");
        for (std::size_t i = 0; i < spec.businesses; ++i) {
            BusinessRecord record = gen.business(i);
            if (i > 0 && chance(rng, spec.duplicate_business_rate)) {
                // Duplicate id with a different state: first line must win.
                BusinessRecord dup = gen.business(i - 1);
                dup.business_id = record.business_id;
                emit(out, RecordKind::business, Record{record});
                emit(out, RecordKind::business, Record{dup});
                continue;
            }
            emit(out, RecordKind::business, Record{record});
        }
    }
    {
        auto out = open("user.json");
        for (std::size_t i = 0; i < spec.users; ++i) {
            emit(out, RecordKind::user, Record{gen.user(i)});
        }
    }
    {
        auto out = open("review.json");
        for (std::size_t i = 0; i < spec.reviews; ++i) {
            emit(out, RecordKind::review, Record{gen.review(i)});
        }
    }
    {
        auto out = open("tip.json");
        for (std::size_t i = 0; i < spec.tips; ++i) {
            emit(out, RecordKind::tip, Record{gen.tip(i)});
        }
    }
    {
        auto out = open("checkin.json");
        for (std::size_t i = 0; i < spec.checkins; ++i) {
            emit(out, RecordKind::checkin, Record{gen.checkin(i)});
        }
    }
}

void write_gzip_copy(const std::filesystem::path& src, const std::filesystem::path& dst) {
    std::ifstream in(src, std::ios::binary);
    if (!in) throw IoError("cannot read " + src.string());
    gzFile out = gzopen(dst.string().c_str(), "wb");
    if (!out) throw IoError("cannot write " + dst.string());
    char buf[1 << 16];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        if (gzwrite(out, buf, static_cast<unsigned>(in.gcount())) <= 0 && in.gcount() > 0) {
            gzclose(out);
            throw IoError("gzwrite failed for " + dst.string());
        }
    }
    gzclose(out);
}

std::filesystem::path make_temp_dir(const std::string& prefix) {
    static std::atomic<unsigned> counter{0};
    auto base = std::filesystem::temp_directory_path();
    auto dir = base / (prefix + "-" + std::to_string(::getpid()) + "-" +
                       std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace yelpstream::testsupport
