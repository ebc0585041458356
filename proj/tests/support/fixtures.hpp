#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "yelpstream/records.hpp"

namespace yelpstream::testsupport {

// Knobs for one synthetic dataset. Everything downstream of the seed is
// deterministic.
struct FixtureSpec {
    std::uint64_t seed = 1;
    std::size_t businesses = 20;
    std::size_t users = 30;
    std::size_t reviews = 120;
    std::size_t tips = 120;
    std::size_t checkins = 15;
    double malformed_rate = 0.0;      // broken lines injected per file
    double dangling_rate = 0.0;       // reviews/tips pointing at absent businesses
    double unknown_state_rate = 0.0;  // businesses with codes the mapper lacks
    double duplicate_business_rate = 0.0;
    int year_min = 2008;
    int year_max = 2016;
};

std::size_t total_records(const FixtureSpec& spec);

// Writes the five NDJSON files into dir (created if needed).
void write_fixture(const std::filesystem::path& dir, const FixtureSpec& spec);

// Record-level generators used by both the file writer and in-memory tests.
class RecordGen {
  public:
    explicit RecordGen(const FixtureSpec& spec);

    BusinessRecord business(std::size_t index);
    UserRecord user(std::size_t index);
    ReviewRecord review(std::size_t index);
    TipRecord tip(std::size_t index);
    CheckinRecord checkin(std::size_t index);

    std::string tip_text();
    Timestamp timestamp();
    std::string business_ref();  // existing id, or a dangling one

    std::mt19937_64& rng() { return rng_; }

  private:
    FixtureSpec spec_;
    std::mt19937_64 rng_;
    std::vector<std::string> tip_words_;
};

// A line with deliberately broken content for the given kind.
std::string malformed_line(RecordKind kind, std::mt19937_64& rng);

// Gzip-compresses src into dst (for exercising compressed-input paths).
void write_gzip_copy(const std::filesystem::path& src, const std::filesystem::path& dst);

// Scratch directory under the system temp dir, unique per call.
std::filesystem::path make_temp_dir(const std::string& prefix);

struct TempDir {
    explicit TempDir(const std::string& prefix) : path(make_temp_dir(prefix)) {}
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::filesystem::path path;
};

}  // namespace yelpstream::testsupport
