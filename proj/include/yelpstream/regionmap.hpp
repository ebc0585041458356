#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

namespace yelpstream {

// Qualified (country, region) pair resolved from a dataset state code.
struct Region {
    std::string country;
    std::string region_name;

    friend auto operator<=>(const Region&, const Region&) = default;
};

// What to do with records whose state code is not in the mapper.
enum class UnknownPolicy { emit_as_unknown, drop };

std::string_view to_string(UnknownPolicy policy);
std::optional<UnknownPolicy> unknown_policy_from_string(std::string_view name);

// The synthetic region emitted for unmapped codes under emit_as_unknown.
Region unknown_region(std::string_view abbrev);

// Immutable abbreviation -> Region table loaded from a tab-separated text
// file (`abbrev<TAB>country<TAB>region`, '#' comments, LF or CRLF). Shared
// read-only across threads.
class RegionMapper {
  public:
    static RegionMapper load(const std::filesystem::path& path);  // throws LoadError/IoError
    static RegionMapper load_from_string(std::string_view text, std::string_view origin = "<string>");

    // Ships with the library: US states, Canadian provinces and the
    // UK/Ireland codes seen in public dataset snapshots.
    static RegionMapper bundled();

    // Exact, case-sensitive lookup; nullptr means unknown.
    const Region* find(std::string_view abbrev) const;

    std::size_t size() const { return entries_.size(); }

    // Sorted copy, for reports and independent recomputation.
    std::map<std::string, Region> entries() const;

  private:
    struct TransparentHash {
        using is_transparent = void;
        size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
    };
    std::unordered_map<std::string, Region, TransparentHash, std::equal_to<>> entries_;
};

}  // namespace yelpstream
