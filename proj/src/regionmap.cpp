#include "yelpstream/regionmap.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "bundled_data.hpp"
#include "text_lines.hpp"
#include "yelpstream/errors.hpp"

namespace yelpstream {

std::string_view to_string(UnknownPolicy policy) {
    return policy == UnknownPolicy::drop ? "drop" : "emit-as-unknown";
}

std::optional<UnknownPolicy> unknown_policy_from_string(std::string_view name) {
    if (name == "emit-as-unknown") return UnknownPolicy::emit_as_unknown;
    if (name == "drop") return UnknownPolicy::drop;
    return std::nullopt;
}

Region unknown_region(std::string_view abbrev) {
    return Region{"Unknown", std::string(abbrev)};
}

RegionMapper RegionMapper::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open mapper file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_from_string(buf.str(), path.string());
}

RegionMapper RegionMapper::load_from_string(std::string_view text, std::string_view origin) {
    RegionMapper mapper;
    detail::for_each_data_line(text, [&](size_t line_no, std::string_view line) {
        auto where = [&] {
            return std::string(origin) + ":" + std::to_string(line_no);
        };
        auto cols = detail::split_tabs(line);
        if (cols.size() != 3) {
            throw LoadError(where() + ": expected 3 tab-separated columns, got " +
                            std::to_string(cols.size()));
        }
        for (auto col : cols) {
            if (col.empty()) throw LoadError(where() + ": empty field");
        }
        std::string abbrev(cols[0]);
        if (mapper.entries_.contains(abbrev)) {
            throw LoadError(where() + ": duplicate abbreviation '" + abbrev + "'");
        }
        mapper.entries_.emplace(std::move(abbrev),
                                Region{std::string(cols[1]), std::string(cols[2])});
    });
    return mapper;
}

RegionMapper RegionMapper::bundled() {
    return load_from_string(detail::kBundledMapperTsv, "<bundled mapper>");
}

const Region* RegionMapper::find(std::string_view abbrev) const {
    auto it = entries_.find(abbrev);
    return it == entries_.end() ? nullptr : &it->second;
}

std::map<std::string, Region> RegionMapper::entries() const {
    return {entries_.begin(), entries_.end()};
}

}  // namespace yelpstream
