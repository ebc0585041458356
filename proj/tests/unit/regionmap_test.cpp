#include <doctest.h>

#include <fstream>

#include "../support/fixtures.hpp"
#include "yelpstream/errors.hpp"
#include "yelpstream/regionmap.hpp"

using namespace yelpstream;
using yelpstream::testsupport::TempDir;

TEST_CASE("load_from_string parses tab-separated entries") {
    auto mapper = RegionMapper::load_from_string("NV\tUSA\tNevada\n");
    REQUIRE(mapper.size() == 1);
    const Region* region = mapper.find("NV");
    REQUIRE(region != nullptr);
    CHECK(region->country == "USA");
    CHECK(region->region_name == "Nevada");
}

TEST_CASE("comments, blank lines and CRLF are tolerated") {
    auto mapper = RegionMapper::load_from_string(
        "# mapper\r\n\r\nNV\tUSA\tNevada\r\nON\tCanada\tOntario\n# trailing comment");
    CHECK(mapper.size() == 2);
    CHECK(mapper.find("ON")->region_name == "Ontario");
}

TEST_CASE("comment-only file loads zero entries") {
    auto mapper = RegionMapper::load_from_string("# nothing here\n# still nothing\n");
    CHECK(mapper.size() == 0);
}

TEST_CASE("load errors") {
    CHECK_THROWS_AS(RegionMapper::load_from_string("ON\tCanada\tOntario\nON\tCanada\tOntario\n"),
                    LoadError);
    CHECK_THROWS_AS(RegionMapper::load_from_string("NV\tUSA\n"), LoadError);
    CHECK_THROWS_AS(RegionMapper::load_from_string("NV\tUSA\tNevada\textra\n"), LoadError);
    CHECK_THROWS_AS(RegionMapper::load_from_string("NV\t\tNevada\n"), LoadError);
    CHECK_THROWS_AS(RegionMapper::load(std::filesystem::path("/no/such/mapper.tsv")), IoError);
}

TEST_CASE("resolve is exact and case-sensitive; unknown is a value") {
    auto mapper = RegionMapper::load_from_string("NV\tUSA\tNevada\n");
    CHECK(mapper.find("NV") != nullptr);
    CHECK(mapper.find("nv") == nullptr);
    CHECK(mapper.find("ZZ") == nullptr);
    Region unknown = unknown_region("ZZ");
    CHECK(unknown.country == "Unknown");
    CHECK(unknown.region_name == "ZZ");
}

TEST_CASE("bundled mapper covers the expected codes") {
    auto mapper = RegionMapper::bundled();
    CHECK(mapper.size() > 60);

    const Region* nv = mapper.find("NV");
    REQUIRE(nv != nullptr);
    CHECK(nv->country == "USA");
    CHECK(nv->region_name == "Nevada");

    // Cross-check against public province codes.
    const Region* on = mapper.find("ON");
    REQUIRE(on != nullptr);
    CHECK(on->country == "Canada");
    CHECK(on->region_name == "Ontario");

    CHECK(mapper.find("CA")->region_name == "California");
    CHECK(mapper.find("EDH")->country == "United Kingdom");
    CHECK(mapper.find("ZZ") == nullptr);
}

TEST_CASE("load round-trips the file contents exactly") {
    TempDir tmp("yelpstream-mapper");
    auto path = tmp.path / "mapper.tsv";
    {
        std::ofstream out(path);
        out << "# comment\n";
        out << "AA\tCountry A\tRegion A\n";
        out << "BB\tCountry B\tRegion B\n";
    }
    auto mapper = RegionMapper::load(path);
    auto entries = mapper.entries();
    REQUIRE(entries.size() == 2);
    for (const auto& [abbrev, region] : entries) {
        const Region* found = mapper.find(abbrev);
        REQUIRE(found != nullptr);
        CHECK(*found == region);
    }
    CHECK(entries.at("AA") == Region{"Country A", "Region A"});
    CHECK(entries.at("BB") == Region{"Country B", "Region B"});
}

TEST_CASE("unknown policy names") {
    CHECK(to_string(UnknownPolicy::emit_as_unknown) == "emit-as-unknown");
    CHECK(to_string(UnknownPolicy::drop) == "drop");
    CHECK(unknown_policy_from_string("drop") == UnknownPolicy::drop);
    CHECK(unknown_policy_from_string("emit-as-unknown") == UnknownPolicy::emit_as_unknown);
    CHECK_FALSE(unknown_policy_from_string("whatever").has_value());
}
