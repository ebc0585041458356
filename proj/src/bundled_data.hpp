#pragma once

namespace yelpstream::detail {

// Contents of data/region_mapper.tsv and data/sentiment_lexicon.tsv, baked
// in at build time so the CLI works without locating the source tree.
extern const char* const kBundledMapperTsv;
extern const char* const kBundledLexiconTsv;

}  // namespace yelpstream::detail
