#pragma once

#include <stdexcept>
#include <string>

namespace yelpstream {

// Unreadable/unwritable files. Fatal for the operation that raised it.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid mapper/lexicon file contents (duplicate key, bad column count, ...).
struct LoadError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One rejected input line. Never thrown across a stream; callers count
// these and keep going.
struct ParseError {
    std::string reason;
};

}  // namespace yelpstream
