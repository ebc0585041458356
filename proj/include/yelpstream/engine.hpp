#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string_view>

namespace yelpstream {

struct StreamStats {
    std::uint64_t lines_read = 0;
    std::uint64_t bytes_read = 0;
    double wall_seconds = 0.0;
};

// Streams a file to `workers` threads as large chunks split at newline
// boundaries; each worker walks its chunk line by line. per_line(worker,
// line_no, line) runs concurrently across distinct worker indices; calls
// sharing a worker index never overlap, so each worker can own mutable
// state at its index. Line numbers are 1-based in file order; the view is
// only valid during the call. workers == 1 runs inline on the calling
// thread.
StreamStats process_file_lines(
    const std::filesystem::path& path, unsigned workers,
    const std::function<void(unsigned worker, std::uint64_t line_no, std::string_view line)>&
        per_line);

}  // namespace yelpstream
