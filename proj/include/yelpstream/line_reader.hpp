#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>

namespace yelpstream {

// Raw block reader over a plain or gzip-compressed file. Compression is
// detected by the 0x1f 0x8b magic, not the file name.
class ByteReader {
  public:
    explicit ByteReader(const std::filesystem::path& path);  // throws IoError
    ~ByteReader();

    ByteReader(ByteReader&&) noexcept;
    ByteReader& operator=(ByteReader&&) noexcept;
    ByteReader(const ByteReader&) = delete;
    ByteReader& operator=(const ByteReader&) = delete;

    // Up to `max` uncompressed bytes into `out`; 0 at end of input.
    std::size_t read(char* out, std::size_t max);

    // Uncompressed bytes handed out so far.
    std::uint64_t bytes_consumed() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Sequential line reader over an NDJSON file; same transparent gzip
// handling. Lines are returned without the trailing LF/CRLF.
class LineReader {
  public:
    explicit LineReader(const std::filesystem::path& path);  // throws IoError

    // False at end of input. A final line without a newline still counts.
    bool next(std::string& line);

    // Uncompressed bytes consumed so far, line terminators included.
    std::uint64_t bytes_consumed() const;

  private:
    ByteReader source_;
    std::string buffer_;
    std::size_t pos_ = 0;
    std::size_t len_ = 0;
    bool eof_ = false;
};

}  // namespace yelpstream
