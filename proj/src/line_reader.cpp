#include "yelpstream/line_reader.hpp"

#include <zlib.h>

#include <cstdio>
#include <cstring>

#include "yelpstream/errors.hpp"

namespace yelpstream {

namespace {
constexpr size_t kBufSize = 1 << 16;
}

struct ByteReader::Impl {
    std::FILE* plain = nullptr;
    gzFile gz = nullptr;
    std::uint64_t consumed = 0;

    ~Impl() {
        if (plain) std::fclose(plain);
        if (gz) gzclose(gz);
    }
};

ByteReader::ByteReader(const std::filesystem::path& path) : impl_(std::make_unique<Impl>()) {
    std::FILE* f = std::fopen(path.string().c_str(), "rb");
    if (!f) throw IoError("cannot open file: " + path.string());

    unsigned char magic[2] = {0, 0};
    size_t got = std::fread(magic, 1, 2, f);
    bool gzipped = got == 2 && magic[0] == 0x1f && magic[1] == 0x8b;
    if (gzipped) {
        std::fclose(f);
        impl_->gz = gzopen(path.string().c_str(), "rb");
        if (!impl_->gz) throw IoError("cannot open gzip file: " + path.string());
        gzbuffer(impl_->gz, kBufSize);
    } else {
        std::rewind(f);
        impl_->plain = f;
    }
}

ByteReader::~ByteReader() = default;
ByteReader::ByteReader(ByteReader&&) noexcept = default;
ByteReader& ByteReader::operator=(ByteReader&&) noexcept = default;

std::size_t ByteReader::read(char* out, std::size_t max) {
    size_t n = 0;
    if (impl_->gz) {
        int got = gzread(impl_->gz, out, static_cast<unsigned>(max));
        if (got < 0) {
            int errnum = 0;
            const char* msg = gzerror(impl_->gz, &errnum);
            throw IoError(std::string("gzip read failed: ") + (msg ? msg : "?"));
        }
        n = static_cast<size_t>(got);
    } else {
        n = std::fread(out, 1, max, impl_->plain);
        if (n == 0 && std::ferror(impl_->plain)) throw IoError("read failed");
    }
    impl_->consumed += n;
    return n;
}

std::uint64_t ByteReader::bytes_consumed() const {
    return impl_->consumed;
}

LineReader::LineReader(const std::filesystem::path& path) : source_(path) {
    buffer_.resize(kBufSize);
}

bool LineReader::next(std::string& line) {
    line.clear();
    bool any = false;
    for (;;) {
        if (pos_ >= len_) {
            if (eof_) break;
            len_ = source_.read(buffer_.data(), buffer_.size());
            pos_ = 0;
            if (len_ == 0) {
                eof_ = true;
                break;
            }
        }
        const char* begin = buffer_.data() + pos_;
        size_t avail = len_ - pos_;
        const char* nl = static_cast<const char*>(std::memchr(begin, '\n', avail));
        if (nl) {
            line.append(begin, static_cast<size_t>(nl - begin));
            pos_ += static_cast<size_t>(nl - begin) + 1;
            any = true;
            break;
        }
        line.append(begin, avail);
        pos_ = len_;
        any = any || avail > 0;
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return any;
}

std::uint64_t LineReader::bytes_consumed() const {
    // Unread buffered bytes do not count as consumed yet.
    return source_.bytes_consumed() - (len_ - pos_);
}

}  // namespace yelpstream
