#include "yelpstream/engine.hpp"

#include <chrono>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "yelpstream/line_reader.hpp"

namespace yelpstream {

namespace {

constexpr size_t kChunkBytes = 1 << 20;

// A run of whole lines: ends on a newline except possibly at end of file.
struct Chunk {
    std::uint64_t first_line = 0;
    std::uint64_t line_count = 0;
    std::string bytes;
};

std::uint64_t count_lines(std::string_view bytes) {
    std::uint64_t newlines = 0;
    const char* p = bytes.data();
    const char* end = p + bytes.size();
    while ((p = static_cast<const char*>(std::memchr(p, '\n', static_cast<size_t>(end - p))))) {
        ++newlines;
        ++p;
    }
    if (!bytes.empty() && bytes.back() != '\n') ++newlines;
    return newlines;
}

template <class Fn>
void scan_chunk(const Chunk& chunk, Fn&& fn) {
    const char* p = chunk.bytes.data();
    const char* end = p + chunk.bytes.size();
    std::uint64_t line_no = chunk.first_line;
    while (p < end) {
        const char* nl =
            static_cast<const char*>(std::memchr(p, '\n', static_cast<size_t>(end - p)));
        size_t len = nl ? static_cast<size_t>(nl - p) : static_cast<size_t>(end - p);
        if (len > 0 && p[len - 1] == '\r') --len;
        fn(line_no, std::string_view(p, len));
        ++line_no;
        p = nl ? nl + 1 : end;
    }
}

// Bounded single-producer multi-consumer chunk queue.
class ChunkQueue {
  public:
    explicit ChunkQueue(size_t capacity) : capacity_(capacity) {}

    void push(Chunk&& chunk) {
        std::unique_lock lock(mutex_);
        not_full_.wait(lock, [&] { return queue_.size() < capacity_; });
        queue_.push_back(std::move(chunk));
        lock.unlock();
        not_empty_.notify_one();
    }

    bool pop(Chunk& out) {
        std::unique_lock lock(mutex_);
        not_empty_.wait(lock, [&] { return !queue_.empty() || closed_; });
        if (queue_.empty()) return false;
        out = std::move(queue_.front());
        queue_.pop_front();
        lock.unlock();
        not_full_.notify_one();
        return true;
    }

    void close() {
        {
            std::lock_guard lock(mutex_);
            closed_ = true;
        }
        not_empty_.notify_all();
    }

  private:
    std::mutex mutex_;
    std::condition_variable not_full_;
    std::condition_variable not_empty_;
    std::deque<Chunk> queue_;
    size_t capacity_;
    bool closed_ = false;
};

// Reads the next newline-aligned chunk; a line longer than the target size
// extends the chunk until its newline arrives. False at end of input.
bool next_chunk(ByteReader& reader, std::string& carry, std::string& out) {
    out.clear();
    out.swap(carry);
    size_t searched = 0;
    for (;;) {
        size_t old = out.size();
        out.resize(old + kChunkBytes);
        size_t got = reader.read(out.data() + old, kChunkBytes);
        out.resize(old + got);
        if (got == 0) return !out.empty();  // final partial line, if any

        size_t tail_len = out.size() - searched;
        const char* tail = out.data() + searched;
        const char* last_nl = nullptr;
        for (const char* p = tail + tail_len; p > tail;) {
            --p;
            if (*p == '\n') {
                last_nl = p;
                break;
            }
        }
        if (last_nl) {
            size_t keep = static_cast<size_t>(last_nl - out.data()) + 1;
            carry.assign(out.data() + keep, out.size() - keep);
            out.resize(keep);
            return true;
        }
        searched = out.size();
    }
}

}  // namespace

StreamStats process_file_lines(
    const std::filesystem::path& path, unsigned workers,
    const std::function<void(unsigned, std::uint64_t, std::string_view)>& per_line) {
    auto start = std::chrono::steady_clock::now();
    StreamStats stats;
    ByteReader reader(path);

    std::string carry;
    std::string chunk_bytes;

    if (workers <= 1) {
        std::uint64_t next_line = 1;
        while (next_chunk(reader, carry, chunk_bytes)) {
            Chunk chunk{next_line, 0, std::move(chunk_bytes)};
            scan_chunk(chunk, [&](std::uint64_t line_no, std::string_view line) {
                per_line(0, line_no, line);
            });
            next_line += count_lines(chunk.bytes);
            chunk_bytes = std::move(chunk.bytes);
        }
        stats.lines_read = next_line - 1;
    } else {
        ChunkQueue queue(workers * 4);
        std::exception_ptr worker_error;
        std::mutex error_mutex;

        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                Chunk chunk;
                while (queue.pop(chunk)) {
                    try {
                        scan_chunk(chunk, [&](std::uint64_t line_no, std::string_view line) {
                            per_line(w, line_no, line);
                        });
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!worker_error) worker_error = std::current_exception();
                    }
                }
            });
        }

        std::uint64_t next_line = 1;
        while (next_chunk(reader, carry, chunk_bytes)) {
            Chunk chunk{next_line, 0, std::move(chunk_bytes)};
            chunk.line_count = count_lines(chunk.bytes);
            next_line += chunk.line_count;
            queue.push(std::move(chunk));
            chunk_bytes.clear();
        }
        queue.close();
        for (auto& t : pool) t.join();
        stats.lines_read = next_line - 1;
        if (worker_error) std::rethrow_exception(worker_error);
    }

    stats.bytes_read = reader.bytes_consumed();
    stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return stats;
}

}  // namespace yelpstream
