#pragma once

#include <string_view>
#include <vector>

namespace yelpstream::detail {

// Walks logical lines of a loaded config file: handles LF/CRLF, skips blank
// lines and '#' comments, and calls fn(line_no, line).
template <class Fn>
void for_each_data_line(std::string_view text, Fn&& fn) {
    size_t pos = 0;
    size_t line_no = 0;
    while (pos <= text.size()) {
        if (pos == text.size() && line_no > 0) break;
        size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line.front() == '#') continue;
        fn(line_no, line);
        if (nl == text.size()) break;
    }
}

inline std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> cols;
    size_t pos = 0;
    while (true) {
        size_t tab = line.find('\t', pos);
        if (tab == std::string_view::npos) {
            cols.push_back(line.substr(pos));
            break;
        }
        cols.push_back(line.substr(pos, tab - pos));
        pos = tab + 1;
    }
    return cols;
}

}  // namespace yelpstream::detail
