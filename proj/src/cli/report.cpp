#include "report.hpp"

#include <algorithm>
#include <sstream>

namespace csurg::cli {

Report::Report(const std::string& command) { root_["command"] = command; }

void Report::row(const std::string& key, const std::string& value)
{
    root_[key] = value;
    rows_.emplace_back(key, value);
}

void Report::line(const std::string& text) { lines_.emplace_back(rows_.size(), text); }

std::string Report::table() const
{
    std::size_t width = 0;
    for (const auto& [k, v] : rows_)
        width = std::max(width, k.size());
    std::ostringstream out;
    std::size_t next_line = 0;
    auto flush_lines = [&](std::size_t upto) {
        for (; next_line < lines_.size() && lines_[next_line].first <= upto; ++next_line)
            out << lines_[next_line].second << "\n";
    };
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        flush_lines(i);
        out << rows_[i].first << std::string(width - rows_[i].first.size() + 2, ' ') << rows_[i].second << "\n";
    }
    flush_lines(rows_.size());
    return out.str();
}

std::string Report::yaml() const
{
    YAML::Emitter e;
    e << root_;
    return std::string(e.c_str()) + "\n";
}

}  // namespace csurg::cli
