#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gridx::csv {

/// Comma separated table with a header row. Blank lines and lines starting
/// with '#' are skipped; fields are trimmed.
struct Table {
    std::filesystem::path source;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers; // 1-based source line of each row

    std::optional<std::size_t> column(std::string_view name) const;
    std::size_t require_column(std::string_view name) const;
};

Table read(const std::filesystem::path& path);
Table parse(std::string_view text, std::filesystem::path source = "<memory>");

double to_double(std::string_view field, std::string_view context);
long long to_integer(std::string_view field, std::string_view context);

/// Shortest text that round-trips the double exactly.
std::string format_number(double value);

} // namespace gridx::csv
