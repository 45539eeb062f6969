#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace acthom::io {

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

// Splits `text` into lines, dropping '\r' and skipping blank lines. Each entry
// carries its 1-based line number.
struct Line {
  std::size_t number;
  std::string_view text;
};
std::vector<Line> lines(std::string_view text);

std::vector<std::string_view> split_commas(std::string_view line);

// Strict numeric parsing of a whole field (surrounding spaces allowed).
bool parse_double(std::string_view field, double& out);
bool parse_index(std::string_view field, std::size_t& out);

}  // namespace acthom::io
