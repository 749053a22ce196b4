#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace fjerk::io {

/// Flat `key = value` lines; `#` starts a comment, blank lines are skipped.
/// Keys keep their file order. Throws std::invalid_argument naming the line
/// for a line without '=' or with an empty key, and for a repeated key.
std::vector<std::pair<std::string, std::string>> parse_config(const std::string& text);

std::vector<std::pair<std::string, std::string>> load_config(const std::filesystem::path& path);

}  // namespace fjerk::io
