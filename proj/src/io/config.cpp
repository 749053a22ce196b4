#include "fjerk/io/config.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "fjerk/io/csv.hpp"

namespace fjerk::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<std::pair<std::string, std::string>> parse_config(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string key = eq == std::string::npos ? std::string{} : trim(line.substr(0, eq));
    if (key.empty()) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
    }
    if (std::any_of(out.begin(), out.end(), [&key](const auto& kv) { return kv.first == key; })) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": repeated key '" + key + "'");
    }
    out.emplace_back(key, trim(line.substr(eq + 1)));
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> load_config(const std::filesystem::path& path) {
  return parse_config(read_text(path));
}

}  // namespace fjerk::io
