// Copyright 2026 The SensPick Authors
// SPDX-License-Identifier: Apache-2.0

#include "senspick/config_file.hpp"

#include <fstream>
#include <sstream>

#include "senspick/common.hpp"

namespace senspick {

KeyValueConfig KeyValueConfig::parse(std::string_view text, const std::string& origin) {
  KeyValueConfig config;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#' || view == "---") continue;
    auto sep = view.find_first_of(":=");
    if (sep == std::string_view::npos || sep == 0) {
      throw LoadError(origin + ":" + std::to_string(line_no) + ": expected 'key: value'");
    }
    std::string key(trim(view.substr(0, sep)));
    std::string_view value = trim(view.substr(sep + 1));
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') && value.back() == value.front()) {
      value = value.substr(1, value.size() - 2);
    } else {
      auto hash = value.find(" #");
      if (hash != std::string_view::npos) value = trim(value.substr(0, hash));
    }
    for (char& ch : key) {
      if (ch == '-') ch = '_';
    }
    config.values_[key] = std::string(value);
  }
  return config;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open config file: " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path.string());
}

std::optional<std::string> KeyValueConfig::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string KeyValueConfig::dump() const {
  std::string out;
  for (const auto& [key, value] : values_) {
    out += key;
    out += ": ";
    bool quote = value.empty() || value.find('#') != std::string::npos || value.front() == ' ' || value.back() == ' ';
    out += quote ? "\"" + value + "\"" : value;
    out += '\n';
  }
  return out;
}

}  // namespace senspick
