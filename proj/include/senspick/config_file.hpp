// Copyright 2026 The SensPick Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace senspick {

/// Flat "key: value" configuration text (a YAML subset: one scalar per
/// line, '#' comments, optional quotes). "key = value" is accepted too.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::string_view text, const std::string& origin = "<config>");
  static KeyValueConfig load(const std::filesystem::path& path);

  std::optional<std::string> get(const std::string& key) const;
  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }
  const std::map<std::string, std::string>& values() const { return values_; }
  std::string dump() const;

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace senspick
