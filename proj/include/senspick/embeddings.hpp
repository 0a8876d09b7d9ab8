// Copyright 2026 The SensPick Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "senspick/common.hpp"

namespace senspick {

inline constexpr int kDefaultEmbeddingDim = 300;

/// Fixed word vectors. Rows are stored in single precision to keep large
/// pre-trained files in memory; lookups widen to double.
class EmbeddingTable {
 public:
  struct LoadReport {
    std::size_t lines_read = 0;
    std::size_t loaded = 0;
    std::size_t filtered = 0;
    std::vector<std::size_t> malformed_lines;
    std::vector<std::string> duplicates;
  };

  /// Loads "token v1 ... v_dim" lines. When `keep` is given only those
  /// tokens (and their lowercased forms) are retained; the OOV vector is
  /// still the mean over every well-formed line.
  static EmbeddingTable load(const std::filesystem::path& path, int dim,
                             const std::unordered_set<std::string>* keep = nullptr, LoadReport* report = nullptr);
  static EmbeddingTable from_rows(std::vector<std::string> tokens, const Mat& rows);

  int dim() const { return dim_; }
  std::size_t vocab_size() const { return tokens_.size(); }
  bool contains(std::string_view token) const { return vocab_.count(std::string(token)) > 0; }
  std::optional<std::size_t> index_of(std::string_view token) const;
  const std::string& token(std::size_t row) const { return tokens_[row]; }
  std::span<const float> row(std::size_t index) const;
  const Vec& unk_vector() const { return unk_; }

  /// Exact match, then lowercased match, then the OOV vector.
  Vec lookup(std::string_view token) const;

  std::uint64_t checksum() const;

 private:
  int dim_ = 0;
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::size_t> vocab_;
  std::vector<float> data_;
  Vec unk_;
};

}  // namespace senspick
