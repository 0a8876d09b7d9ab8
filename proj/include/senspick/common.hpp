// Copyright 2026 The SensPick Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace senspick {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class Pos { noun, verb, adj, adv };

// Accepts single-letter WordNet codes (n, v, a, s, r), long names and
// the upper-case universal tags used by the evaluation framework.
std::optional<Pos> parse_pos(std::string_view text);
char pos_code(Pos pos);
std::string_view pos_name(Pos pos);

struct LemmaKey {
  std::string lemma;
  Pos pos = Pos::noun;

  auto operator<=>(const LemmaKey&) const = default;
  std::string str() const;
};

/// Raised when a database, corpus, embedding or checkpoint file cannot be
/// read. The message names the offending file or record.
class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The pipeline cannot produce an answer for an instance (no candidate
/// senses). Evaluation catches this and backs off.
class UnresolvableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Lowercases, replaces punctuation with whitespace and splits.
std::vector<std::string> normalize_tokens(std::string_view text);

// Definition part of a WordNet-style gloss: everything before the first
// double-quoted example, without trailing separators.
std::string_view definition_segment(std::string_view gloss);

std::string to_lower(std::string_view text);
std::vector<std::string> split(std::string_view text, char sep);
std::string_view trim(std::string_view text);

/// 64-bit FNV-1a, used for content fingerprints of inventories, corpora
/// and embedding tables.
class Fingerprint {
 public:
  Fingerprint& add(std::string_view bytes);
  Fingerprint& add(std::int64_t value);
  Fingerprint& add_raw(const void* data, std::size_t size);
  std::uint64_t value() const { return hash_; }
  std::string hex() const;

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

}  // namespace senspick
