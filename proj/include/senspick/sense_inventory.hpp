// Copyright 2026 The SensPick Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "senspick/common.hpp"

namespace senspick {

using SenseId = std::string;

inline constexpr int kDefaultExpansionDepth = 2;
inline constexpr int kDefaultHyponymCap = 5;

struct Sense {
  SenseId sense_id;
  std::string lemma;
  Pos pos = Pos::noun;
  std::vector<std::string> gloss;  // normalized tokens, never empty
  int rank = 1;                    // 1 = first listed sense of (lemma, pos)
};

struct GlossEntry {
  int offset = 0;  // < 0 hypernym chain, 0 own gloss, > 0 hyponyms
  std::vector<std::string> gloss;

  bool operator==(const GlossEntry&) const = default;
};

/// Expanded gloss set of one sense. `entries` is sorted by offset, so it
/// reads g[-m] ... g[-1], g[0], g[1] ... g[n].
struct GlossSet {
  SenseId sense_id;
  int m = 0;  // hypernym chain length
  int n = 0;  // hyponym count
  std::vector<GlossEntry> entries;

  const GlossEntry& at(int offset) const { return entries.at(static_cast<std::size_t>(offset + m)); }
  const GlossEntry& original() const { return at(0); }
};

/// One record of the tab-separated repo-native database format.
struct SenseRecord {
  SenseId sense_id;
  std::string lemma;
  Pos pos = Pos::noun;
  int rank = 1;
  std::vector<SenseId> hypernyms;
  std::vector<SenseId> hyponyms;
  std::string gloss_text;
};

/// Immutable sense inventory. Relations are stored in listed order; the
/// first listed hypernym of every sense forms an acyclic forest.
class SenseInventory {
 public:
  SenseInventory() = default;
  SenseInventory(const SenseInventory&) = delete;
  SenseInventory& operator=(const SenseInventory&) = delete;
  SenseInventory(SenseInventory&&) noexcept = default;
  SenseInventory& operator=(SenseInventory&&) noexcept = default;

  /// Loads either a WordNet 3.0 dict directory (index.sense + data.*) or a
  /// directory containing the native `inventory.tsv`.
  static SenseInventory load(const std::filesystem::path& directory);
  static SenseInventory load_native(const std::filesystem::path& file);
  static SenseInventory load_wordnet(const std::filesystem::path& directory);
  static SenseInventory from_records(std::vector<SenseRecord> records, const std::string& origin = "<records>");

  std::span<const Sense* const> senses_of(std::string_view lemma, Pos pos) const;
  const Sense* first_sense(std::string_view lemma, Pos pos) const;
  const Sense* find(std::string_view sense_id) const;

  std::span<const Sense* const> hypernyms(const Sense& sense) const;
  std::span<const Sense* const> hyponyms(const Sense& sense) const;

  GlossSet expand_gloss(const Sense& sense, int depth, int hyponym_cap = kDefaultHyponymCap) const;

  std::size_t size() const { return senses_.size(); }
  const std::vector<Sense>& senses() const { return senses_; }
  std::vector<LemmaKey> lemma_keys() const;
  const std::string& fingerprint() const { return fingerprint_; }

 private:
  struct Node {
    std::vector<const Sense*> hypernyms;
    std::vector<const Sense*> hyponyms;
  };

  void index(const std::string& origin);
  std::size_t position(const Sense& sense) const;

  std::vector<Sense> senses_;
  std::vector<Node> nodes_;
  std::unordered_map<std::string_view, std::size_t> by_id_;
  std::map<LemmaKey, std::vector<const Sense*>> by_lemma_;
  std::string fingerprint_;
};

}  // namespace senspick
