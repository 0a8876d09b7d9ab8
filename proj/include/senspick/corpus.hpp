// Copyright 2026 The SensPick Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "senspick/common.hpp"
#include "senspick/sense_inventory.hpp"

namespace senspick {

inline constexpr std::size_t kMaxSentenceTokens = 128;
inline constexpr std::size_t kTruncationWindow = 64;

struct Instance {
  std::string instance_id;
  std::vector<std::string> tokens;
  std::size_t target_index = 0;
  std::string lemma;
  Pos pos = Pos::noun;
  std::vector<SenseId> gold_sense_ids;  // listed order kept; the first is the training target

  LemmaKey key() const { return {lemma, pos}; }
  bool operator==(const Instance&) const = default;
};

struct SkippedRecord {
  std::size_t line = 0;
  std::string reason;
};

struct LoadReport {
  std::size_t lines_read = 0;
  std::size_t loaded = 0;
  std::size_t truncated = 0;
  std::vector<SkippedRecord> skipped;
  std::vector<std::string> notes;
};

struct CorpusLoad {
  std::vector<Instance> instances;
  LoadReport report;
};

/// Reads the native JSON-lines corpus. Malformed records are skipped and
/// reported; only a missing file is fatal. Gold labels must be senses of
/// the instance's (lemma, pos) in `inventory`.
CorpusLoad load_corpus(const std::filesystem::path& path, const SenseInventory& inventory);

/// Parses one record. Throws std::invalid_argument with the reason.
Instance parse_instance(std::string_view line);
std::string serialize_instance(const Instance& instance);
void write_corpus(const std::filesystem::path& path, std::span<const Instance> instances);

// Clips sentences longer than kMaxSentenceTokens to a window around the
// target, remapping target_index. Returns true when the instance changed.
bool truncate_around_target(Instance& instance);

std::string corpus_fingerprint(std::span<const Instance> instances);

/// Per (lemma, pos): class index c <-> sense of rank c + 1. Covers every
/// inventory sense of each lemma attested in the training data.
class SenseLabelIndex {
 public:
  struct Entry {
    std::vector<SenseId> classes;

    std::size_t size() const { return classes.size(); }
    std::optional<std::size_t> class_of(std::string_view sense_id) const;
    bool operator==(const Entry&) const = default;
  };

  const Entry* find(const LemmaKey& key) const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::map<LemmaKey, Entry>& entries() const { return entries_; }

  void insert(LemmaKey key, Entry entry) { entries_[std::move(key)] = std::move(entry); }
  bool operator==(const SenseLabelIndex&) const = default;

 private:
  std::map<LemmaKey, Entry> entries_;
};

struct LabelIndexBuild {
  SenseLabelIndex index;
  std::vector<LemmaKey> excluded;  // lemmas missing from the inventory
};

LabelIndexBuild build_label_index(std::span<const Instance> instances, const SenseInventory& inventory);

/// Gold-label counts per (lemma, pos). Multi-gold instances count once for
/// each listed label.
using SenseFrequency = std::map<LemmaKey, std::map<SenseId, std::size_t>>;

SenseFrequency sense_frequencies(std::span<const Instance> instances);

}  // namespace senspick
