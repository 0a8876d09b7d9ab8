// Copyright 2026 The SensPick Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "senspick/corpus.hpp"
#include "senspick/model.hpp"
#include "senspick/sense_inventory.hpp"
#include "senspick/training.hpp"

namespace senspick {

/// Counts for one slice of an evaluation. Rates are percentages.
struct Score {
  std::size_t attempted = 0;
  std::size_t answered = 0;  // by the system or by backoff
  std::size_t correct = 0;
  std::size_t backoff = 0;

  double precision() const;
  double recall() const;
  double f1() const;
  void add(const Score& other);
};

struct PredictionRecord {
  std::string instance_id;
  std::string dataset;
  Pos pos = Pos::noun;
  std::optional<SenseId> sense_id;  // empty when nothing could answer
  bool backoff = false;
  bool correct = false;
};

struct EvalReport {
  std::string system;
  Score overall;
  std::map<std::string, Score> datasets;
  std::map<std::string, Score> per_pos;
  std::vector<PredictionRecord> predictions;
};

/// One answer for an instance. `backoff` marks answers not produced by the
/// system under test.
struct Answer {
  std::optional<SenseId> sense_id;
  bool backoff = false;
};

struct EvalOptions {
  // Used for instance ids without a "<dataset>." prefix.
  std::string default_dataset = "eval";
  std::function<void(const Instance&, const Disambiguation&)> on_result;
};

/// Tallies answers; an answer is correct when it is one of the gold labels.
EvalReport score_answers(std::span<const Instance> instances, const std::function<Answer(const Instance&)>& answer,
                         std::string system, const EvalOptions& options = {});

/// Model answers with first-sense backoff for unresolvable instances.
/// Throws LoadError when the inventory fingerprint differs from training.
EvalReport evaluate(const Checkpoint& checkpoint, std::span<const Instance> instances, const SenseInventory& inventory,
                    const EmbeddingTable& table, const EvalOptions& options = {});

/// Most frequent training sense per lemma (ties to lower rank), first sense
/// for lemmas unseen in training.
EvalReport mfs_baseline(const SenseFrequency& frequencies, std::span<const Instance> instances,
                        const SenseInventory& inventory, const EvalOptions& options = {});

EvalReport first_sense_baseline(std::span<const Instance> instances, const SenseInventory& inventory,
                                const EvalOptions& options = {});

std::string dataset_of(const Instance& instance, const std::string& fallback);

// One decimal, half away from zero.
double round1(double value);

std::string report_json(const EvalReport& report);
/// "instance_id<TAB>sense_id" lines; unanswered instances get "-".
std::string predictions_tsv(const EvalReport& report);

}  // namespace senspick
