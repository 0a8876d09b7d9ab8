// Copyright 2026 The SensPick Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "senspick/corpus.hpp"
#include "senspick/embeddings.hpp"
#include "senspick/model.hpp"
#include "senspick/sense_inventory.hpp"

namespace senspick {

struct TrainConfig {
  double learning_rate = 0.001;
  int epochs = 100;
  double dropout = 0.5;
  int batch_size = 32;
  int k_depth = kDefaultExpansionDepth;
  int attention_passes = kDefaultAttentionPasses;
  std::uint64_t seed = 1;
  double grad_clip = 5.0;
  double dev_split = 0.1;
  int hyponym_cap = kDefaultHyponymCap;

  void validate() const;
};

struct EpochLog {
  int epoch = 0;
  double train_loss = 0.0;
  std::optional<double> dev_accuracy;
};

struct Checkpoint {
  static constexpr int kFormatVersion = 1;

  ModelState model;
  TrainConfig train_config;
  SenseLabelIndex labels;
  SenseFrequency frequencies;  // training split only, for the MFS baseline
  std::string corpus_fingerprint;
  std::string inventory_fingerprint;
  std::uint64_t embedding_checksum = 0;
  int epoch = 0;
  std::optional<double> dev_accuracy;
  std::map<std::string, std::string> provenance;  // free-form, e.g. input paths
};

void save_checkpoint(const Checkpoint& checkpoint, const std::filesystem::path& path);
/// Throws LoadError on truncation, corruption or a format version mismatch.
Checkpoint load_checkpoint(const std::filesystem::path& path);

/// Sets the inference-time expansion depth. The trained depth is recorded
/// in the checkpoint; a different value is applied but returns a warning.
std::optional<std::string> override_k_depth(Checkpoint& checkpoint, int k_depth);

/// Adam with global-norm gradient clipping over every model parameter.
class Trainer {
 public:
  Trainer(ModelState& model, const SenseInventory& inventory, const EmbeddingTable& table, const TrainConfig& config);

  /// One forward/backward/update on `batch`; returns the mean batch loss
  /// computed before the update. Throws TrainingError on a non-finite loss.
  double step(std::span<const Instance* const> batch, const std::string& label = "batch");
  double last_gradient_norm() const { return last_norm_; }
  std::size_t steps_taken() const { return steps_; }

 private:
  ModelState* model_;
  const SenseInventory* inventory_;
  const EmbeddingTable* table_;
  TrainConfig config_;
  ExpansionCache expansions_;
  ModelState grads_;
  std::vector<double> first_moment_;
  std::vector<double> second_moment_;
  std::mt19937_64 dropout_rng_;
  std::size_t steps_ = 0;
  double last_norm_ = 0.0;
};

struct TrainResult {
  Checkpoint final_checkpoint;
  Checkpoint best_checkpoint;  // highest dev accuracy, final when there is no dev split
  std::vector<EpochLog> log;
  double first_batch_loss = 0.0;
  std::vector<std::string> skipped;   // instances unusable for training
  std::vector<std::size_t> dev_rows;  // positions in the input corpus
  bool embeddings_unchanged = true;
};

using EpochCallback = std::function<void(const EpochLog&)>;

/// Splits off a seeded dev fraction, trains for `config.epochs` and keeps
/// both the final and the best-dev model.
TrainResult train(std::span<const Instance> corpus, const SenseInventory& inventory, const EmbeddingTable& table,
                  const TrainConfig& config, EncoderConfig encoder, const EpochCallback& on_epoch = {});

double accuracy(const ModelState& model, std::span<const Instance> instances, const SenseInventory& inventory,
                const EmbeddingTable& table);

std::string epoch_log_csv(std::span<const EpochLog> log);

}  // namespace senspick
