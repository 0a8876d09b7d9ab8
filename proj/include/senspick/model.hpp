// Copyright 2026 The SensPick Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "senspick/corpus.hpp"
#include "senspick/embeddings.hpp"
#include "senspick/encoders.hpp"
#include "senspick/memory_attention.hpp"
#include "senspick/scorer.hpp"
#include "senspick/sense_inventory.hpp"

namespace senspick {

struct ModelConfig {
  EncoderConfig encoder;
  int attention_passes = kDefaultAttentionPasses;
  int k_depth = kDefaultExpansionDepth;
  int hyponym_cap = kDefaultHyponymCap;

  void validate() const;
};

/// Every trainable parameter of the model.
struct ModelState {
  ModelConfig config;
  EncoderParams encoders;
  AttentionParams attention;
  std::map<LemmaKey, LemmaHead> heads;

  /// Uniform(-0.1, 0.1) weights from `seed`; heads start with lambda = 0.5.
  static ModelState initialize(const ModelConfig& config, const SenseLabelIndex& labels, std::uint64_t seed);
  ModelState zeros_like() const;

  /// Stable, name-ordered list of parameter views.
  std::vector<ParamRef> parameters();
  std::vector<double> flatten() const;
  std::size_t parameter_count() const;
};

std::vector<GlossSet> expand_candidates(const SenseInventory& inventory, std::span<const Sense* const> candidates,
                                        int depth, int hyponym_cap);

struct Disambiguation {
  SenseId sense_id;
  SenseDistribution distribution;
  std::vector<SenseId> candidates;  // rank order, aligned with distribution
  AttentionTrace attention;
  bool used_head = false;
};

/// Inference pipeline with a per-lemma cache of gloss vectors. The cache
/// makes an instance of this class unsafe to share between threads.
class Disambiguator {
 public:
  Disambiguator(const ModelState& model, const SenseInventory& inventory, const EmbeddingTable& table);

  /// Throws UnresolvableError when the lemma has no inventory senses.
  Disambiguation run(const Instance& instance);
  const Mat& gloss_vectors(const LemmaKey& key);

 private:
  const ModelState* model_;
  const SenseInventory* inventory_;
  const EmbeddingTable* table_;
  std::map<LemmaKey, Mat> gloss_cache_;
};

Disambiguation disambiguate(const Instance& instance, const ModelState& model, const SenseInventory& inventory,
                            const EmbeddingTable& table);

/// Gloss expansions reused across batches; expansion does not depend on
/// parameters.
class ExpansionCache {
 public:
  ExpansionCache(const SenseInventory& inventory, int depth, int hyponym_cap)
      : inventory_(&inventory), depth_(depth), cap_(hyponym_cap) {}
  const std::vector<GlossSet>& get(const LemmaKey& key);

 private:
  const SenseInventory* inventory_;
  int depth_;
  int cap_;
  std::map<LemmaKey, std::vector<GlossSet>> cache_;
};

/// Adds the gradient of the mean cross-entropy over `batch` to `grads` and
/// returns that mean loss. Instances sharing a lemma share one gloss
/// encoding. Passing no dropout runs the network in inference mode.
double accumulate_gradients(const ModelState& model, std::span<const Instance* const> batch,
                            const SenseInventory& inventory, const EmbeddingTable& table, ExpansionCache& expansions,
                            ModelState& grads, Dropout* dropout = nullptr);

/// Index of the instance's first gold label among its lemma's senses.
std::optional<std::size_t> gold_class(const Instance& instance, const SenseInventory& inventory);

}  // namespace senspick
