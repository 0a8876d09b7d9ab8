// Copyright 2026 The SensPick Authors
// SPDX-License-Identifier: Apache-2.0

#include "senspick/model.hpp"

#include <algorithm>

namespace senspick {

void ModelConfig::validate() const {
  encoder.validate();
  if (attention_passes <= 0) throw std::invalid_argument("attention_passes must be positive");
  if (k_depth < 0) throw std::invalid_argument("k_depth must be non-negative");
  if (hyponym_cap < 0) throw std::invalid_argument("hyponym_cap must be non-negative");
}

ModelState ModelState::initialize(const ModelConfig& config, const SenseLabelIndex& labels, std::uint64_t seed) {
  config.validate();
  std::mt19937_64 rng(seed);
  ModelState state;
  state.config = config;
  state.encoders = EncoderParams::uniform(config.encoder, rng);
  const int width = config.encoder.output_dim();
  state.attention = AttentionParams::uniform(width, config.attention_passes, rng);
  std::uniform_real_distribution<double> dist(-0.1, 0.1);
  for (const auto& [key, entry] : labels.entries()) {
    LemmaHead head = LemmaHead::zeros(static_cast<int>(entry.size()), width);
    for (Eigen::Index i = 0; i < head.W.size(); ++i) head.W.data()[i] = dist(rng);
    state.heads.emplace(key, std::move(head));
  }
  return state;
}

ModelState ModelState::zeros_like() const {
  ModelState copy = *this;
  for (auto& ref : copy.parameters()) std::fill(ref.data, ref.data + ref.size(), 0.0);
  return copy;
}

std::vector<ParamRef> ModelState::parameters() {
  std::vector<ParamRef> refs;
  encoders.collect(refs, "");
  attention.collect(refs, "");
  for (auto& [key, head] : heads) head.collect(refs, "head." + key.str());
  return refs;
}

std::vector<double> ModelState::flatten() const {
  std::vector<double> flat;
  for (const auto& ref : const_cast<ModelState*>(this)->parameters()) flat.insert(flat.end(), ref.data, ref.data + ref.size());
  return flat;
}

std::size_t ModelState::parameter_count() const {
  std::size_t total = 0;
  for (const auto& ref : const_cast<ModelState*>(this)->parameters()) total += static_cast<std::size_t>(ref.size());
  return total;
}

std::vector<GlossSet> expand_candidates(const SenseInventory& inventory, std::span<const Sense* const> candidates,
                                        int depth, int hyponym_cap) {
  std::vector<GlossSet> sets;
  sets.reserve(candidates.size());
  for (const Sense* sense : candidates) sets.push_back(inventory.expand_gloss(*sense, depth, hyponym_cap));
  return sets;
}

Disambiguator::Disambiguator(const ModelState& model, const SenseInventory& inventory, const EmbeddingTable& table)
    : model_(&model), inventory_(&inventory), table_(&table) {
  if (table.dim() != model.encoders.input_dim()) {
    throw std::invalid_argument("embedding dimension " + std::to_string(table.dim()) +
                                " does not match model input dimension " + std::to_string(model.encoders.input_dim()));
  }
}

const Mat& Disambiguator::gloss_vectors(const LemmaKey& key) {
  auto it = gloss_cache_.find(key);
  if (it != gloss_cache_.end()) return it->second;
  auto candidates = inventory_->senses_of(key.lemma, key.pos);
  auto sets = expand_candidates(*inventory_, candidates, model_->config.k_depth, model_->config.hyponym_cap);
  return gloss_cache_.emplace(key, senspick::gloss_vectors(sets, *table_, model_->encoders)).first->second;
}

Disambiguation Disambiguator::run(const Instance& instance) {
  auto candidates = inventory_->senses_of(instance.lemma, instance.pos);
  if (candidates.empty()) throw UnresolvableError("no inventory senses for " + instance.key().str());
  Disambiguation out;
  for (const Sense* s : candidates) out.candidates.push_back(s->sense_id);

  const Mat& glosses = gloss_vectors(instance.key());
  Vec context = encode_context(instance, *table_, model_->encoders);
  out.attention = run_attention(glosses, context, model_->attention);
  Vec s_g = gloss_score(out.attention);

  auto head = model_->heads.find(instance.key());
  if (head != model_->heads.end()) {
    if (head->second.senses() != static_cast<Eigen::Index>(candidates.size())) {
      throw std::invalid_argument("lemma head for " + instance.key().str() + " has " +
                                  std::to_string(head->second.senses()) + " classes but the inventory lists " +
                                  std::to_string(candidates.size()));
    }
    out.distribution = combine(context_score(context, head->second), s_g, head->second);
    out.used_head = true;
  } else {
    out.distribution = combine_gloss_only(s_g);
  }
  out.sense_id = predict(out.distribution, out.candidates);
  return out;
}

Disambiguation disambiguate(const Instance& instance, const ModelState& model, const SenseInventory& inventory,
                            const EmbeddingTable& table) {
  Disambiguator runner(model, inventory, table);
  return runner.run(instance);
}

const std::vector<GlossSet>& ExpansionCache::get(const LemmaKey& key) {
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  auto candidates = inventory_->senses_of(key.lemma, key.pos);
  return cache_.emplace(key, expand_candidates(*inventory_, candidates, depth_, cap_)).first->second;
}

std::optional<std::size_t> gold_class(const Instance& instance, const SenseInventory& inventory) {
  if (instance.gold_sense_ids.empty()) return std::nullopt;
  auto candidates = inventory.senses_of(instance.lemma, instance.pos);
  const SenseId& gold = instance.gold_sense_ids.front();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i]->sense_id == gold) return i;
  }
  return std::nullopt;
}

double accumulate_gradients(const ModelState& model, std::span<const Instance* const> batch,
                            const SenseInventory& inventory, const EmbeddingTable& table, ExpansionCache& expansions,
                            ModelState& grads, Dropout* dropout) {
  if (batch.empty()) return 0.0;
  const double scale = 1.0 / static_cast<double>(batch.size());

  std::map<LemmaKey, std::vector<const Instance*>> groups;
  for (const Instance* inst : batch) groups[inst->key()].push_back(inst);

  double total_loss = 0.0;
  for (const auto& [key, members] : groups) {
    auto candidates = inventory.senses_of(key.lemma, key.pos);
    auto head_it = model.heads.find(key);
    if (candidates.empty() || head_it == model.heads.end()) {
      throw TrainingError("training instance lemma " + key.str() + " has no label index entry");
    }
    const LemmaHead& head = head_it->second;
    LemmaHead& head_grad = grads.heads.at(key);
    // One candidate: the distribution is exactly [1], loss and gradient vanish.
    if (candidates.size() == 1) continue;

    const auto& sets = expansions.get(key);
    GlossSetTrace gloss_trace = encode_gloss_set(sets, table, model.encoders, dropout);
    const Mat& glosses = gloss_trace.vectors;
    Mat d_glosses = Mat::Zero(glosses.rows(), glosses.cols());

    for (const Instance* inst : members) {
      auto gold = gold_class(*inst, inventory);
      if (!gold) throw TrainingError("instance " + inst->instance_id + " has a gold label outside its lemma's senses");
      auto embedded = embed_tokens(inst->tokens, table);
      ContextTrace ctx = encode_context(embedded, inst->target_index, model.encoders, dropout);
      AttentionTrace att = run_attention(glosses, ctx.value, model.attention);
      Vec s_g = gloss_score(att);
      Vec s_c = context_score(ctx.value, head);
      SenseDistribution dist = combine(s_c, s_g, head);
      total_loss += cross_entropy(dist, *gold);

      Vec d_logits = cross_entropy_grad(dist, *gold, scale);
      CombineGrads cg = backward_combine(s_c, s_g, head, d_logits);
      Vec d_context;
      backward_context_score(ctx.value, head, cg.context_scores, head_grad, d_context);
      head_grad.lambda_raw += cg.lambda_raw;
      AttentionGrads ag = backward_attention(att, glosses, ctx.value, model.attention, cg.gloss_scores);
      grads.attention.W += ag.W;
      grads.attention.b += ag.b;
      d_glosses += ag.glosses;
      d_context += ag.context;
      backward_context(model.encoders, ctx, d_context, grads.encoders);
    }
    backward_gloss_set(model.encoders, gloss_trace, d_glosses, grads.encoders);
  }
  return total_loss * scale;
}

}  // namespace senspick
