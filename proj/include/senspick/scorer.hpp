// Copyright 2026 The SensPick Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "senspick/common.hpp"
#include "senspick/lstm.hpp"
#include "senspick/memory_attention.hpp"
#include "senspick/sense_inventory.hpp"

namespace senspick {

/// Per-(lemma, pos) output layer and mixing weight. The mixing weight is
/// sigmoid(lambda_raw), so lambda_raw = 0 blends both scores equally.
struct LemmaHead {
  Mat W;  // senses x 2H
  Vec b;
  double lambda_raw = 0.0;

  static LemmaHead zeros(int senses, int width);
  double lambda() const;
  Eigen::Index senses() const { return b.size(); }
  void collect(std::vector<ParamRef>& out, const std::string& prefix);
};

struct SenseDistribution {
  Vec probs;
};

Vec gloss_score(const AttentionTrace& trace);
Vec context_score(const Vec& context, const LemmaHead& head);

/// softmax(lambda * s_c + (1 - lambda) * s_g)
SenseDistribution combine(const Vec& context_scores, const Vec& gloss_scores, const LemmaHead& head);
/// Scoring for lemmas without a trained head: softmax(s_g).
SenseDistribution combine_gloss_only(const Vec& gloss_scores);

/// Highest-probability class; ties go to the lower class index, which is
/// the lower inventory rank.
std::size_t predict_class(const SenseDistribution& distribution);
const SenseId& predict(const SenseDistribution& distribution, std::span<const SenseId> classes);

double cross_entropy(const SenseDistribution& distribution, std::size_t gold_class);

struct CombineGrads {
  Vec context_scores;
  Vec gloss_scores;
  double lambda_raw = 0.0;
};

/// Gradients of a loss with gradient `d_logits` on the mixed logits.
CombineGrads backward_combine(const Vec& context_scores, const Vec& gloss_scores, const LemmaHead& head,
                              const Vec& d_logits);

// dL/dlogits of the cross entropy at `gold_class`, scaled by `scale`.
Vec cross_entropy_grad(const SenseDistribution& distribution, std::size_t gold_class, double scale = 1.0);

void backward_context_score(const Vec& context, const LemmaHead& head, const Vec& d_scores, LemmaHead& grad,
                            Vec& d_context);

}  // namespace senspick
