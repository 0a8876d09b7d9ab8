// Copyright 2026 The SensPick Authors
// SPDX-License-Identifier: Apache-2.0

#include "senspick/scorer.hpp"

#include <cmath>

namespace senspick {

LemmaHead LemmaHead::zeros(int senses, int width) {
  if (senses <= 0 || width <= 0) throw std::invalid_argument("lemma head needs positive shape");
  return {Mat::Zero(senses, width), Vec::Zero(senses), 0.0};
}

double LemmaHead::lambda() const {
  if (lambda_raw >= 0) return 1.0 / (1.0 + std::exp(-lambda_raw));
  double e = std::exp(lambda_raw);
  return e / (1.0 + e);
}

void LemmaHead::collect(std::vector<ParamRef>& out, const std::string& prefix) {
  collect_param(out, prefix + ".W", W);
  collect_param(out, prefix + ".b", b);
  out.push_back({prefix + ".lambda_raw", &lambda_raw, 1, 1});
}

Vec gloss_score(const AttentionTrace& trace) {
  if (trace.passes.empty()) throw std::invalid_argument("gloss_score: empty attention trace");
  return trace.final_pass().scores;
}

Vec context_score(const Vec& context, const LemmaHead& head) {
  if (head.W.cols() != context.size() || head.W.rows() != head.b.size()) {
    throw std::invalid_argument("context_score: head/context shape mismatch");
  }
  return head.W * context + head.b;
}

SenseDistribution combine(const Vec& context_scores, const Vec& gloss_scores, const LemmaHead& head) {
  if (context_scores.size() != gloss_scores.size()) throw std::invalid_argument("combine: score length mismatch");
  const double lambda = head.lambda();
  return {softmax(lambda * context_scores + (1.0 - lambda) * gloss_scores)};
}

SenseDistribution combine_gloss_only(const Vec& gloss_scores) { return {softmax(gloss_scores)}; }

std::size_t predict_class(const SenseDistribution& distribution) {
  if (distribution.probs.size() == 0) throw std::invalid_argument("predict: empty distribution");
  std::size_t best = 0;
  for (Eigen::Index j = 1; j < distribution.probs.size(); ++j) {
    if (distribution.probs[j] > distribution.probs[static_cast<Eigen::Index>(best)]) best = static_cast<std::size_t>(j);
  }
  return best;
}

const SenseId& predict(const SenseDistribution& distribution, std::span<const SenseId> classes) {
  if (static_cast<Eigen::Index>(classes.size()) != distribution.probs.size()) {
    throw std::invalid_argument("predict: distribution does not match the class list");
  }
  return classes[predict_class(distribution)];
}

double cross_entropy(const SenseDistribution& distribution, std::size_t gold_class) {
  return -std::log(distribution.probs[static_cast<Eigen::Index>(gold_class)]);
}

Vec cross_entropy_grad(const SenseDistribution& distribution, std::size_t gold_class, double scale) {
  Vec d = distribution.probs;
  d[static_cast<Eigen::Index>(gold_class)] -= 1.0;
  return d * scale;
}

CombineGrads backward_combine(const Vec& context_scores, const Vec& gloss_scores, const LemmaHead& head,
                              const Vec& d_logits) {
  const double lambda = head.lambda();
  CombineGrads g;
  g.context_scores = lambda * d_logits;
  g.gloss_scores = (1.0 - lambda) * d_logits;
  g.lambda_raw = d_logits.dot(context_scores - gloss_scores) * lambda * (1.0 - lambda);
  return g;
}

void backward_context_score(const Vec& context, const LemmaHead& head, const Vec& d_scores, LemmaHead& grad,
                            Vec& d_context) {
  grad.W.noalias() += d_scores * context.transpose();
  grad.b += d_scores;
  d_context.noalias() = head.W.transpose() * d_scores;
}

}  // namespace senspick
