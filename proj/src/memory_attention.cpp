// Copyright 2026 The SensPick Authors
// SPDX-License-Identifier: Apache-2.0

#include "senspick/memory_attention.hpp"

#include <algorithm>
#include <cmath>

namespace senspick {

namespace {

// Sums in ascending order, so the result depends only on the multiset of
// terms. This keeps attention outputs exactly invariant to candidate order.
double ordered_sum(std::vector<double>& terms) {
  std::sort(terms.begin(), terms.end());
  double total = 0.0;
  for (double t : terms) total += t;
  return total;
}

}  // namespace

AttentionParams AttentionParams::zeros(int width, int passes) {
  if (width <= 0) throw std::invalid_argument("attention width must be positive");
  if (passes <= 0) throw std::invalid_argument("attention passes must be positive");
  return {Mat::Zero(width, 3 * width), Vec::Zero(width), passes};
}

AttentionParams AttentionParams::uniform(int width, int passes, std::mt19937_64& rng, double scale) {
  AttentionParams p = zeros(width, passes);
  std::uniform_real_distribution<double> dist(-scale, scale);
  for (Eigen::Index i = 0; i < p.W.size(); ++i) p.W.data()[i] = dist(rng);
  for (Eigen::Index i = 0; i < p.b.size(); ++i) p.b[i] = dist(rng);
  return p;
}

void AttentionParams::collect(std::vector<ParamRef>& out, const std::string& prefix) {
  collect_param(out, prefix + "attention.W", W);
  collect_param(out, prefix + "attention.b", b);
}

Vec softmax(const Vec& logits) {
  if (logits.size() == 0) return logits;
  // Scalar exp: the vectorized kernel can differ in the last bit between
  // packet and tail lanes, which would make results depend on position.
  const double top = logits.maxCoeff();
  Vec out(logits.size());
  for (Eigen::Index j = 0; j < logits.size(); ++j) out[j] = std::exp(logits[j] - top);
  std::vector<double> terms(out.data(), out.data() + out.size());
  return out / ordered_sum(terms);
}

Vec init_memory(const Vec& context) { return context; }

PassScores attention_pass(const Mat& glosses, const Vec& memory) {
  if (glosses.rows() == 0) throw std::invalid_argument("attention_pass: no candidate glosses");
  if (glosses.cols() != memory.size()) throw std::invalid_argument("attention_pass: gloss/memory width mismatch");
  PassScores out;
  out.scores.resize(glosses.rows());
  for (Eigen::Index j = 0; j < glosses.rows(); ++j) {
    double e = 0.0;
    for (Eigen::Index k = 0; k < memory.size(); ++k) e += glosses(j, k) * memory[k];
    out.scores[j] = e;
  }
  out.weights = softmax(out.scores);
  return out;
}

Vec update_memory(const Vec& memory, const Vec& weights, const Mat& glosses, const Vec& context,
                  const AttentionParams& params, AttentionPass* record) {
  const Eigen::Index d = params.b.size();
  if (memory.size() != d || context.size() != d || glosses.cols() != d || params.W.rows() != d ||
      params.W.cols() != 3 * d || weights.size() != glosses.rows()) {
    throw std::invalid_argument("update_memory: shape mismatch");
  }
  Vec pooled(d);
  std::vector<double> terms(static_cast<std::size_t>(glosses.rows()));
  for (Eigen::Index k = 0; k < d; ++k) {
    for (Eigen::Index j = 0; j < glosses.rows(); ++j) terms[static_cast<std::size_t>(j)] = weights[j] * glosses(j, k);
    pooled[k] = ordered_sum(terms);
  }
  Vec pre = params.W.leftCols(d) * memory + params.W.middleCols(d, d) * pooled + params.W.rightCols(d) * context +
            params.b;
  Vec next = pre.cwiseMax(0.0);
  if (record) {
    record->pooled = std::move(pooled);
    record->pre_activation = std::move(pre);
    record->memory = next;
  }
  return next;
}

AttentionTrace run_attention(const Mat& glosses, const Vec& context, const AttentionParams& params) {
  if (params.passes <= 0) throw std::invalid_argument("run_attention: passes must be positive");
  AttentionTrace trace;
  trace.initial_memory = init_memory(context);
  const Vec* memory = &trace.initial_memory;
  trace.passes.reserve(static_cast<std::size_t>(params.passes));
  for (int i = 0; i < params.passes; ++i) {
    AttentionPass pass;
    auto scored = attention_pass(glosses, *memory);
    pass.scores = std::move(scored.scores);
    pass.weights = std::move(scored.weights);
    update_memory(*memory, pass.weights, glosses, context, params, &pass);
    trace.passes.push_back(std::move(pass));
    memory = &trace.passes.back().memory;
  }
  return trace;
}

AttentionGrads backward_attention(const AttentionTrace& trace, const Mat& glosses, const Vec& context,
                                  const AttentionParams& params, const Vec& d_final_scores,
                                  const Vec* d_final_weights) {
  const Eigen::Index d = params.b.size();
  AttentionGrads grads{Mat::Zero(params.W.rows(), params.W.cols()), Vec::Zero(d),
                       Mat::Zero(glosses.rows(), glosses.cols()), Vec::Zero(d)};
  const std::size_t passes = trace.passes.size();
  auto memory_before = [&](std::size_t i) -> const Vec& {
    return i == 0 ? trace.initial_memory : trace.passes[i - 1].memory;
  };

  // The final pass's memory update feeds nothing, so the walk starts at its
  // scores and only earlier updates carry gradient.
  Vec d_scores = d_final_scores;
  if (d_final_weights) {
    const Vec& w = trace.passes.back().weights;
    d_scores += w.cwiseProduct(*d_final_weights - Vec::Constant(w.size(), w.dot(*d_final_weights)));
  }
  Vec d_memory = Vec::Zero(d);
  for (std::size_t i = passes; i-- > 0;) {
    const AttentionPass& pass = trace.passes[i];
    const Vec& m_prev = memory_before(i);
    if (i + 1 < passes) {
      // d_memory holds the gradient on pass i's output memory.
      Vec d_pre = d_memory.cwiseProduct((pass.pre_activation.array() > 0.0).cast<double>().matrix());
      grads.W.leftCols(d).noalias() += d_pre * m_prev.transpose();
      grads.W.middleCols(d, d).noalias() += d_pre * pass.pooled.transpose();
      grads.W.rightCols(d).noalias() += d_pre * context.transpose();
      grads.b += d_pre;
      Vec d_pooled = params.W.middleCols(d, d).transpose() * d_pre;
      grads.context.noalias() += params.W.rightCols(d).transpose() * d_pre;
      Vec d_m_prev = params.W.leftCols(d).transpose() * d_pre;

      grads.glosses.noalias() += pass.weights * d_pooled.transpose();
      Vec d_weights = glosses * d_pooled;
      d_scores = pass.weights.cwiseProduct(d_weights - Vec::Constant(pass.weights.size(),
                                                                      pass.weights.dot(d_weights)));
      d_memory = std::move(d_m_prev);
    } else {
      d_memory.setZero();
    }
    grads.glosses.noalias() += d_scores * m_prev.transpose();
    d_memory.noalias() += glosses.transpose() * d_scores;
    d_scores.setZero();
  }
  grads.context += d_memory;  // m^0 = c
  return grads;
}

}  // namespace senspick
