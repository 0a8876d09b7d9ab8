// Copyright 2026 The SensPick Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <random>
#include <vector>

#include "senspick/common.hpp"
#include "senspick/lstm.hpp"

namespace senspick {

inline constexpr int kDefaultAttentionPasses = 3;

/// Memory update m' = ReLU(W [m : p : c] + b) with W of shape d x 3d.
struct AttentionParams {
  Mat W;
  Vec b;
  int passes = kDefaultAttentionPasses;

  static AttentionParams zeros(int width, int passes = kDefaultAttentionPasses);
  static AttentionParams uniform(int width, int passes, std::mt19937_64& rng, double scale = 0.1);
  int width() const { return static_cast<int>(b.size()); }
  void collect(std::vector<ParamRef>& out, const std::string& prefix);
};

struct AttentionPass {
  Vec scores;          // e: one raw score per sense
  Vec weights;         // softmax(e)
  Vec pooled;          // p = sum_j weights_j g_j
  Vec pre_activation;  // W [m : p : c] + b
  Vec memory;          // ReLU(pre_activation)
};

struct AttentionTrace {
  Vec initial_memory;
  std::vector<AttentionPass> passes;

  const AttentionPass& final_pass() const { return passes.back(); }
};

/// Max-subtracted softmax.
Vec softmax(const Vec& logits);

Vec init_memory(const Vec& context);

struct PassScores {
  Vec scores;
  Vec weights;
};

/// Scores are dot products of each gloss vector (rows of `glosses`) with
/// the previous memory; the context enters only through the memory.
PassScores attention_pass(const Mat& glosses, const Vec& memory);

Vec update_memory(const Vec& memory, const Vec& weights, const Mat& glosses, const Vec& context,
                  const AttentionParams& params, AttentionPass* record = nullptr);

AttentionTrace run_attention(const Mat& glosses, const Vec& context, const AttentionParams& params);

struct AttentionGrads {
  Mat W;
  Vec b;
  Mat glosses;
  Vec context;
};

/// Backpropagates gradients on the final pass's raw scores and, optionally,
/// on its normalized weights.
AttentionGrads backward_attention(const AttentionTrace& trace, const Mat& glosses, const Vec& context,
                                  const AttentionParams& params, const Vec& d_final_scores,
                                  const Vec* d_final_weights = nullptr);

}  // namespace senspick
