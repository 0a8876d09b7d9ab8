// Copyright 2026 The SensPick Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <random>
#include <span>
#include <vector>

#include "senspick/corpus.hpp"
#include "senspick/embeddings.hpp"
#include "senspick/lstm.hpp"
#include "senspick/sense_inventory.hpp"

namespace senspick {

struct EncoderConfig {
  int input_dim = kDefaultEmbeddingDim;
  int hidden_units = 512;  // per direction
  int num_layers = 2;
  double dropout = 0.5;

  int output_dim() const { return 2 * hidden_units; }
  void validate() const;
};

struct BiLstm {
  StackedLstm forward;
  StackedLstm backward;
};

/// All encoder weights. The context and gloss-word encoders are separate
/// networks; the chain encoders read 2H-wide gloss vectors and emit H
/// units each, so a gloss vector has the same width as the context vector.
struct EncoderParams {
  BiLstm context;
  BiLstm gloss_words;
  StackedLstm chain_forward;
  StackedLstm chain_backward;

  static EncoderParams zeros(const EncoderConfig& config);
  static EncoderParams uniform(const EncoderConfig& config, std::mt19937_64& rng, double scale = 0.1);
  int hidden_units() const { return context.forward.hidden_dim(); }
  int input_dim() const { return context.forward.input_dim(); }
  void collect(std::vector<ParamRef>& out, const std::string& prefix);
};

std::vector<Vec> embed_tokens(std::span<const std::string> tokens, const EmbeddingTable& table);

struct ContextTrace {
  StackedTrace forward;   // over x_0 .. x_{t-1}
  StackedTrace backward;  // over x_{T-1} .. x_{t+1}
  Vec value;              // [forward final : backward final]
};

/// The target token itself is consumed by neither direction; an empty side
/// contributes a zero state.
ContextTrace encode_context(std::span<const Vec> embedded, std::size_t target_index, const EncoderParams& params,
                            Dropout* dropout = nullptr);
Vec encode_context(const Instance& instance, const EmbeddingTable& table, const EncoderParams& params);
void backward_context(const EncoderParams& params, const ContextTrace& trace, const Vec& d_value, EncoderParams& grad);

struct GlossWordsTrace {
  StackedTrace forward;
  StackedTrace backward;
  Vec value;
};

GlossWordsTrace encode_gloss_words(std::span<const Vec> embedded, const EncoderParams& params,
                                   Dropout* dropout = nullptr);
Vec encode_gloss_words(std::span<const std::string> gloss, const EmbeddingTable& table, const EncoderParams& params);

struct SenseGlossTrace {
  int m = 0;
  int n = 0;
  std::vector<GlossWordsTrace> entries;  // entry index = offset + m
  StackedTrace chain_forward;            // g[-m] .. g[0]
  StackedTrace chain_backward;           // g[n] .. g[0]
  Vec value;
};

/// Encodes one expanded gloss set given the embedded tokens of each entry,
/// ordered by offset -m .. n.
SenseGlossTrace encode_sense_gloss(std::span<const std::vector<Vec>> entries, int m, const EncoderParams& params,
                                   Dropout* dropout = nullptr);
void backward_sense_gloss(const EncoderParams& params, const SenseGlossTrace& trace, const Vec& d_value,
                          EncoderParams& grad);

struct GlossSetTrace {
  std::vector<SenseGlossTrace> senses;
  Mat vectors;  // one row per candidate sense
};

GlossSetTrace encode_gloss_set(std::span<const GlossSet> gloss_sets, const EmbeddingTable& table,
                               const EncoderParams& params, Dropout* dropout = nullptr);
Mat gloss_vectors(std::span<const GlossSet> gloss_sets, const EmbeddingTable& table, const EncoderParams& params);
void backward_gloss_set(const EncoderParams& params, const GlossSetTrace& trace, const Mat& d_vectors,
                        EncoderParams& grad);

}  // namespace senspick
