// Copyright 2026 The SensPick Authors
// SPDX-License-Identifier: Apache-2.0

#include "senspick/encoders.hpp"

namespace senspick {

void EncoderConfig::validate() const {
  if (input_dim <= 0) throw std::invalid_argument("encoder input_dim must be positive");
  if (hidden_units <= 0) throw std::invalid_argument("hidden_units must be positive");
  if (num_layers <= 0) throw std::invalid_argument("num_layers must be positive");
  if (!(dropout >= 0.0 && dropout < 1.0)) throw std::invalid_argument("dropout must lie in [0, 1)");
}

EncoderParams EncoderParams::zeros(const EncoderConfig& config) {
  config.validate();
  const int h = config.hidden_units;
  EncoderParams p;
  p.context = {StackedLstm::zeros(config.input_dim, h, config.num_layers),
               StackedLstm::zeros(config.input_dim, h, config.num_layers)};
  p.gloss_words = {StackedLstm::zeros(config.input_dim, h, config.num_layers),
                   StackedLstm::zeros(config.input_dim, h, config.num_layers)};
  p.chain_forward = StackedLstm::zeros(2 * h, h, config.num_layers);
  p.chain_backward = StackedLstm::zeros(2 * h, h, config.num_layers);
  return p;
}

EncoderParams EncoderParams::uniform(const EncoderConfig& config, std::mt19937_64& rng, double scale) {
  EncoderParams p = zeros(config);
  std::uniform_real_distribution<double> dist(-scale, scale);
  std::vector<ParamRef> refs;
  p.collect(refs, "");
  for (auto& ref : refs) {
    for (Eigen::Index i = 0; i < ref.size(); ++i) ref.data[i] = dist(rng);
  }
  return p;
}

void EncoderParams::collect(std::vector<ParamRef>& out, const std::string& prefix) {
  context.forward.collect(out, prefix + "context.forward");
  context.backward.collect(out, prefix + "context.backward");
  gloss_words.forward.collect(out, prefix + "gloss_words.forward");
  gloss_words.backward.collect(out, prefix + "gloss_words.backward");
  chain_forward.collect(out, prefix + "chain.forward");
  chain_backward.collect(out, prefix + "chain.backward");
}

std::vector<Vec> embed_tokens(std::span<const std::string> tokens, const EmbeddingTable& table) {
  std::vector<Vec> out;
  out.reserve(tokens.size());
  for (const auto& tok : tokens) out.push_back(table.lookup(tok));
  return out;
}

namespace {

void check_input_dim(const EncoderParams& params, std::span<const Vec> embedded) {
  for (const auto& v : embedded) {
    if (v.size() != params.input_dim()) {
      throw std::invalid_argument("encoder input has dimension " + std::to_string(v.size()) + ", expected " +
                                  std::to_string(params.input_dim()));
    }
  }
}

Vec concat(const Vec& a, const Vec& b) {
  Vec out(a.size() + b.size());
  out << a, b;
  return out;
}

}  // namespace

ContextTrace encode_context(std::span<const Vec> embedded, std::size_t target_index, const EncoderParams& params,
                            Dropout* dropout) {
  if (target_index >= embedded.size()) throw std::invalid_argument("encode_context: target index outside sentence");
  check_input_dim(params, embedded);
  std::vector<Vec> right(embedded.rbegin(), embedded.rend() - static_cast<std::ptrdiff_t>(target_index) - 1);
  ContextTrace trace;
  trace.forward = run_stacked(params.context.forward, embedded.first(target_index), dropout);
  trace.backward = run_stacked(params.context.backward, right, dropout);
  trace.value = concat(trace.forward.final_hidden, trace.backward.final_hidden);
  return trace;
}

Vec encode_context(const Instance& instance, const EmbeddingTable& table, const EncoderParams& params) {
  auto embedded = embed_tokens(instance.tokens, table);
  return encode_context(embedded, instance.target_index, params).value;
}

void backward_context(const EncoderParams& params, const ContextTrace& trace, const Vec& d_value, EncoderParams& grad) {
  const Eigen::Index h = params.hidden_units();
  backward_stacked(params.context.forward, trace.forward, d_value.head(h), grad.context.forward, nullptr);
  backward_stacked(params.context.backward, trace.backward, d_value.tail(h), grad.context.backward, nullptr);
}

GlossWordsTrace encode_gloss_words(std::span<const Vec> embedded, const EncoderParams& params, Dropout* dropout) {
  if (embedded.empty()) throw std::invalid_argument("encode_gloss_words: empty gloss");
  check_input_dim(params, embedded);
  std::vector<Vec> reversed(embedded.rbegin(), embedded.rend());
  GlossWordsTrace trace;
  trace.forward = run_stacked(params.gloss_words.forward, embedded, dropout);
  trace.backward = run_stacked(params.gloss_words.backward, reversed, dropout);
  trace.value = concat(trace.forward.final_hidden, trace.backward.final_hidden);
  return trace;
}

Vec encode_gloss_words(std::span<const std::string> gloss, const EmbeddingTable& table, const EncoderParams& params) {
  auto embedded = embed_tokens(gloss, table);
  return encode_gloss_words(embedded, params).value;
}

SenseGlossTrace encode_sense_gloss(std::span<const std::vector<Vec>> entries, int m, const EncoderParams& params,
                                   Dropout* dropout) {
  const int count = static_cast<int>(entries.size());
  if (m < 0 || m >= count) throw std::invalid_argument("encode_sense_gloss: original gloss index out of range");
  SenseGlossTrace trace;
  trace.m = m;
  trace.n = count - m - 1;
  trace.entries.reserve(entries.size());
  for (const auto& entry : entries) trace.entries.push_back(encode_gloss_words(entry, params, dropout));

  // Hypernym chain read from the most distant ancestor toward g[0];
  // hyponyms read from g[n] back toward g[0].
  std::vector<Vec> up, down;
  for (int i = 0; i <= m; ++i) up.push_back(trace.entries[static_cast<std::size_t>(i)].value);
  for (int i = count - 1; i >= m; --i) down.push_back(trace.entries[static_cast<std::size_t>(i)].value);
  trace.chain_forward = run_stacked(params.chain_forward, up, dropout);
  trace.chain_backward = run_stacked(params.chain_backward, down, dropout);
  trace.value = concat(trace.chain_forward.final_hidden, trace.chain_backward.final_hidden);
  return trace;
}

void backward_sense_gloss(const EncoderParams& params, const SenseGlossTrace& trace, const Vec& d_value,
                          EncoderParams& grad) {
  const Eigen::Index h = params.hidden_units();
  std::vector<Vec> d_up, d_down;
  backward_stacked(params.chain_forward, trace.chain_forward, d_value.head(h), grad.chain_forward, &d_up);
  backward_stacked(params.chain_backward, trace.chain_backward, d_value.tail(h), grad.chain_backward, &d_down);

  const int count = static_cast<int>(trace.entries.size());
  std::vector<Vec> d_entries(trace.entries.size(), Vec::Zero(2 * h));
  for (int i = 0; i <= trace.m; ++i) d_entries[static_cast<std::size_t>(i)] += d_up[static_cast<std::size_t>(i)];
  for (int k = 0, i = count - 1; i >= trace.m; ++k, --i) {
    d_entries[static_cast<std::size_t>(i)] += d_down[static_cast<std::size_t>(k)];
  }
  for (std::size_t e = 0; e < trace.entries.size(); ++e) {
    const auto& words = trace.entries[e];
    backward_stacked(params.gloss_words.forward, words.forward, d_entries[e].head(h), grad.gloss_words.forward,
                     nullptr);
    backward_stacked(params.gloss_words.backward, words.backward, d_entries[e].tail(h), grad.gloss_words.backward,
                     nullptr);
  }
}

GlossSetTrace encode_gloss_set(std::span<const GlossSet> gloss_sets, const EmbeddingTable& table,
                               const EncoderParams& params, Dropout* dropout) {
  GlossSetTrace trace;
  const Eigen::Index width = 2 * params.hidden_units();
  trace.vectors.resize(static_cast<Eigen::Index>(gloss_sets.size()), width);
  for (std::size_t j = 0; j < gloss_sets.size(); ++j) {
    const GlossSet& set = gloss_sets[j];
    std::vector<std::vector<Vec>> embedded;
    embedded.reserve(set.entries.size());
    for (const auto& entry : set.entries) embedded.push_back(embed_tokens(entry.gloss, table));
    trace.senses.push_back(encode_sense_gloss(embedded, set.m, params, dropout));
    trace.vectors.row(static_cast<Eigen::Index>(j)) = trace.senses.back().value.transpose();
  }
  return trace;
}

Mat gloss_vectors(std::span<const GlossSet> gloss_sets, const EmbeddingTable& table, const EncoderParams& params) {
  return encode_gloss_set(gloss_sets, table, params).vectors;
}

void backward_gloss_set(const EncoderParams& params, const GlossSetTrace& trace, const Mat& d_vectors,
                        EncoderParams& grad) {
  for (std::size_t j = 0; j < trace.senses.size(); ++j) {
    Vec d = d_vectors.row(static_cast<Eigen::Index>(j)).transpose();
    if (d.isZero(0.0)) continue;
    backward_sense_gloss(params, trace.senses[j], d, grad);
  }
}

}  // namespace senspick
