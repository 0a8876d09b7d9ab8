// Copyright 2026 The SensPick Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "../support/builders.hpp"

using namespace senspick;

namespace {

EncoderParams seeded(int input_dim, int hidden, int layers, std::uint64_t seed, double scale = 0.9) {
  EncoderConfig cfg;
  cfg.input_dim = input_dim;
  cfg.hidden_units = hidden;
  cfg.num_layers = layers;
  std::mt19937_64 rng(seed);
  return EncoderParams::uniform(cfg, rng, scale);
}

std::vector<Vec> random_seq(oracle::Gen& gen, int len, int dim) {
  std::vector<Vec> xs;
  for (int i = 0; i < len; ++i) xs.push_back(gen.vec(dim, 1.5));
  return xs;
}

std::vector<oracle::V> plain(const std::vector<Vec>& xs) {
  std::vector<oracle::V> out;
  for (const auto& x : xs) out.push_back(oracle::to_v(x));
  return out;
}

}  // namespace

TEST_CASE("encoder config validation") {
  EncoderConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.output_dim() == 1024);
  cfg.hidden_units = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.dropout = 1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.num_layers = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("default-size context vector has width 1024") {
  auto params = EncoderParams::zeros(EncoderConfig{});
  std::vector<Vec> xs(3, Vec::Zero(300));
  CHECK(encode_context(xs, 1, params).value.size() == 1024);
}

TEST_CASE("empty context sides contribute zero states") {
  oracle::Gen gen(31);
  auto params = seeded(2, 2, 2, 5);
  auto xs = random_seq(gen, 4, 2);
  auto first = encode_context(xs, 0, params).value;
  CHECK(first.head(2).isZero(0.0));
  CHECK_FALSE(first.tail(2).isZero(0.0));
  auto last = encode_context(xs, 3, params).value;
  CHECK(last.tail(2).isZero(0.0));
  CHECK_FALSE(last.head(2).isZero(0.0));
  std::vector<Vec> single = {gen.vec(2)};
  CHECK(encode_context(single, 0, params).value.isZero(0.0));
  CHECK_THROWS_AS(encode_context(xs, 4, params), std::invalid_argument);
}

TEST_CASE("the target's own embedding is not consumed") {
  oracle::Gen gen(32);
  auto params = seeded(2, 3, 1, 6);
  auto xs = random_seq(gen, 5, 2);
  auto before = encode_context(xs, 2, params).value;
  xs[2] = gen.vec(2, 5.0);
  CHECK(encode_context(xs, 2, params).value == before);
}

TEST_CASE("context and gloss encoders match the step-by-step oracle") {
  oracle::Gen gen(33);
  for (int trial = 0; trial < 60; ++trial) {
    const int dim = gen.integer(1, 2), hidden = gen.integer(1, 2), layers = gen.integer(1, 2);
    auto params = seeded(dim, hidden, layers, 100 + static_cast<std::uint64_t>(trial));
    auto xs = random_seq(gen, gen.integer(1, 6), dim);
    const std::size_t t = static_cast<std::size_t>(gen.integer(0, static_cast<int>(xs.size()) - 1));
    CHECK(oracle::max_rel_err(oracle::context(params, plain(xs), t), oracle::to_v(encode_context(xs, t, params).value), 1e-300) < 1e-10);
    CHECK(oracle::max_rel_err(oracle::gloss_words(params, plain(xs)), oracle::to_v(encode_gloss_words(xs, params).value)) < 1e-10);
  }
}

TEST_CASE("gloss words: shapes, determinism and the empty-gloss error") {
  oracle::Gen gen(34);
  auto params = seeded(2, 3, 2, 7);
  std::vector<Vec> one = {gen.vec(2)};
  auto v = encode_gloss_words(one, params).value;
  CHECK(v.size() == 6);
  // One token: both directions see the same single step.
  auto fwd = run_stacked(params.gloss_words.forward, one).final_hidden;
  CHECK(v.head(3) == fwd);
  auto xs = random_seq(gen, 3, 2);
  CHECK(encode_gloss_words(xs, params).value == encode_gloss_words(xs, params).value);
  CHECK_THROWS_AS(encode_gloss_words(std::vector<Vec>{}, params), std::invalid_argument);

  // 1-dim config, 2-token gloss against the oracle.
  auto tiny = seeded(1, 1, 1, 8);
  std::vector<Vec> two = {Vec::Constant(1, 0.3), Vec::Constant(1, -0.8)};
  CHECK(oracle::max_rel_err(oracle::gloss_words(tiny, plain(two)), oracle::to_v(encode_gloss_words(two, tiny).value)) < 1e-12);
}

TEST_CASE("sense gloss chain") {
  oracle::Gen gen(35);
  auto params = seeded(1, 1, 1, 9);

  // m = n = 0: both chain directions see only g_0.
  std::vector<std::vector<Vec>> only = {random_seq(gen, 3, 1)};
  auto g0 = encode_gloss_words(only[0], params).value;
  auto single = encode_sense_gloss(only, 0, params).value;
  CHECK(single.head(1) == run_stacked(params.chain_forward, std::vector<Vec>{g0}).final_hidden);
  CHECK(single.tail(1) == run_stacked(params.chain_backward, std::vector<Vec>{g0}).final_hidden);

  // m = 1, n = 0: a two-step forward chain.
  std::vector<std::vector<Vec>> chain = {random_seq(gen, 2, 1), random_seq(gen, 2, 1)};
  std::vector<std::vector<oracle::V>> ochain = {plain(chain[0]), plain(chain[1])};
  CHECK(oracle::max_rel_err(oracle::sense_gloss(params, ochain, 1), oracle::to_v(encode_sense_gloss(chain, 1, params).value)) < 1e-12);

  for (int trial = 0; trial < 40; ++trial) {
    const int dim = gen.integer(1, 2), hidden = gen.integer(1, 2);
    auto p = seeded(dim, hidden, gen.integer(1, 2), 200 + static_cast<std::uint64_t>(trial));
    const int m = gen.integer(0, 3), n = gen.integer(0, 3);
    std::vector<std::vector<Vec>> entries;
    std::vector<std::vector<oracle::V>> oentries;
    for (int e = 0; e < m + n + 1; ++e) {
      entries.push_back(random_seq(gen, gen.integer(1, 4), dim));
      oentries.push_back(plain(entries.back()));
    }
    auto got = encode_sense_gloss(entries, m, p);
    CHECK(got.value.size() == 2 * hidden);
    CHECK(oracle::max_rel_err(oracle::sense_gloss(p, oentries, m), oracle::to_v(got.value)) < 1e-10);
  }
  CHECK_THROWS_AS(encode_sense_gloss(chain, 2, params), std::invalid_argument);
}

TEST_CASE("gloss set: order in, order out") {
  std::set<std::string> words = {"a", "b", "c", "d", "e"};
  auto table = testing::random_table(words, 2, 3);
  auto params = seeded(2, 2, 2, 10);
  std::vector<GlossSet> sets = {
      {"x", 1, 0, {{-1, {"a", "b"}}, {0, {"c"}}}},
      {"y", 0, 1, {{0, {"d"}}, {1, {"e", "a"}}}},
      {"z", 0, 0, {{0, {"b", "c", "d"}}}},
  };
  auto G = gloss_vectors(sets, table, params);
  REQUIRE(G.rows() == 3);
  CHECK(G.cols() == 4);
  std::vector<GlossSet> reordered = {sets[2], sets[0], sets[1]};
  auto R = gloss_vectors(reordered, table, params);
  CHECK(R.row(0) == G.row(2));
  CHECK(R.row(1) == G.row(0));
  CHECK(R.row(2) == G.row(1));
}

TEST_CASE("dropout acts only in training mode") {
  oracle::Gen gen(36);
  auto params = seeded(2, 3, 2, 11);
  auto xs = random_seq(gen, 5, 2);
  auto clean = encode_context(xs, 2, params).value;
  CHECK(encode_context(xs, 2, params).value == clean);
  std::mt19937_64 rng(1);
  Dropout drop(0.5, rng);
  CHECK(encode_context(xs, 2, params, &drop).value != clean);
}

TEST_CASE("encoder gradients match central differences") {
  std::set<std::string> words = {"a", "b", "c", "d"};
  auto table = testing::random_table(words, 2, 4);
  auto params = seeded(2, 2, 2, 12, 0.6);
  oracle::Gen gen(37);
  auto xs = random_seq(gen, 4, 2);
  std::vector<GlossSet> sets = {{"x", 1, 1, {{-1, {"a", "b"}}, {0, {"c"}}, {1, {"d"}}}},
                                {"y", 0, 0, {{0, {"b", "d"}}}}};
  const Vec rc = gen.vec(4);
  const Mat rg = gen.mat(2, 4);
  for (bool with_dropout : {false, true}) {
    auto objective = [&] {
      std::mt19937_64 rng(5);
      Dropout drop(0.4, rng);
      Dropout* d = with_dropout ? &drop : nullptr;
      double value = rc.dot(encode_context(xs, 1, params, d).value);
      return value + (rg.array() * encode_gloss_set(sets, table, params, d).vectors.array()).sum();
    };
    std::mt19937_64 rng(5);
    Dropout drop(0.4, rng);
    Dropout* d = with_dropout ? &drop : nullptr;
    auto ctx = encode_context(xs, 1, params, d);
    auto gl = encode_gloss_set(sets, table, params, d);
    EncoderConfig cfg;
    cfg.input_dim = 2;
    cfg.hidden_units = 2;
    auto grad = EncoderParams::zeros(cfg);
    backward_context(params, ctx, rc, grad);
    backward_gloss_set(params, gl, rg, grad);
    std::vector<ParamRef> p, g;
    params.collect(p, "");
    grad.collect(g, "");
    CHECK(testing::max_fd_error(p, g, objective, 1e-5, 1e-6) < 1e-5);
  }
}
