// Copyright 2026 The SensPick Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "../support/oracle.hpp"
#include "senspick/scorer.hpp"

using namespace senspick;

namespace {

Vec vec(std::initializer_list<double> v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

double total_variation(const Vec& a, const Vec& b) { return 0.5 * (a - b).cwiseAbs().sum(); }

}  // namespace

TEST_CASE("context scores: zero weights give the bias, zero context gives the bias") {
  auto head = LemmaHead::zeros(3, 4);
  head.b << 0.5, -1.0, 2.0;
  oracle::Gen gen(51);
  CHECK(context_score(gen.vec(4), head) == head.b);
  head.W = gen.mat(3, 4);
  CHECK(context_score(Vec::Zero(4), head) == head.b);
}

TEST_CASE("context scores: hand 2x2 product") {
  auto head = LemmaHead::zeros(2, 2);
  head.W << 1, 2, 3, 4;
  head.b << 0.5, -0.5;
  auto s = context_score(vec({1.0, -1.0}), head);
  CHECK(s[0] == -0.5);
  CHECK(s[1] == -1.5);
  CHECK_THROWS_AS(context_score(Vec::Zero(3), head), std::invalid_argument);
}

TEST_CASE("mixing weight limits") {
  auto head = LemmaHead::zeros(3, 1);
  CHECK(head.lambda() == 0.5);
  const Vec sc = vec({2.0, -1.0, 0.5}), sg = vec({-0.3, 1.7, 0.2});
  head.lambda_raw = 20.0;
  CHECK(total_variation(combine(sc, sg, head).probs, softmax(sc)) < 1e-6);
  head.lambda_raw = -20.0;
  CHECK(total_variation(combine(sc, sg, head).probs, softmax(sg)) < 1e-6);
  head.lambda_raw = 0.0;
  CHECK(total_variation(combine(sc, sg, head).probs, softmax(0.5 * (sc + sg))) < 1e-15);
  head.lambda_raw = -800.0;
  CHECK(std::isfinite(head.lambda()));
  CHECK(head.lambda() >= 0.0);
}

TEST_CASE("equal blend worked example") {
  // lambda = 0.5, s_c = [2, 0], s_g = [0, 2]: both logits equal 1.
  auto head = LemmaHead::zeros(2, 1);
  auto p = combine(vec({2.0, 0.0}), vec({0.0, 2.0}), head).probs;
  CHECK(p[0] == doctest::Approx(0.5));
  CHECK(p[1] == doctest::Approx(0.5));
  // s_c = [ln 3, 0], s_g = [ln 3, 0]: p = [3/4, 1/4].
  auto q = combine(vec({std::log(3.0), 0.0}), vec({std::log(3.0), 0.0}), head).probs;
  CHECK(q[0] == doctest::Approx(0.75));
  CHECK(q[1] == doctest::Approx(0.25));
}

TEST_CASE("property: distributions normalize and are shift invariant") {
  oracle::Gen gen(52);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = gen.integer(1, 8);
    auto head = LemmaHead::zeros(n, 1);
    head.lambda_raw = gen.real(-6, 6);
    const Vec sc = gen.vec(n, 10.0), sg = gen.vec(n, 10.0);
    auto p = combine(sc, sg, head).probs;
    CHECK(std::abs(p.sum() - 1.0) < 1e-12);
    CHECK(p.minCoeff() >= 0.0);
    const double shift = gen.real(-50, 50);
    auto shifted = combine(sc.array() + shift, sg.array() + shift, head).probs;
    CHECK(total_variation(p, shifted) < 1e-9);
    auto gloss_only = combine_gloss_only(sg).probs;
    CHECK(oracle::max_rel_err(oracle::to_v(gloss_only), oracle::to_v(softmax(sg))) == 0.0);
  }
}

TEST_CASE("prediction ties choose the lower rank") {
  SenseDistribution d{vec({0.25, 0.375, 0.375})};
  CHECK(predict_class(d) == 1);
  std::vector<SenseId> classes = {"a%1", "a%2", "a%3"};
  CHECK(predict(d, classes) == "a%2");
  SenseDistribution flat{Vec::Constant(4, 0.25)};
  CHECK(predict_class(flat) == 0);
  SenseDistribution single{Vec::Constant(1, 1.0)};
  CHECK(predict_class(single) == 0);
  CHECK_THROWS_AS(predict(d, std::vector<SenseId>{"a%1"}), std::invalid_argument);
  CHECK_THROWS_AS(predict_class(SenseDistribution{Vec()}), std::invalid_argument);
}

TEST_CASE("single-sense lemmas get probability one") {
  auto head = LemmaHead::zeros(1, 3);
  head.b << 7.0;
  CHECK(combine(vec({-4.0}), vec({12.0}), head).probs[0] == 1.0);
  CHECK(combine_gloss_only(vec({-3.0})).probs[0] == 1.0);
}

TEST_CASE("cross entropy") {
  SenseDistribution uniform{Vec::Constant(4, 0.25)};
  CHECK(cross_entropy(uniform, 2) == doctest::Approx(std::log(4.0)));
  SenseDistribution sure{vec({0.0, 1.0})};
  CHECK(cross_entropy(sure, 1) == 0.0);
  auto g = cross_entropy_grad(uniform, 2, 0.5);
  CHECK(g[0] == doctest::Approx(0.125));
  CHECK(g[2] == doctest::Approx(-0.375));
  CHECK(std::abs(g.sum()) < 1e-15);
  CHECK_THROWS_AS(combine(vec({1.0}), vec({1.0, 2.0}), LemmaHead::zeros(2, 1)), std::invalid_argument);
}

TEST_CASE("combine gradients match central differences") {
  oracle::Gen gen(53);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = gen.integer(2, 5);
    auto head = LemmaHead::zeros(n, 1);
    head.lambda_raw = gen.real(-3, 3);
    Vec sc = gen.vec(n, 2.0), sg = gen.vec(n, 2.0);
    const std::size_t gold = static_cast<std::size_t>(gen.integer(0, n - 1));
    auto loss = [&] { return cross_entropy(combine(sc, sg, head), gold); };
    auto grads = backward_combine(sc, sg, head, cross_entropy_grad(combine(sc, sg, head), gold));
    const double h = 1e-6;
    auto central = [&](double& x) {
      const double saved = x;
      x = saved + h;
      const double up = loss();
      x = saved - h;
      const double down = loss();
      x = saved;
      return (up - down) / (2 * h);
    };
    CHECK(grads.lambda_raw == doctest::Approx(central(head.lambda_raw)).epsilon(1e-6).scale(1e-8));
    for (int j = 0; j < n; ++j) {
      CHECK(grads.context_scores[j] == doctest::Approx(central(sc[j])).epsilon(1e-6).scale(1e-8));
      CHECK(grads.gloss_scores[j] == doctest::Approx(central(sg[j])).epsilon(1e-6).scale(1e-8));
    }
  }
}
