// Copyright 2026 The SensPick Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "senspick/common.hpp"
#include "senspick/config_file.hpp"

using namespace senspick;

TEST_CASE("part of speech codes") {
  CHECK(parse_pos("n") == Pos::noun);
  CHECK(parse_pos("s") == Pos::adj);
  CHECK(parse_pos("a") == Pos::adj);
  CHECK(parse_pos("r") == Pos::adv);
  CHECK(parse_pos("VERB") == Pos::verb);
  CHECK(parse_pos("ADJ") == Pos::adj);
  CHECK_FALSE(parse_pos("x").has_value());
  CHECK_FALSE(parse_pos("").has_value());
  for (Pos p : {Pos::noun, Pos::verb, Pos::adj, Pos::adv}) CHECK(parse_pos(std::string(1, pos_code(p))) == p);
  CHECK(LemmaKey{"bank", Pos::noun}.str() == "bank.n");
}

TEST_CASE("gloss normalization") {
  CHECK(normalize_tokens("A Sloping-land (beside) water!") ==
        std::vector<std::string>{"a", "sloping", "land", "beside", "water"});
  CHECK(normalize_tokens("  ;;  ").empty());
  CHECK(definition_segment("a domestic animal; \"the dog barked\"") == "a domestic animal");
  CHECK(definition_segment("no example here") == "no example here");
  CHECK(definition_segment("\"only an example\"").empty());
}

TEST_CASE("fingerprint is order and boundary sensitive") {
  auto fp = [](std::initializer_list<std::string_view> parts) {
    Fingerprint f;
    for (auto p : parts) f.add(p);
    return f.hex();
  };
  CHECK(fp({"ab", "c"}) == fp({"ab", "c"}));
  CHECK(fp({"ab", "c"}) != fp({"a", "bc"}));
  CHECK(fp({"a", "b"}) != fp({"b", "a"}));
  CHECK(fp({}).size() == 16);
}

TEST_CASE("key-value config text") {
  auto cfg = KeyValueConfig::parse(
      "# comment\nepochs: 200\nlearning-rate = 0.01\nname: \"a # b\"\nseed: 7 # trailing\n---\n");
  CHECK(cfg.get("epochs") == "200");
  CHECK(cfg.get("learning_rate") == "0.01");
  CHECK(cfg.get("name") == "a # b");
  CHECK(cfg.get("seed") == "7");
  CHECK_FALSE(cfg.get("missing").has_value());
  CHECK_THROWS_AS(KeyValueConfig::parse("no separator here"), LoadError);
  // dump() output parses back to the same values.
  CHECK(KeyValueConfig::parse(cfg.dump()).values() == cfg.values());
  CHECK_THROWS_AS(KeyValueConfig::load("/nonexistent/config.yaml"), LoadError);
}
