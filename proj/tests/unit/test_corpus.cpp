// Copyright 2026 The SensPick Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <fstream>

#include "../support/builders.hpp"
#include "../support/fixtures.hpp"

using namespace senspick;
using testing::instance;

namespace {

SenseInventory toy() { return SenseInventory::load(testing::fixture_dir() / "toy"); }

std::filesystem::path write_lines(const std::string& name, const std::vector<std::string>& lines) {
  auto path = testing::scratch_dir("corpus") / name;
  std::ofstream out(path, std::ios::binary);
  for (const auto& l : lines) out << l << '\n';
  return path;
}

}  // namespace

TEST_CASE("parse and serialize instance records") {
  auto inst = parse_instance(R"({"id":"d1.s1.t1","tokens":["Turn","the","KEY"],"target":2,"lemma":"Key","pos":"n","gold":["key%1"]})");
  CHECK(inst.instance_id == "d1.s1.t1");
  CHECK(inst.tokens == std::vector<std::string>{"turn", "the", "key"});
  CHECK(inst.target_index == 2);
  CHECK(inst.lemma == "key");
  CHECK(inst.pos == Pos::noun);
  CHECK(parse_instance(serialize_instance(inst)) == inst);

  CHECK_THROWS_AS(parse_instance("not json"), std::invalid_argument);
  CHECK_THROWS_AS(parse_instance(R"({"id":"x","tokens":["a"],"target":1,"lemma":"a","pos":"n","gold":["a%1"]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_instance(R"({"id":"x","tokens":["a"],"target":-1,"lemma":"a","pos":"n","gold":["a%1"]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_instance(R"({"id":"x","tokens":[],"target":0,"lemma":"a","pos":"n","gold":["a%1"]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_instance(R"({"id":"x","tokens":["a"],"target":0,"lemma":"a","pos":"n","gold":[]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_instance(R"({"id":"x","tokens":["a"],"target":0,"lemma":"a","pos":"s","gold":["a%1"]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      parse_instance(R"({"id":"x","tokens":["a"],"target":0,"lemma":"a","pos":"n","gold":["a%1"],"extra":1})"),
      std::invalid_argument);
  CHECK_THROWS_AS(parse_instance(R"({"id":"x","tokens":["a"],"target":0,"lemma":"a","gold":["a%1"]})"),
                  std::invalid_argument);
}

TEST_CASE("load_corpus keeps good records and reports bad ones") {
  auto inv = toy();
  auto path = write_lines("mixed.jsonl", {
      R"({"id":"a","tokens":["turn","the","key"],"target":2,"lemma":"key","pos":"n","gold":["key%1"]})",
      R"({"id":"b","tokens":["the","key"],"target":2,"lemma":"key","pos":"n","gold":["key%1"]})",
      R"({broken)",
      "",
      R"({"id":"c","tokens":["a","key","list"],"target":1,"lemma":"key","pos":"n","gold":["key%2","key%3"]})",
      R"({"id":"d","tokens":["key"],"target":0,"lemma":"key","pos":"n","gold":["nope%9"]})",
      R"({"id":"e","tokens":["open","it"],"target":0,"lemma":"open","pos":"v","gold":["key%1"]})",
  });
  auto load = load_corpus(path, inv);
  REQUIRE(load.instances.size() == 3);
  CHECK(load.instances[0].instance_id == "a");
  CHECK(load.instances[1].instance_id == "c");
  CHECK(load.instances[1].gold_sense_ids == std::vector<std::string>{"key%2", "key%3"});
  CHECK(load.instances[2].instance_id == "e");  // kept, with a note
  CHECK_FALSE(load.report.notes.empty());
  REQUIRE(load.report.skipped.size() == 3);
  CHECK(load.report.skipped[0].line == 2);  // target >= T
  CHECK(load.report.skipped[1].line == 3);
  CHECK(load.report.skipped[2].line == 6);
  CHECK(load.report.skipped[2].reason.find("nope%9") != std::string::npos);
  CHECK(load.report.loaded == 3);

  CHECK_THROWS_AS(load_corpus(path.parent_path() / "absent.jsonl", inv), LoadError);
  std::filesystem::remove_all(path.parent_path());
}

TEST_CASE("two-line file gives two instances with ids preserved") {
  auto inv = toy();
  auto path = write_lines("two.jsonl", {
      R"({"id":"first","tokens":["key"],"target":0,"lemma":"key","pos":"n","gold":["key%1"]})",
      R"({"id":"second","tokens":["open"],"target":0,"lemma":"open","pos":"v","gold":["open%2"]})",
  });
  auto load = load_corpus(path, inv);
  REQUIRE(load.instances.size() == 2);
  CHECK(load.instances[0].instance_id == "first");
  CHECK(load.instances[1].instance_id == "second");
  std::filesystem::remove_all(path.parent_path());
}

TEST_CASE("round trip through the corpus format") {
  auto inv = toy();
  auto original = load_corpus(testing::fixture_dir() / "toy" / "first_sense.jsonl", inv).instances;
  auto dir = testing::scratch_dir("roundtrip");
  write_corpus(dir / "out.jsonl", original);
  CHECK(load_corpus(dir / "out.jsonl", inv).instances == original);
  std::filesystem::remove_all(dir);
}

TEST_CASE("long sentences are truncated around the target") {
  std::vector<std::string> tokens;
  for (int i = 0; i < 300; ++i) tokens.push_back("w" + std::to_string(i));
  auto check_window = [&](std::size_t target) {
    auto inst = instance("x", tokens, target, "w", {"w%1"});
    CHECK(truncate_around_target(inst));
    CHECK(inst.tokens.size() == kMaxSentenceTokens);
    CHECK(inst.tokens[inst.target_index] == tokens[target]);
    return inst.target_index;
  };
  CHECK(check_window(150) == kTruncationWindow);
  CHECK(check_window(3) == 3);
  CHECK(check_window(299) == 127);
  auto short_inst = instance("y", {"a", "b"}, 1, "b", {"b%1"});
  CHECK_FALSE(truncate_around_target(short_inst));
  CHECK(short_inst.tokens.size() == 2);
}

TEST_CASE("label index covers every inventory sense in rank order") {
  auto inv = toy();
  std::vector<Instance> insts = {instance("a", {"key"}, 0, "key", {"key%2"}),
                                 instance("b", {"open"}, 0, "open", {"open%1"}, Pos::verb),
                                 instance("c", {"zzz"}, 0, "zzz", {"zzz%1"})};
  auto built = build_label_index(insts, inv);
  const auto* key = built.index.find({"key", Pos::noun});
  REQUIRE(key != nullptr);
  CHECK(key->size() == 3);  // one attested sense, three in the inventory
  CHECK(key->classes[0] == "key%1");
  CHECK(key->class_of("key%3") == 2u);
  CHECK_FALSE(key->class_of("open%1").has_value());
  CHECK(built.index.find({"open", Pos::verb})->classes[0] == "open%1");
  REQUIRE(built.excluded.size() == 1);
  CHECK(built.excluded[0].lemma == "zzz");
  CHECK(build_label_index({}, inv).index.empty());

  // Stable under reordering.
  std::vector<Instance> reversed(insts.rbegin(), insts.rend());
  CHECK(build_label_index(reversed, inv).index == built.index);
}

TEST_CASE("sense frequencies") {
  std::vector<Instance> insts = {instance("1", {"k"}, 0, "key", {"A"}), instance("2", {"k"}, 0, "key", {"A"}),
                                 instance("3", {"k"}, 0, "key", {"B"})};
  auto freq = sense_frequencies(insts);
  CHECK(freq.at({"key", Pos::noun}) == std::map<SenseId, std::size_t>{{"A", 2}, {"B", 1}});
  CHECK(sense_frequencies({}).empty());

  // Conservation over a random ten-instance corpus with multi-gold entries.
  oracle::Gen gen(5);
  std::vector<Instance> many;
  std::size_t labels = 0;
  for (int i = 0; i < 10; ++i) {
    std::vector<std::string> gold;
    for (int g = 0, n = gen.integer(1, 3); g < n; ++g) gold.push_back("s" + std::to_string(g));
    labels += gold.size();
    many.push_back(instance(std::to_string(i), {"w"}, 0, "w" + std::to_string(gen.integer(0, 2)), gold));
  }
  std::size_t total = 0;
  for (const auto& [key, counts] : sense_frequencies(many))
    for (const auto& [sense, n] : counts) {
      CHECK(n >= 1);
      total += n;
    }
  CHECK(total == labels);
}

TEST_CASE("corpus fingerprint tracks content") {
  auto inv = toy();
  auto insts = load_corpus(testing::fixture_dir() / "toy" / "first_sense.jsonl", inv).instances;
  auto fp = corpus_fingerprint(insts);
  CHECK(fp == corpus_fingerprint(insts));
  insts[0].gold_sense_ids[0] = "key%3";
  CHECK(fp != corpus_fingerprint(insts));
}
