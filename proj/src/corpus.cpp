// Copyright 2026 The SensPick Authors
// SPDX-License-Identifier: Apache-2.0

#include "senspick/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <json.hpp>

namespace senspick {

namespace {

const std::set<std::string>& expected_keys() {
  static const std::set<std::string> keys{"id", "tokens", "target", "lemma", "pos", "gold"};
  return keys;
}

}  // namespace

Instance parse_instance(std::string_view line) {
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
  if (!obj.is_object()) throw std::invalid_argument("record is not a JSON object");
  std::set<std::string> keys;
  for (auto it = obj.begin(); it != obj.end(); ++it) keys.insert(it.key());
  if (keys != expected_keys()) throw std::invalid_argument("record keys must be exactly id, tokens, target, lemma, pos, gold");

  Instance inst;
  if (!obj["id"].is_string()) throw std::invalid_argument("id must be a string");
  inst.instance_id = obj["id"].get<std::string>();
  if (!obj["tokens"].is_array() || obj["tokens"].empty()) throw std::invalid_argument("tokens must be a non-empty array");
  for (const auto& tok : obj["tokens"]) {
    if (!tok.is_string()) throw std::invalid_argument("tokens must be strings");
    inst.tokens.push_back(to_lower(tok.get<std::string>()));
  }
  if (!obj["target"].is_number_integer()) throw std::invalid_argument("target must be an integer");
  auto target = obj["target"].get<long long>();
  if (target < 0 || static_cast<std::size_t>(target) >= inst.tokens.size()) {
    throw std::invalid_argument("target index " + std::to_string(target) + " outside sentence of " +
                                std::to_string(inst.tokens.size()) + " tokens");
  }
  inst.target_index = static_cast<std::size_t>(target);
  if (!obj["lemma"].is_string() || obj["lemma"].get<std::string>().empty()) {
    throw std::invalid_argument("lemma must be a non-empty string");
  }
  inst.lemma = to_lower(obj["lemma"].get<std::string>());
  std::replace(inst.lemma.begin(), inst.lemma.end(), ' ', '_');
  if (!obj["pos"].is_string()) throw std::invalid_argument("pos must be a string");
  auto pos_text = obj["pos"].get<std::string>();
  if (pos_text.size() != 1 || std::string_view("nvar").find(pos_text[0]) == std::string_view::npos) {
    throw std::invalid_argument("pos must be one of n, v, a, r");
  }
  inst.pos = *parse_pos(pos_text);
  if (!obj["gold"].is_array() || obj["gold"].empty()) throw std::invalid_argument("gold must be a non-empty array");
  for (const auto& g : obj["gold"]) {
    if (!g.is_string()) throw std::invalid_argument("gold labels must be strings");
    inst.gold_sense_ids.push_back(g.get<std::string>());
  }
  return inst;
}

std::string serialize_instance(const Instance& instance) {
  nlohmann::ordered_json obj;
  obj["id"] = instance.instance_id;
  obj["tokens"] = instance.tokens;
  obj["target"] = instance.target_index;
  obj["lemma"] = instance.lemma;
  obj["pos"] = std::string(1, pos_code(instance.pos));
  obj["gold"] = instance.gold_sense_ids;
  return obj.dump();
}

void write_corpus(const std::filesystem::path& path, std::span<const Instance> instances) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw LoadError("cannot write corpus file: " + path.string());
  for (const auto& inst : instances) out << serialize_instance(inst) << '\n';
}

bool truncate_around_target(Instance& instance) {
  const std::size_t total = instance.tokens.size();
  if (total <= kMaxSentenceTokens) return false;
  std::size_t start = instance.target_index > kTruncationWindow ? instance.target_index - kTruncationWindow : 0;
  std::size_t end = std::min(total, start + kMaxSentenceTokens);
  start = end - kMaxSentenceTokens;
  instance.tokens = std::vector<std::string>(instance.tokens.begin() + static_cast<std::ptrdiff_t>(start),
                                             instance.tokens.begin() + static_cast<std::ptrdiff_t>(end));
  instance.target_index -= start;
  return true;
}

CorpusLoad load_corpus(const std::filesystem::path& path, const SenseInventory& inventory) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open corpus file: " + path.string());
  CorpusLoad result;
  std::string line;
  while (std::getline(in, line)) {
    ++result.report.lines_read;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const std::size_t line_no = result.report.lines_read;
    Instance inst;
    try {
      inst = parse_instance(line);
    } catch (const std::invalid_argument& e) {
      result.report.skipped.push_back({line_no, e.what()});
      continue;
    }
    std::string unresolved;
    for (const auto& gold : inst.gold_sense_ids) {
      if (!inventory.find(gold)) {
        unresolved = gold;
        break;
      }
    }
    if (!unresolved.empty()) {
      result.report.skipped.push_back({line_no, "gold sense '" + unresolved + "' not in inventory"});
      continue;
    }
    auto candidates = inventory.senses_of(inst.lemma, inst.pos);
    for (const auto& gold : inst.gold_sense_ids) {
      bool listed = std::any_of(candidates.begin(), candidates.end(),
                                [&](const Sense* s) { return s->sense_id == gold; });
      if (!listed) {
        result.report.notes.push_back("line " + std::to_string(line_no) + ": gold '" + gold + "' is not a sense of " +
                                      inst.key().str());
      }
    }
    if (truncate_around_target(inst)) ++result.report.truncated;
    result.instances.push_back(std::move(inst));
  }
  result.report.loaded = result.instances.size();
  return result;
}

std::string corpus_fingerprint(std::span<const Instance> instances) {
  Fingerprint fp;
  for (const auto& inst : instances) fp.add(serialize_instance(inst));
  return fp.hex();
}

std::optional<std::size_t> SenseLabelIndex::Entry::class_of(std::string_view sense_id) const {
  auto it = std::find(classes.begin(), classes.end(), sense_id);
  if (it == classes.end()) return std::nullopt;
  return static_cast<std::size_t>(it - classes.begin());
}

const SenseLabelIndex::Entry* SenseLabelIndex::find(const LemmaKey& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

LabelIndexBuild build_label_index(std::span<const Instance> instances, const SenseInventory& inventory) {
  LabelIndexBuild build;
  std::set<LemmaKey> keys;
  for (const auto& inst : instances) keys.insert(inst.key());
  for (const auto& key : keys) {
    auto senses = inventory.senses_of(key.lemma, key.pos);
    if (senses.empty()) {
      build.excluded.push_back(key);
      continue;
    }
    SenseLabelIndex::Entry entry;
    for (const Sense* s : senses) entry.classes.push_back(s->sense_id);
    build.index.insert(key, std::move(entry));
  }
  return build;
}

SenseFrequency sense_frequencies(std::span<const Instance> instances) {
  SenseFrequency freq;
  for (const auto& inst : instances) {
    auto& counts = freq[inst.key()];
    for (const auto& gold : inst.gold_sense_ids) ++counts[gold];
  }
  return freq;
}

}  // namespace senspick
