// Copyright 2026 The SensPick Authors
// SPDX-License-Identifier: Apache-2.0

#include "senspick/sense_inventory.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace senspick {

namespace fs = std::filesystem;

namespace {

std::vector<SenseId> split_ids(std::string_view field) {
  std::vector<SenseId> ids;
  for (auto& part : split(field, ',')) {
    auto id = trim(part);
    if (!id.empty()) ids.emplace_back(id);
  }
  return ids;
}

std::ifstream open_or_throw(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw LoadError("cannot open lexical database file: " + file.string());
  return in;
}

}  // namespace

SenseInventory SenseInventory::load(const fs::path& directory) {
  if (!fs::is_directory(directory)) {
    throw LoadError("lexical database directory does not exist: " + directory.string());
  }
  if (fs::exists(directory / "index.sense")) return load_wordnet(directory);
  if (fs::exists(directory / "inventory.tsv")) return load_native(directory / "inventory.tsv");
  throw LoadError("no lexical database found in " + directory.string() +
                  " (expected index.sense + data.* or inventory.tsv)");
}

SenseInventory SenseInventory::load_native(const fs::path& file) {
  auto in = open_or_throw(file);
  std::vector<SenseRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line.front() == '#') continue;
    auto fields = split(line, '\t');
    if (fields.size() < 7) {
      throw LoadError(file.string() + ":" + std::to_string(line_no) + ": expected 7 tab-separated fields, got " +
                      std::to_string(fields.size()));
    }
    SenseRecord rec;
    rec.sense_id = std::string(trim(fields[0]));
    rec.lemma = to_lower(trim(fields[1]));
    auto pos = parse_pos(trim(fields[2]));
    if (!pos) throw LoadError(file.string() + ":" + std::to_string(line_no) + ": bad part of speech '" + fields[2] + "'");
    rec.pos = *pos;
    try {
      std::size_t used = 0;
      rec.rank = std::stoi(fields[3], &used);
      if (used != trim(fields[3]).size() && used != fields[3].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw LoadError(file.string() + ":" + std::to_string(line_no) + ": bad rank '" + fields[3] + "'");
    }
    rec.hypernyms = split_ids(fields[4]);
    rec.hyponyms = split_ids(fields[5]);
    // The gloss is the remainder of the line, tabs included.
    std::string gloss = fields[6];
    for (std::size_t i = 7; i < fields.size(); ++i) gloss += "\t" + fields[i];
    rec.gloss_text = std::move(gloss);
    records.push_back(std::move(rec));
  }
  if (records.empty()) throw LoadError("lexical database file has no records: " + file.string());
  return from_records(std::move(records), file.string());
}

namespace {

struct Synset {
  std::string first_word;
  std::string gloss;
  std::vector<std::string> hypernyms;  // "<pos><offset>" keys
  std::vector<std::string> hyponyms;
};

const char* data_file_for(char ss_type) {
  switch (ss_type) {
    case 'n': return "data.noun";
    case 'v': return "data.verb";
    case 'a':
    case 's': return "data.adj";
    case 'r': return "data.adv";
  }
  return nullptr;
}

// Synsets are keyed by data file letter (n, v, a, r) plus the 8-digit offset.
std::string synset_key(char file_pos, std::string_view offset) {
  std::string key(1, file_pos == 's' ? 'a' : file_pos);
  key += offset;
  return key;
}

std::string strip_adj_marker(std::string word) {
  auto paren = word.find('(');
  if (paren != std::string::npos) word.resize(paren);
  return to_lower(word);
}

void parse_data_file(const fs::path& file, char file_pos, std::unordered_map<std::string, Synset>& out) {
  auto in = open_or_throw(file);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == ' ') continue;  // license header
    auto bar = line.find(" | ");
    std::istringstream fields(line.substr(0, bar));
    std::string offset, lex_filenum, ss_type, w_cnt_hex;
    if (!(fields >> offset >> lex_filenum >> ss_type >> w_cnt_hex)) {
      throw LoadError(file.string() + ":" + std::to_string(line_no) + ": malformed synset record");
    }
    Synset syn;
    int w_cnt = static_cast<int>(std::stoul(w_cnt_hex, nullptr, 16));
    for (int w = 0; w < w_cnt; ++w) {
      std::string word, lex_id;
      if (!(fields >> word >> lex_id)) {
        throw LoadError(file.string() + ":" + std::to_string(line_no) + ": truncated word list");
      }
      if (w == 0) syn.first_word = strip_adj_marker(word);
    }
    int p_cnt = 0;
    if (!(fields >> p_cnt)) throw LoadError(file.string() + ":" + std::to_string(line_no) + ": missing pointer count");
    for (int p = 0; p < p_cnt; ++p) {
      std::string symbol, target, target_pos, source_target;
      if (!(fields >> symbol >> target >> target_pos >> source_target)) {
        throw LoadError(file.string() + ":" + std::to_string(line_no) + ": truncated pointer list");
      }
      if (symbol == "@" || symbol == "@i") {
        syn.hypernyms.push_back(synset_key(target_pos[0], target));
      } else if (symbol == "~" || symbol == "~i") {
        syn.hyponyms.push_back(synset_key(target_pos[0], target));
      }
    }
    syn.gloss = bar == std::string::npos ? std::string() : line.substr(bar + 3);
    out.emplace(synset_key(file_pos, offset), std::move(syn));
  }
}

}  // namespace

SenseInventory SenseInventory::load_wordnet(const fs::path& directory) {
  std::unordered_map<std::string, Synset> synsets;
  for (char file_pos : {'n', 'v', 'a', 'r'}) {
    parse_data_file(directory / data_file_for(file_pos), file_pos, synsets);
  }

  struct KeyLine {
    std::string sense_key;
    std::string lemma;
    Pos pos;
    std::string synset;
    int rank;
  };
  std::vector<KeyLine> keys;
  {
    fs::path file = directory / "index.sense";
    auto in = open_or_throw(file);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      std::istringstream fields(line);
      std::string sense_key, offset;
      int rank = 0;
      if (!(fields >> sense_key >> offset >> rank)) {
        throw LoadError(file.string() + ":" + std::to_string(line_no) + ": malformed sense index line");
      }
      auto pct = sense_key.find('%');
      if (pct == std::string::npos || pct + 1 >= sense_key.size()) {
        throw LoadError(file.string() + ":" + std::to_string(line_no) + ": malformed sense key " + sense_key);
      }
      static constexpr char kTypeToPos[] = {'?', 'n', 'v', 'a', 'r', 's'};
      int ss_type = sense_key[pct + 1] - '0';
      if (ss_type < 1 || ss_type > 5) {
        throw LoadError(file.string() + ":" + std::to_string(line_no) + ": bad synset type in " + sense_key);
      }
      char file_pos = kTypeToPos[ss_type];
      keys.push_back({sense_key, sense_key.substr(0, pct), *parse_pos(std::string(1, file_pos)),
                      synset_key(file_pos, offset), rank});
    }
  }

  // Each synset is represented by the sense of its first listed word.
  std::unordered_map<std::string, std::string> representative;
  for (const auto& key : keys) {
    auto syn = synsets.find(key.synset);
    if (syn == synsets.end()) {
      throw LoadError("sense " + key.sense_key + " references synset " + key.synset + " missing from data files");
    }
    auto [it, inserted] = representative.try_emplace(key.synset, key.sense_key);
    if (!inserted && key.lemma == syn->second.first_word &&
        to_lower(it->second.substr(0, it->second.find('%'))) != syn->second.first_word) {
      it->second = key.sense_key;
    }
  }

  auto resolve = [&](const std::vector<std::string>& targets, const std::string& owner) {
    std::vector<SenseId> ids;
    ids.reserve(targets.size());
    for (const auto& target : targets) {
      auto rep = representative.find(target);
      if (rep == representative.end()) {
        throw LoadError("sense " + owner + " has a relation to synset " + target + " with no sense key");
      }
      ids.push_back(rep->second);
    }
    return ids;
  };

  std::vector<SenseRecord> records;
  records.reserve(keys.size());
  for (auto& key : keys) {
    const Synset& syn = synsets.at(key.synset);
    SenseRecord rec;
    rec.sense_id = key.sense_key;
    rec.lemma = key.lemma;
    rec.pos = key.pos;
    rec.rank = key.rank;
    rec.hypernyms = resolve(syn.hypernyms, key.sense_key);
    rec.hyponyms = resolve(syn.hyponyms, key.sense_key);
    rec.gloss_text = syn.gloss;
    records.push_back(std::move(rec));
  }
  return from_records(std::move(records), directory.string());
}

SenseInventory SenseInventory::from_records(std::vector<SenseRecord> records, const std::string& origin) {
  SenseInventory inv;
  inv.senses_.reserve(records.size());
  for (auto& rec : records) {
    Sense sense;
    sense.sense_id = rec.sense_id;
    sense.lemma = rec.lemma;
    sense.pos = rec.pos;
    sense.rank = rec.rank;
    sense.gloss = normalize_tokens(definition_segment(rec.gloss_text));
    if (sense.sense_id.empty()) throw LoadError(origin + ": record with empty sense_id");
    if (sense.gloss.empty()) throw LoadError(origin + ": sense " + sense.sense_id + " has an empty gloss");
    if (sense.rank < 1) throw LoadError(origin + ": sense " + sense.sense_id + " has non-positive rank");
    inv.senses_.push_back(std::move(sense));
  }

  for (std::size_t i = 0; i < inv.senses_.size(); ++i) {
    auto [it, inserted] = inv.by_id_.emplace(inv.senses_[i].sense_id, i);
    if (!inserted) throw LoadError(origin + ": duplicate sense_id " + inv.senses_[i].sense_id);
  }

  inv.nodes_.resize(inv.senses_.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto link = [&](const std::vector<SenseId>& targets, std::vector<const Sense*>& out) {
      for (const auto& target : targets) {
        auto it = inv.by_id_.find(target);
        if (it == inv.by_id_.end()) {
          throw LoadError(origin + ": sense " + records[i].sense_id + " references unknown sense_id " + target);
        }
        out.push_back(&inv.senses_[it->second]);
      }
    };
    link(records[i].hypernyms, inv.nodes_[i].hypernyms);
    link(records[i].hyponyms, inv.nodes_[i].hyponyms);
  }

  inv.index(origin);
  return inv;
}

void SenseInventory::index(const std::string& origin) {
  for (const auto& sense : senses_) by_lemma_[{sense.lemma, sense.pos}].push_back(&sense);
  for (auto& [key, list] : by_lemma_) {
    std::stable_sort(list.begin(), list.end(), [](const Sense* a, const Sense* b) { return a->rank < b->rank; });
    for (std::size_t r = 0; r < list.size(); ++r) {
      if (list[r]->rank != static_cast<int>(r) + 1) {
        throw LoadError(origin + ": ranks of " + key.str() + " are not contiguous 1.." + std::to_string(list.size()) +
                        " (sense " + list[r]->sense_id + ")");
      }
    }
  }

  // First-parent chains must terminate: 0 = unvisited, 1 = on current path, 2 = done.
  std::vector<char> state(senses_.size(), 0);
  std::vector<std::size_t> path;
  for (std::size_t start = 0; start < senses_.size(); ++start) {
    path.clear();
    std::size_t cur = start;
    while (state[cur] != 2) {
      if (state[cur] == 1) throw LoadError(origin + ": hypernym cycle through sense " + senses_[cur].sense_id);
      state[cur] = 1;
      path.push_back(cur);
      if (nodes_[cur].hypernyms.empty()) break;
      cur = position(*nodes_[cur].hypernyms.front());
    }
    for (std::size_t p : path) state[p] = 2;
  }

  Fingerprint fp;
  for (std::size_t i = 0; i < senses_.size(); ++i) {
    const auto& s = senses_[i];
    fp.add(s.sense_id).add(s.lemma).add(static_cast<std::int64_t>(s.pos)).add(static_cast<std::int64_t>(s.rank));
    for (const auto& tok : s.gloss) fp.add(tok);
    for (const auto* h : nodes_[i].hypernyms) fp.add("@").add(h->sense_id);
    for (const auto* h : nodes_[i].hyponyms) fp.add("~").add(h->sense_id);
  }
  fingerprint_ = fp.hex();
}

std::size_t SenseInventory::position(const Sense& sense) const {
  return static_cast<std::size_t>(&sense - senses_.data());
}

std::span<const Sense* const> SenseInventory::senses_of(std::string_view lemma, Pos pos) const {
  auto it = by_lemma_.find(LemmaKey{std::string(lemma), pos});
  if (it == by_lemma_.end()) return {};
  return it->second;
}

const Sense* SenseInventory::first_sense(std::string_view lemma, Pos pos) const {
  auto senses = senses_of(lemma, pos);
  return senses.empty() ? nullptr : senses.front();
}

const Sense* SenseInventory::find(std::string_view sense_id) const {
  auto it = by_id_.find(sense_id);
  return it == by_id_.end() ? nullptr : &senses_[it->second];
}

std::span<const Sense* const> SenseInventory::hypernyms(const Sense& sense) const {
  return nodes_.at(position(sense)).hypernyms;
}

std::span<const Sense* const> SenseInventory::hyponyms(const Sense& sense) const {
  return nodes_.at(position(sense)).hyponyms;
}

std::vector<LemmaKey> SenseInventory::lemma_keys() const {
  std::vector<LemmaKey> keys;
  keys.reserve(by_lemma_.size());
  for (const auto& [key, _] : by_lemma_) keys.push_back(key);
  return keys;
}

GlossSet SenseInventory::expand_gloss(const Sense& sense, int depth, int hyponym_cap) const {
  if (depth < 0) throw std::invalid_argument("expand_gloss: depth must be non-negative, got " + std::to_string(depth));
  if (hyponym_cap < 0) throw std::invalid_argument("expand_gloss: hyponym cap must be non-negative");
  if (find(sense.sense_id) != &sense) throw std::invalid_argument("expand_gloss: sense does not belong to inventory");

  std::vector<const Sense*> chain;
  const Sense* cur = &sense;
  while (static_cast<int>(chain.size()) < depth) {
    auto parents = hypernyms(*cur);
    if (parents.empty()) break;
    cur = parents.front();
    chain.push_back(cur);
  }

  std::vector<const Sense*> below;
  std::unordered_set<const Sense*> seen{&sense};
  std::deque<std::pair<const Sense*, int>> queue{{&sense, 0}};
  while (!queue.empty() && static_cast<int>(below.size()) < hyponym_cap) {
    auto [node, level] = queue.front();
    queue.pop_front();
    if (level == depth) continue;
    for (const Sense* child : hyponyms(*node)) {
      if (!seen.insert(child).second) continue;
      below.push_back(child);
      if (static_cast<int>(below.size()) == hyponym_cap) break;
      queue.emplace_back(child, level + 1);
    }
  }

  GlossSet set;
  set.sense_id = sense.sense_id;
  set.m = static_cast<int>(chain.size());
  set.n = static_cast<int>(below.size());
  set.entries.reserve(chain.size() + below.size() + 1);
  for (int i = set.m; i >= 1; --i) set.entries.push_back({-i, chain[static_cast<std::size_t>(i - 1)]->gloss});
  set.entries.push_back({0, sense.gloss});
  for (int i = 1; i <= set.n; ++i) set.entries.push_back({i, below[static_cast<std::size_t>(i - 1)]->gloss});
  return set;
}

}  // namespace senspick
