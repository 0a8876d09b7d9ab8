// Copyright 2026 The SensPick Authors
// SPDX-License-Identifier: Apache-2.0

#include "senspick/converter.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

namespace senspick {

namespace pt = boost::property_tree;

namespace {

std::unordered_map<std::string, std::vector<std::string>> read_keys(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open gold key file: " + path.string());
  std::unordered_map<std::string, std::vector<std::string>> keys;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string id, key;
    if (!(fields >> id)) continue;
    auto& list = keys[id];
    while (fields >> key) list.push_back(key);
  }
  return keys;
}

std::string token_text(const pt::ptree& node) {
  std::string text = to_lower(trim(node.data()));
  for (char& ch : text) {
    if (ch == ' ') ch = '_';
  }
  return text.empty() ? std::string("_") : text;
}

}  // namespace

Conversion convert_unified_xml(const std::filesystem::path& xml_path, const std::filesystem::path& keys_path) {
  auto keys = read_keys(keys_path);
  pt::ptree tree;
  try {
    pt::read_xml(xml_path.string(), tree, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error& e) {
    throw LoadError("cannot parse " + xml_path.string() + ": " + e.what());
  }
  auto corpus = tree.get_child_optional("corpus");
  if (!corpus) throw LoadError(xml_path.string() + ": missing <corpus> root element");

  Conversion out;
  for (const auto& [text_tag, text] : *corpus) {
    if (text_tag != "text") continue;
    for (const auto& [sentence_tag, sentence] : text) {
      if (sentence_tag != "sentence") continue;
      ++out.report.sentences;
      std::vector<std::string> tokens;
      struct Pending {
        std::size_t index;
        std::string id, lemma, pos;
      };
      std::vector<Pending> pending;
      for (const auto& [tag, node] : sentence) {
        if (tag != "wf" && tag != "instance") continue;
        if (tag == "instance") {
          pending.push_back({tokens.size(), node.get<std::string>("<xmlattr>.id", ""),
                             node.get<std::string>("<xmlattr>.lemma", ""), node.get<std::string>("<xmlattr>.pos", "")});
        }
        tokens.push_back(token_text(node));
      }
      for (auto& p : pending) {
        auto gold = keys.find(p.id);
        if (gold == keys.end() || gold->second.empty()) {
          ++out.report.missing_keys;
          out.report.notes.push_back("no gold key for instance " + p.id);
          continue;
        }
        auto pos = parse_pos(p.pos);
        if (!pos) {
          out.report.notes.push_back("instance " + p.id + " has unsupported pos " + p.pos);
          continue;
        }
        Instance inst;
        inst.instance_id = p.id;
        inst.tokens = tokens;
        inst.target_index = p.index;
        inst.lemma = to_lower(p.lemma);
        for (char& ch : inst.lemma) {
          if (ch == ' ') ch = '_';
        }
        inst.pos = *pos;
        inst.gold_sense_ids = gold->second;
        for (const auto& key : inst.gold_sense_ids) {
          if (to_lower(key.substr(0, key.find('%'))) != inst.lemma) {
            ++out.report.lemma_mismatches;
            out.report.notes.push_back("instance " + p.id + ": gold " + key + " does not match lemma " + inst.lemma);
            break;
          }
        }
        truncate_around_target(inst);
        out.instances.push_back(std::move(inst));
        ++out.report.instances;
      }
    }
  }
  return out;
}

}  // namespace senspick
